#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qctl/design.hpp"
#include "qctl/error.hpp"
#include "qctl/io.hpp"
#include "qctl/sim.hpp"

namespace py = pybind11;
using namespace qctl;

namespace {

QuatMatrix matrix_from_rows(const std::vector<std::vector<Quaternion>>& rows, std::size_t empty_cols) {
  if (rows.empty()) return QuatMatrix(0, empty_cols);
  QuatMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<std::vector<Quaternion>> matrix_rows(const QuatMatrix& m) {
  std::vector<std::vector<Quaternion>> rows(m.rows(), std::vector<Quaternion>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = m(r, c);
  return rows;
}

std::string quat_repr(const Quaternion& q) { return "Quaternion(" + format(q, 17) + ")"; }

}  // namespace

PYBIND11_MODULE(_qctl, m) {
  m.doc() = "Quaternionic polynomial methods for SISO discrete-time control.";

  static py::exception<Error> error(m, "QctlError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      error(e.what());
    }
  });

  py::class_<Quaternion>(m, "Quaternion")
      .def(py::init<>())
      .def(py::init<double>())
      .def(py::init<double, double, double, double>(), py::arg("w"), py::arg("x"), py::arg("y"), py::arg("z"))
      .def_readwrite("w", &Quaternion::w)
      .def_readwrite("x", &Quaternion::x)
      .def_readwrite("y", &Quaternion::y)
      .def_readwrite("z", &Quaternion::z)
      .def("conj", &Quaternion::conj)
      .def("norm", &Quaternion::norm)
      .def("to_tuple", [](const Quaternion& q) { return py::make_tuple(q.w, q.x, q.y, q.z); })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def("__repr__", &quat_repr);
  py::implicitly_convertible<double, Quaternion>();
  py::implicitly_convertible<long long, Quaternion>();

  m.def("inverse", [](const Quaternion& q) { return inverse(q); });

  py::class_<SimilarityClass>(m, "SimilarityClass")
      .def_readonly("re", &SimilarityClass::re)
      .def_readonly("im_norm", &SimilarityClass::im_norm)
      .def("norm", &SimilarityClass::norm)
      .def("__repr__", [](const SimilarityClass& c) {
        std::ostringstream os;
        os.precision(6);
        os << "SimilarityClass(re=" << c.re << ", im_norm=" << c.im_norm << ")";
        return os.str();
      });
  m.def("class_of", &class_of);
  m.def("similar", py::overload_cast<const Quaternion&, const Quaternion&, double>(&similar), py::arg("p"),
        py::arg("q"), py::arg("tol") = kSimilarityTol);

  py::class_<QPoly>(m, "QPoly")
      .def(py::init<>())
      .def(py::init<std::vector<Quaternion>>(), py::arg("coeffs"))
      .def_property_readonly("coeffs", &QPoly::coeffs)
      .def("degree", &QPoly::degree)
      .def("__getitem__", [](const QPoly& p, std::size_t i) { return p[i]; })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self == py::self)
      .def("__repr__", [](const QPoly& p) { return "QPoly(" + format(p, 6) + ")"; });

  m.def("eval_right", &eval_right);
  m.def("div_quotient_right", [](const QPoly& a, const QPoly& b) {
    const DivResult r = div_quotient_right(a, b);
    return py::make_tuple(r.quotient, r.remainder);
  });
  m.def("div_quotient_left", [](const QPoly& a, const QPoly& b) {
    const DivResult r = div_quotient_left(a, b);
    return py::make_tuple(r.quotient, r.remainder);
  });
  m.def("gcld", [](const QPoly& a, const QPoly& b, double tol) { return gcld(a, b, tol).g; }, py::arg("a"),
        py::arg("b"), py::arg("tol") = kCoeffTol);
  m.def("gcrd", [](const QPoly& a, const QPoly& b, double tol) { return gcrd(a, b, tol).g; }, py::arg("a"),
        py::arg("b"), py::arg("tol") = kCoeffTol);
  m.def("right_zeros", [](const QPoly& a, double tol) {
    const ZeroReport rep = right_zeros(a, tol);
    std::vector<Quaternion> zeros;
    for (const auto& z : rep.isolated) zeros.push_back(z.zero);
    return py::make_tuple(zeros, rep.spherical);
  }, py::arg("a"), py::arg("tol") = kSimilarityTol, "Returns (isolated zeros, spherical classes).");
  m.def("is_stable", [](const QPoly& a) { return is_stable(a); });
  m.def("build_c", &build_c);

  m.def("right_eigenvalues", [](const std::vector<std::vector<Quaternion>>& rows) {
    return right_eigenvalues(matrix_from_rows(rows, 0)).classes;
  }, "Right eigenvalue classes of a square matrix given as a list of rows.");

  py::class_<StateSpace>(m, "StateSpace")
      .def(py::init([](const std::vector<std::vector<Quaternion>>& F, const std::vector<std::vector<Quaternion>>& G,
                       const std::vector<std::vector<Quaternion>>& H, const Quaternion& J) {
             StateSpace ss{matrix_from_rows(F, 0), matrix_from_rows(G, 1), matrix_from_rows(H, 0), J};
             if (ss.H.rows() == 0) ss.H = QuatMatrix(1, ss.F.rows());
             ss.validate();
             return ss;
           }),
           py::arg("F"), py::arg("G"), py::arg("H"), py::arg("J") = Quaternion{})
      .def_property_readonly("F", [](const StateSpace& s) { return matrix_rows(s.F); })
      .def_property_readonly("G", [](const StateSpace& s) { return matrix_rows(s.G); })
      .def_property_readonly("H", [](const StateSpace& s) { return matrix_rows(s.H); })
      .def_readonly("J", &StateSpace::J)
      .def("order", &StateSpace::order)
      .def("to_json", [](const StateSpace& s) { return io::to_json(s).dump(); })
      .def_static("from_json", [](const std::string& text) { return io::system_from_json(io::json::parse(text)); });

  py::class_<LeftFraction>(m, "LeftFraction")
      .def(py::init<QPoly, QPoly>(), py::arg("den"), py::arg("num"))
      .def_readonly("den", &LeftFraction::den)
      .def_readonly("num", &LeftFraction::num);
  py::class_<RightFraction>(m, "RightFraction")
      .def(py::init<QPoly, QPoly>(), py::arg("num"), py::arg("den"))
      .def_readonly("num", &RightFraction::num)
      .def_readonly("den", &RightFraction::den);

  m.def("markov", &markov);
  m.def("series", py::overload_cast<const LeftFraction&, std::size_t>(&series));
  m.def("tf_left", &tf_left, py::arg("ss"), py::arg("tol") = 1e-8);
  m.def("tf_right", &tf_right, py::arg("ss"), py::arg("tol") = 1e-8);
  m.def("realize", py::overload_cast<const LeftFraction&, double>(&realize), py::arg("f"), py::arg("tol") = kCoeffTol);

  m.def("solve_diophantine", [](const QPoly& a, const QPoly& b, const QPoly& c, const std::string& flavor) {
    Flavor f = Flavor::MinimalX;
    if (flavor == "minimal_y") f = Flavor::MinimalY;
    else if (flavor == "particular") f = Flavor::Particular;
    else if (flavor != "minimal_x") throw Error(ErrorKind::Parse, "unknown flavor " + flavor);
    const DiophantineSolution s = solve_diophantine(a, b, c, f);
    return py::make_tuple(s.x, s.y);
  }, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("flavor") = "minimal_x", "Returns (x, y) with a x + b y = c.");

  py::class_<DesignResult>(m, "DesignResult")
      .def_readonly("c", &DesignResult::c)
      .def_property_readonly("p_r", [](const DesignResult& r) { return r.controller.den; })
      .def_property_readonly("q_r", [](const DesignResult& r) { return r.controller.num; })
      .def_readonly("T_w", &DesignResult::T_w)
      .def_readonly("T_v", &DesignResult::T_v)
      .def_readonly("closed_loop", &DesignResult::closed_loop)
      .def_readonly("stable", &DesignResult::stable)
      .def_readonly("warnings", &DesignResult::warnings);
  m.def("place_poles", &place_poles, py::arg("plant"), py::arg("roots"), py::arg("tol") = kCoeffTol);

  m.def("simulate_random", [](const StateSpace& ss, std::size_t steps, std::uint64_t seed) {
    StateRng rng(seed);
    return simulate(ss, random_state(ss.order(), rng), {}, steps);
  }, py::arg("ss"), py::arg("steps"), py::arg("seed"), "Zero-input response from a seeded random initial state.");
  m.def("simulate", [](const StateSpace& ss, const std::vector<Quaternion>& u, std::size_t steps) {
    return simulate(ss, QuatMatrix(ss.order(), 1), u, steps);
  }, py::arg("ss"), py::arg("u"), py::arg("steps"), "Response from the zero state to the input u.");
}
