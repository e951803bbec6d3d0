#include "properties.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gen.hpp"
#include "qctl/error.hpp"
#include "qctl/io.hpp"

namespace qctl::testing {

namespace {

struct Outcome {
  enum class Kind { Pass, Skip, Fail } kind = Kind::Pass;
  std::string message;
};

Outcome pass() { return {}; }
Outcome skip() { return {Outcome::Kind::Skip, ""}; }
Outcome fail(const std::string& msg) { return {Outcome::Kind::Fail, msg}; }

template <class... Args>
std::string str(const Args&... args) {
  std::ostringstream os;
  os.precision(6);
  (os << ... << args);
  return os.str();
}

// Draws instances until `cases` of them were not skipped. An exception counts
// as a violation.
template <class Body>
SuiteResult run_cases(const std::string& name, std::uint64_t seed, int cases, Body body) {
  SuiteResult res{name, 0, 0, ""};
  Gen gen(seed);
  const int max_attempts = 20 * cases;
  for (int attempt = 0; attempt < max_attempts && res.cases < cases; ++attempt) {
    Outcome out;
    try {
      out = body(gen);
    } catch (const std::exception& e) {
      out = fail(std::string("exception: ") + e.what());
    }
    if (out.kind == Outcome::Kind::Skip) continue;
    ++res.cases;
    if (out.kind == Outcome::Kind::Fail) {
      if (res.failures++ == 0) res.first_failure = "case " + std::to_string(res.cases) + ": " + out.message;
    }
  }
  if (res.cases < cases) {
    ++res.failures;
    if (res.first_failure.empty()) res.first_failure = "only " + std::to_string(res.cases) + " usable cases";
  }
  return res;
}

double poly_scale(std::initializer_list<const QPoly*> ps) {
  double s = 1.0;
  for (auto* p : ps) s = std::max(s, p->max_norm());
  return s;
}

// |a b| bound used to scale residuals of products.
double prod_scale(const QPoly& a, const QPoly& b) {
  return std::max(1.0, a.max_norm() * b.max_norm() * static_cast<double>(std::max(a.size(), b.size())));
}

double series_diff(const std::vector<Quaternion>& s, const std::vector<Quaternion>& t) {
  double worst = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    worst = std::max(worst, (s[k] - t[k]).norm() / std::max(1.0, s[k].norm()));
  }
  return worst;
}

double quat_matrix_norm(const QuatMatrix& m) {
  double s = 0.0;
  for (const auto& q : m.entries()) s += q.norm_sq();
  return std::sqrt(s);
}


// Smallest gap between distinct zero classes of a, relative to their size.
double class_separation(const QPoly& a) {
  const auto cls = right_eigenvalues(companion_matrix(a)).classes;
  double gap = 1e300;
  for (std::size_t i = 0; i < cls.size(); ++i)
    for (std::size_t j = i + 1; j < cls.size(); ++j) {
      const double d = std::hypot(cls[i].re - cls[j].re, cls[i].im_norm - cls[j].im_norm);
      gap = std::min(gap, d / std::max(1.0, std::max(cls[i].norm(), cls[j].norm())));
    }
  return gap;
}

// ---- quaternions ---------------------------------------------------------

SuiteResult quat_algebra(std::uint64_t seed, int cases) {
  return run_cases("quat_norm_and_associativity", seed, cases, [](Gen& g) {
    const Quaternion p = g.quat(3), q = g.quat(3), r = g.quat(3);
    const double n = (p * q).norm(), m = p.norm() * q.norm();
    if (std::abs(n - m) > 1e-12 * std::max(1.0, m)) return fail(str("|pq| = ", n, ", |p||q| = ", m));
    const double assoc = ((p * q) * r - p * (q * r)).norm();
    if (assoc > 1e-12 * std::max(1.0, m * r.norm())) return fail(str("(pq)r - p(qr) = ", assoc));
    return pass();
  });
}

SuiteResult quat_similarity(std::uint64_t seed, int cases) {
  return run_cases("similarity_classes", seed, cases, [](Gen& g) {
    const Quaternion q = g.quat(2);
    const Quaternion u = g.quat(2), v = g.quat(2);
    if (u.norm() < 1e-3 || v.norm() < 1e-3) return skip();
    const Quaternion a = u * q * inverse(u);
    const Quaternion b = v * a * inverse(v);
    if (!similar(q, q)) return fail("not reflexive");
    if (similar(q, a) != similar(a, q)) return fail("not symmetric");
    if (!similar(q, a) || !similar(a, b) || !similar(q, b)) return fail("orbit elements not similar");
    const SimilarityClass cq = class_of(q), ca = class_of(a);
    if (std::abs(cq.re - ca.re) > 1e-12 * std::max(1.0, q.norm()) ||
        std::abs(cq.im_norm - ca.im_norm) > 1e-12 * std::max(1.0, q.norm())) {
      return fail("class_of not constant on the orbit");
    }
    // Similar elements share the same norm.
    if (std::abs(q.norm() - b.norm()) > kSimilarityTol * std::max(1.0, q.norm())) {
      return fail(str("norms ", q.norm(), " and ", b.norm()));
    }
    // Distinct classes are told apart.
    const Quaternion other = q + Quaternion(0.1 + g.uniform(0.0, 1.0));
    if (similar(q, other)) return fail("different real parts reported similar");
    return pass();
  });
}

// ---- matrices ------------------------------------------------------------

SuiteResult adjoint_homomorphism(std::uint64_t seed, int cases) {
  return run_cases("adjoint_homomorphism", seed, cases, [](Gen& g) {
    const auto n = static_cast<std::size_t>(g.integer(1, 4));
    const auto m = static_cast<std::size_t>(g.integer(1, 4));
    const auto k = static_cast<std::size_t>(g.integer(1, 4));
    const QuatMatrix a = g.matrix(n, m), b = g.matrix(m, k);
    const ComplexMatrix diff = complex_adjoint(a * b) - complex_adjoint(a) * complex_adjoint(b);
    const double worst = diff.cwiseAbs().maxCoeff();
    if (worst >= 1e-10) return fail(str("entrywise error ", worst));
    return pass();
  });
}

SuiteResult conjugate_pairing(std::uint64_t seed, int cases) {
  return run_cases("adjoint_conjugate_pairs", seed, cases, [](Gen& g) {
    const auto n = static_cast<std::size_t>(g.integer(1, 5));
    const QuatMatrix a = g.matrix(n, n);
    std::vector<std::complex<double>> ev = adjoint_eigenvalues(a);
    if (ev.size() != 2 * n) return fail("wrong eigenvalue count");
    const double tol = 1e-7 * std::max(1.0, max_norm(a) * static_cast<double>(n));
    while (!ev.empty()) {
      const auto z = ev.back();
      ev.pop_back();
      auto it = std::min_element(ev.begin(), ev.end(), [&](auto x, auto y) {
        return std::abs(x - std::conj(z)) < std::abs(y - std::conj(z));
      });
      if (it == ev.end() || std::abs(*it - std::conj(z)) > tol) return fail(str("unpaired eigenvalue ", z));
      ev.erase(it);
    }
    return pass();
  });
}

// Inverse iteration on the adjoint gives w = [v1; -conj v2] for v = v1 + v2 j.
SuiteResult right_eigen_residual(std::uint64_t seed, int cases) {
  return run_cases("right_eigenvalue_residual", seed, cases, [](Gen& g) {
    const auto n = static_cast<std::size_t>(g.integer(1, 4));
    const QuatMatrix a = g.matrix(n, n);
    const ComplexMatrix chi = complex_adjoint(a);
    const double a_norm = quat_matrix_norm(a);
    for (const auto& cls : right_eigenvalues(a).classes) {
      const std::complex<double> lambda(cls.re, cls.im_norm);
      const std::complex<double> shift = lambda + std::complex<double>(1e-10, 1e-10) * std::max(1.0, a_norm);
      ComplexMatrix m = chi - shift * ComplexMatrix::Identity(2 * n, 2 * n);
      Eigen::PartialPivLU<ComplexMatrix> lu(m);
      Eigen::VectorXcd w = Eigen::VectorXcd::Ones(2 * n);
      for (int it = 0; it < 6; ++it) {
        w = lu.solve(w);
        w /= w.norm();
      }
      QuatMatrix v(n, 1);
      for (std::size_t i = 0; i < n; ++i) {
        const auto v1 = w(static_cast<Eigen::Index>(i));
        const auto v2 = -std::conj(w(static_cast<Eigen::Index>(n + i)));
        // v1 + v2 j with v2 = c + d i gives c j + d k.
        v(i, 0) = {v1.real(), v1.imag(), v2.real(), v2.imag()};
      }
      const QuatMatrix r = a * v - v * cls.representative();
      const double res = quat_matrix_norm(r) / quat_matrix_norm(v);
      if (res > 1e-6 * std::max(1.0, a_norm)) return fail(str("residual ", res, " for class (", cls.re, ", ", cls.im_norm, ")"));
    }
    return pass();
  });
}

SuiteResult power_convergence(std::uint64_t seed, int cases) {
  return run_cases("stable_powers_decay", seed, cases, [](Gen& g) {
    const auto n = static_cast<std::size_t>(g.integer(1, 4));
    QuatMatrix a = g.matrix(n, n);
    double rho = 0.0;
    for (const auto& c : right_eigenvalues(a).classes) rho = std::max(rho, c.norm());
    if (rho < 1e-6) return skip();
    const QuatMatrix stable = a * Quaternion(g.uniform(0.3, 0.9) / rho);
    const QuatMatrix unstable = a * Quaternion(g.uniform(1.05, 1.5) / rho);
    if (!spectral_radius_stable(stable)) return fail("scaled-down matrix reported unstable");
    if (spectral_radius_stable(unstable)) return fail("scaled-up matrix reported stable");
    QuatMatrix p = QuatMatrix::identity(n), p10;
    for (int k = 1; k <= 50; ++k) {
      p = p * stable;
      if (k == 10) p10 = p;
    }
    if (!(quat_matrix_norm(p) < quat_matrix_norm(p10))) return fail("|A^50| >= |A^10| for a stable A");
    return pass();
  });
}

// ---- polynomials ---------------------------------------------------------

SuiteResult division_identities(std::uint64_t seed, int cases) {
  return run_cases("division_identities", seed, cases, [](Gen& g) {
    const QPoly a = g.poly(g.integer(0, 6)), b = g.poly(g.integer(0, 6));
    const double tol = 1e-9 * std::max(1.0, a.max_norm());
    const DivResult r = div_quotient_right(a, b);
    if (max_diff(b * r.quotient + r.remainder, a) > tol) return fail("b q + r != a");
    if (!r.remainder.is_zero() && r.remainder.degree() >= b.degree()) return fail("deg r >= deg b (right)");
    const DivResult l = div_quotient_left(a, b);
    if (max_diff(l.quotient * b + l.remainder, a) > tol) return fail("q b + r != a");
    if (!l.remainder.is_zero() && l.remainder.degree() >= b.degree()) return fail("deg r >= deg b (left)");
    if (a.degree() >= b.degree() && r.quotient.degree() != a.degree() - b.degree()) return fail("quotient degree");
    return pass();
  });
}

SuiteResult bezout_residuals(std::uint64_t seed, int cases) {
  return run_cases("bezout_residuals", seed, cases, [](Gen& g) {
    // A shared factor on the matching side makes g nontrivial half the time.
    const QPoly h = g.coin() ? g.poly(1) : QPoly::constant(1.0);
    const QPoly s = g.poly(g.integer(0, 3)), t = g.poly(g.integer(0, 3));
    {
      const QPoly a = h * s, b = h * t;
      const BezoutData bz = gcld(a, b);
      const double sc = std::max(prod_scale(a, bz.p), prod_scale(b, bz.q));
      if (max_diff(a * bz.p + b * bz.q, bz.g) > 1e-8 * sc) return fail("gcld: a p + b q != g");
      const double sk = std::max(prod_scale(a, bz.u), prod_scale(b, bz.v));
      if ((a * bz.u + b * bz.v).max_norm() > 1e-8 * sk) return fail("gcld: a u + b v != 0");
      if (std::abs(bz.g.lead().w - 1.0) > 1e-12 || bz.g.lead().im_norm() > 1e-12) return fail("gcld not monic");
      for (const QPoly* p : {&a, &b}) {
        if (div_quotient_right(*p, bz.g).remainder.max_norm() > 1e-7 * poly_scale({p})) {
          return fail("gcld does not left-divide its arguments");
        }
      }
      if (bz.g.degree() < h.degree()) return fail("gcld lost the common left factor");
    }
    {
      const QPoly a = s * h, b = t * h;
      const BezoutData bz = gcrd(a, b);
      const double sc = std::max(prod_scale(bz.p, a), prod_scale(bz.q, b));
      if (max_diff(bz.p * a + bz.q * b, bz.g) > 1e-8 * sc) return fail("gcrd: p a + q b != g");
      const double sk = std::max(prod_scale(bz.u, a), prod_scale(bz.v, b));
      if ((bz.u * a + bz.v * b).max_norm() > 1e-8 * sk) return fail("gcrd: u a + v b != 0");
      if (bz.g.degree() < h.degree()) return fail("gcrd lost the common right factor");
    }
    return pass();
  });
}

SuiteResult left_divisor_preservation(std::uint64_t seed, int cases) {
  return run_cases("left_divisor_preserved", seed, cases, [](Gen& g) {
    const QPoly d = g.poly(g.integer(1, 2));
    const QPoly s = g.poly(g.integer(1, 3)), t = g.poly(g.integer(1, 3));
    if (gcld(s, t).g.degree() != 0) return skip();
    const QPoly got = gcld(d * s, d * t).g;
    if (got.degree() != d.degree()) return fail(str("deg gcld = ", got.degree(), ", expected ", d.degree()));
    if (div_quotient_right(got, d).remainder.max_norm() > 1e-7) return fail("g does not left-divide the gcld");
    return pass();
  });
}

SuiteResult product_evaluation(std::uint64_t seed, int cases) {
  return run_cases("product_right_evaluation", seed, cases, [](Gen& g) {
    const QPoly a = g.poly(g.integer(0, 4)), b = g.poly(g.integer(0, 4));
    const Quaternion q = g.quat(1.5);
    const Quaternion bq = eval_right(b, q);
    if (bq.norm() < 1e-3) return skip();
    const Quaternion lhs = eval_right(a * b, q);
    const Quaternion rhs = eval_right(a, bq * q * inverse(bq)) * bq;
    const double sc = std::max(1.0, prod_scale(a, b) * std::pow(std::max(1.0, q.norm()), 8));
    if ((lhs - rhs).norm() > 1e-10 * sc) return fail(str("|(ab)(q) - a(b(q) q b(q)^-1) b(q)| = ", (lhs - rhs).norm()));
    // A right zero of the right factor is a right zero of the product.
    const QPoly c = g.poly(g.integer(0, 3)) * QPoly::linear_factor(q);
    if (eval_right(c, q).norm() > 1e-10 * sc) return fail("right factor zero not a zero of the factor");
    if (eval_right(a * c, q).norm() > 1e-10 * sc) return fail("right factor zero not a zero of the product");
    return pass();
  });
}

SuiteResult zero_count(std::uint64_t seed, int cases) {
  return run_cases("right_zero_count", seed, cases, [](Gen& g) {
    const int n = g.integer(1, 4);
    const QPoly a = g.poly(n);
    if (class_separation(a) < 1e-2) return skip();
    const ZeroReport rep = right_zeros(a);
    if (!rep.spherical.empty()) return fail("spherical class for a generic polynomial");
    if (static_cast<int>(rep.isolated.size()) != n) return fail(str(rep.isolated.size(), " zeros for degree ", n));
    for (const auto& z : rep.isolated) {
      double sc = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) sc += a[i].norm() * std::pow(std::max(1.0, z.zero.norm()), i);
      if (eval_right(a, z.zero).norm() > 1e-8 * sc) return fail(str("|a(z)| = ", eval_right(a, z.zero).norm()));
    }
    return pass();
  });
}

SuiteResult spherical_zeros(std::uint64_t seed, int cases) {
  return run_cases("spherical_zero_classes", seed, cases, [](Gen& g) {
    // psi(d) = d^2 - 2 re d + |c|^2 times a generic factor keeps the whole class.
    const Quaternion c = g.quat_norm_between(0.5, 2.0);
    if (c.im_norm() < 0.1) return skip();
    const QPoly psi({Quaternion(c.norm_sq()), Quaternion(-2.0 * c.w), Quaternion(1.0)});
    const QPoly cof = g.poly(g.integer(0, 2));
    const QPoly a = cof * psi;
    if (cof.degree() > 0) {
      if (class_separation(cof) < 1e-2) return skip();
      for (const auto& k : right_eigenvalues(companion_matrix(cof)).classes) {
        if (similar(k, class_of(c), 1e-2)) return skip();
      }
    }
    const ZeroReport rep = right_zeros(a);
    if (rep.spherical.size() != 1) return fail(str(rep.spherical.size(), " spherical classes"));
    if (!similar(rep.spherical[0], class_of(c))) return fail("wrong spherical class");
    if (static_cast<int>(rep.isolated.size()) != a.degree() - 2) return fail("isolated count");
    return pass();
  });
}

SuiteResult conversion_identity(std::uint64_t seed, int cases) {
  return run_cases("left_right_conversion", seed, cases, [](Gen& g) {
    const QPoly a = g.causal_poly(g.integer(1, 3), 0.5), b = g.poly(g.integer(0, 3));
    const RightPair rp = left_to_right(a, b);
    const double sc = std::max(prod_scale(a, rp.b_r), prod_scale(b, rp.a_r));
    if (max_diff(a * rp.b_r, b * rp.a_r) > 1e-9 * sc) return fail("a b_r != b a_r");
    if (rp.a_r.degree() != a.degree()) return fail("deg a_r != deg a for a coprime pair");
    const auto s_left = series(LeftFraction{a, b}, 20);
    const auto s_right = series(RightFraction{rp.b_r, rp.a_r}, 20);
    if (series_diff(s_left, s_right) > 1e-8) return fail(str("series differ by ", series_diff(s_left, s_right)));

    const LeftPair lp = right_to_left(rp.b_r, rp.a_r);
    const double sl = std::max(prod_scale(lp.b_l, rp.a_r), prod_scale(lp.a_l, rp.b_r));
    if (max_diff(lp.b_l * rp.a_r, lp.a_l * rp.b_r) > 1e-9 * sl) return fail("b_l a_r != a_l b_r");
    const auto s_back = series(LeftFraction{lp.a_l, lp.b_l}, 20);
    if (series_diff(s_left, s_back) > 1e-8) return fail("right_to_left changed the series");
    return pass();
  });
}

// ---- transfer functions --------------------------------------------------

SuiteResult denominator_classes(std::uint64_t seed, int cases) {
  return run_cases("left_right_denominator_classes", seed, cases, [](Gen& g) {
    const QPoly a = g.causal_poly(g.integer(1, 3)), b = g.poly(g.integer(0, 3));
    if (class_separation(a) < 1e-2) return skip();
    const RightPair rp = left_to_right(a, b);
    if (!check_denominator_classes({a, b}, {rp.b_r, rp.a_r}, 1e-6)) return fail("denominator classes differ");
    return pass();
  });
}

SuiteResult zero_eigen_correspondence(std::uint64_t seed, int cases) {
  return run_cases("zero_eigenvalue_correspondence", seed, cases, [](Gen& g) {
    const LeftFraction f{g.causal_poly(g.integer(1, 3)), g.poly(g.integer(0, 3))};
    if (class_separation(f.den) < 1e-2) return skip();
    const StateSpace ss = realize(f);
    if (!check_zero_eigen_correspondence(ss, f, 1e-6)) return fail("reciprocal zero classes are not eigenvalue classes");
    return pass();
  });
}

SuiteResult tf_markov_roundtrip(std::uint64_t seed, int cases) {
  return run_cases("tf_left_series_matches_markov", seed, cases, [](Gen& g) {
    const auto n = static_cast<std::size_t>(g.integer(0, 4));
    const StateSpace ss = g.system(n);
    const LeftFraction lf = tf_left(ss);
    const std::size_t count = 2 * n + 4;
    const auto s = series(lf, count), m = markov(ss, count);
    double worst = 0.0, scale = 1.0;
    for (std::size_t k = 0; k < count; ++k) {
      worst = std::max(worst, (s[k] - m[k]).norm());
      scale = std::max(scale, m[k].norm());
    }
    if (worst > 1e-8 * scale) return fail(str("series vs markov ", worst));
    if (lf.den.degree() > static_cast<int>(2 * n)) return fail("denominator degree above 2n");
    const RightFraction rf = tf_right(ss);
    if (!fraction_equal(lf, rf, 1e-7)) return fail("tf_left and tf_right disagree");
    return pass();
  });
}

SuiteResult realize_roundtrip(std::uint64_t seed, int cases) {
  return run_cases("realize_markov_matches_series", seed, cases, [](Gen& g) {
    const LeftFraction f{g.causal_poly(g.integer(0, 4)), g.poly(g.integer(0, 4))};
    const StateSpace ss = realize(f);
    const int expect = std::max(f.den.degree(), f.num.degree());
    if (static_cast<int>(ss.order()) != expect) return fail(str("order ", ss.order(), ", expected ", expect));
    const std::size_t count = 2 * ss.order() + 4;
    const double d = series_diff(series(f, count), markov(ss, count));
    if (d > 1e-8) return fail(str("markov vs series ", d));
    if (g.coin()) {
      const RightPair rp = left_to_right(f.den, f.num);
      const StateSpace rs = realize(RightFraction{rp.b_r, rp.a_r});
      if (series_diff(series(f, count), markov(rs, count)) > 1e-8) return fail("right-fraction realization");
    }
    return pass();
  });
}

// ---- design --------------------------------------------------------------

SuiteResult solvability_equivalence(std::uint64_t seed, int cases) {
  return run_cases("solvability_equivalence", seed, cases, [](Gen& g) {
    const QPoly cd = g.poly(1);
    const QPoly at = g.poly(g.integer(1, 2)), bt = g.poly(g.integer(1, 2));
    if (gcld(at, bt).g.degree() != 0) return skip();
    const QPoly a = cd * at, b = cd * bt;
    const QPoly ct = g.poly(g.integer(0, 3));
    const QPoly c = cd * ct;
    const DiophantineSolution sol = solve_diophantine(a, b, c);
    const double sc = std::max({prod_scale(a, sol.x), prod_scale(b, sol.y), c.max_norm()});
    if (max_diff(a * sol.x + b * sol.y, c) > 1e-8 * sc) return fail("solvable instance: residual");

    // Perturbing the constant term breaks left divisibility by cd.
    const QPoly bad = c + QPoly::constant(g.quat_norm_between(0.5, 1.0));
    if (div_quotient_right(bad, gcld(a, b).g).remainder.max_norm() < 1e-6) return skip();
    try {
      solve_diophantine(a, b, bad);
      return fail("unsolvable instance was solved");
    } catch (const UnsolvableError& e) {
      if (e.gcld().degree() != 1) return fail("reported gcld has the wrong degree");
    }
    return pass();
  });
}

SuiteResult minimal_degree_bounds(std::uint64_t seed, int cases) {
  return run_cases("minimal_solution_degrees", seed, cases, [](Gen& g) {
    const QPoly a = g.causal_poly(g.integer(1, 3)), b = g.poly(g.integer(0, 3));
    const QPoly c = g.poly(g.integer(0, 5));
    for (Flavor fl : {Flavor::MinimalX, Flavor::MinimalY, Flavor::Particular}) {
      const DiophantineSolution sol = solve_diophantine(a, b, c, fl);
      const double sc = std::max({prod_scale(a, sol.x), prod_scale(b, sol.y), c.max_norm()});
      if (max_diff(a * sol.x + b * sol.y, c) > 1e-8 * sc) return fail(str(to_string(fl), ": residual"));
      if (fl == Flavor::MinimalX && !sol.x.is_zero() && sol.x.degree() >= sol.b_r.degree()) {
        return fail(str("deg x = ", sol.x.degree(), ", deg b_r = ", sol.b_r.degree()));
      }
      if (fl == Flavor::MinimalY && !sol.y.is_zero() && sol.y.degree() >= sol.a_r.degree()) {
        return fail(str("deg y = ", sol.y.degree(), ", deg a_r = ", sol.a_r.degree()));
      }
      // Moving along the kernel keeps the equation.
      const auto [x2, y2] = general_solution(sol, g.poly(g.integer(0, 2)));
      const double s2 = std::max({prod_scale(a, x2), prod_scale(b, y2), c.max_norm()});
      if (max_diff(a * x2 + b * y2, c) > 1e-8 * s2) return fail("general solution residual");
      if (fl == Flavor::MinimalX) {
        // Uniqueness: reducing any other solution gives the same x.
        const DivResult back = div_quotient_right(x2, sol.b_r);
        if (max_diff(back.remainder, sol.x) > 1e-8 * std::max(1.0, x2.max_norm())) return fail("minimal x not unique");
      }
    }
    return pass();
  });
}

SuiteResult pole_placement(std::uint64_t seed, int cases) {
  return run_cases("pole_placement", seed, cases, [](Gen& g) {
    // Strictly proper plant: b_l(0) = 0.
    const int n = g.integer(1, 2);
    const QPoly a = g.causal_poly(n, 0.7);
    const QPoly b = shift(g.poly(g.integer(0, n - 1)), 1);
    if (gcld(a, b).g.degree() != 0) return skip();
    const bool real_roots = g.coin();
    std::vector<Quaternion> roots;
    for (int i = 0; i < n; ++i) {
      roots.push_back(real_roots ? Quaternion((g.coin() ? 1 : -1) * g.uniform(1.5, 4.0))
                                 : g.quat_norm_between(1.5, 4.0));
    }
    const QPoly c = build_c(roots);
    if (class_separation(c) < 5e-2) return skip();
    const DesignResult r = place_poles({a, b}, roots);
    const QPoly lhs = a * r.controller.den + b * r.controller.num;
    const double sc = std::max({prod_scale(a, r.controller.den), prod_scale(b, r.controller.num), 1.0});
    if (max_diff(lhs, r.c) > 1e-8 * sc) return fail("a_l p_r + b_l q_r != c");
    const auto zero_cls = right_eigenvalues(companion_matrix(r.T_w.den)).classes;
    for (const auto& zc : zero_cls) {
      const bool hit = std::any_of(roots.begin(), roots.end(), [&](const Quaternion& q) { return similar(zc, class_of(q), 1e-6); });
      if (!hit) return fail(str("closed-loop zero class (", zc.re, ", ", zc.im_norm, ") not prescribed"));
    }
    if (real_roots) {
      const ZeroReport rep = right_zeros(r.T_w.den);
      if (rep.isolated.size() != roots.size()) return fail("real placement: zero count");
      for (const auto& z : rep.isolated) {
        if (z.zero.im_norm() > 1e-6) return fail("real placement: nonreal zero");
        const bool hit = std::any_of(roots.begin(), roots.end(), [&](const Quaternion& q) { return std::abs(q.w - z.zero.w) < 1e-6; });
        if (!hit) return fail(str("real placement: unexpected zero ", z.zero.w));
      }
    }
    if (!r.stable) return fail("stable roots gave an unstable loop");
    return pass();
  });
}

// ---- simulation and I/O --------------------------------------------------

SuiteResult impulse_markov(std::uint64_t seed, int cases) {
  return run_cases("impulse_response_is_markov", seed, cases, [](Gen& g) {
    const auto n = static_cast<std::size_t>(g.integer(0, 4));
    const StateSpace ss = g.system(n);
    const std::size_t steps = 12;
    const auto y = simulate(ss, QuatMatrix(n, 1), {Quaternion(1.0)}, steps);
    const auto m = markov(ss, steps);
    for (std::size_t k = 0; k < steps; ++k) {
      if ((y[k] - m[k]).norm() > 1e-12 * std::max(1.0, m[k].norm())) return fail(str("sample ", k));
    }
    return pass();
  });
}

SuiteResult serialization_roundtrip(std::uint64_t seed, int cases) {
  return run_cases("serialization_roundtrip", seed, cases, [](Gen& g) {
    const auto n = static_cast<std::size_t>(g.integer(0, 3));
    const StateSpace ss = g.system(n, std::pow(10.0, g.uniform(-5, 5)));
    const StateSpace ss2 = io::system_from_json(io::json::parse(io::to_json(ss).dump()));
    if (!(ss2.F == ss.F && ss2.G == ss.G && ss2.H == ss.H && ss2.J == ss.J)) return fail("system");
    const QPoly p = g.poly(g.integer(0, 5), std::pow(10.0, g.uniform(-8, 8)));
    if (!(io::poly_from_json(io::json::parse(io::to_json(p).dump())) == p)) return fail("polynomial");
    const LeftFraction lf = g.fraction(g.integer(0, 3));
    const LeftFraction lf2 = io::left_fraction_from_json(io::json::parse(io::to_json(lf).dump()));
    if (!(lf2.den == lf.den && lf2.num == lf.num)) return fail("left fraction");
    const RightFraction rf{g.poly(2), g.causal_poly(2)};
    const RightFraction rf2 = io::right_fraction_from_json(io::json::parse(io::to_json(rf).dump()));
    if (!(rf2.den == rf.den && rf2.num == rf.num)) return fail("right fraction");
    const Quaternion q = g.quat(1e300);
    if (!(io::quaternion_from_json(io::json::parse(io::to_json(q).dump())) == q)) return fail("quaternion");
    return pass();
  });
}

}  // namespace

const std::vector<NamedSuite>& all_suites() {
  static const std::vector<NamedSuite> suites = {
      {"quat_norm_and_associativity", quat_algebra},
      {"similarity_classes", quat_similarity},
      {"adjoint_homomorphism", adjoint_homomorphism},
      {"adjoint_conjugate_pairs", conjugate_pairing},
      {"right_eigenvalue_residual", right_eigen_residual},
      {"stable_powers_decay", power_convergence},
      {"division_identities", division_identities},
      {"bezout_residuals", bezout_residuals},
      {"left_divisor_preserved", left_divisor_preservation},
      {"product_right_evaluation", product_evaluation},
      {"right_zero_count", zero_count},
      {"spherical_zero_classes", spherical_zeros},
      {"left_right_conversion", conversion_identity},
      {"left_right_denominator_classes", denominator_classes},
      {"zero_eigenvalue_correspondence", zero_eigen_correspondence},
      {"tf_left_series_matches_markov", tf_markov_roundtrip},
      {"realize_markov_matches_series", realize_roundtrip},
      {"solvability_equivalence", solvability_equivalence},
      {"minimal_solution_degrees", minimal_degree_bounds},
      {"pole_placement", pole_placement},
      {"impulse_response_is_markov", impulse_markov},
      {"serialization_roundtrip", serialization_roundtrip},
  };
  return suites;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed, int cases) {
  for (const auto& s : all_suites()) {
    if (s.name == name) return s.run(seed, cases);
  }
  throw std::out_of_range("unknown property suite " + name);
}

}  // namespace qctl::testing
