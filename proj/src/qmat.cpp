#include "qctl/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qctl/error.hpp"

namespace qctl {

namespace {

using cd = std::complex<double>;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::DimensionMismatch, what);
}

std::string shape(const QuatMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

// Reduces h to upper Hessenberg form in place.
void to_hessenberg(ComplexMatrix& h) {
  const Eigen::Index n = h.rows();
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    Eigen::VectorXcd v = h.block(k + 1, k, n - k - 1, 1);
    const double xnorm = v.norm();
    if (xnorm == 0.0) continue;
    const cd x0 = v(0);
    const cd phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : cd(1.0);
    v(0) += phase * xnorm;
    const double vnorm = v.norm();
    if (vnorm == 0.0) continue;
    v /= vnorm;
    // H <- P H P with P = I - 2 v v^*
    auto rows = h.block(k + 1, 0, n - k - 1, n);
    rows -= 2.0 * v * (v.adjoint() * rows);
    auto cols = h.block(0, k + 1, n, n - k - 1);
    cols -= 2.0 * (cols * v) * v.adjoint();
  }
}

struct Givens {
  double c;
  cd s;
};

// G = [[c, s], [-conj(s), c]] maps (a, b) to (r, 0).
Givens make_givens(cd a, cd b) {
  const double aa = std::abs(a);
  const double bb = std::abs(b);
  if (bb == 0.0) return {1.0, 0.0};
  if (aa == 0.0) return {0.0, 1.0};
  const double nrm = std::hypot(aa, bb);
  return {aa / nrm, (a / aa) * std::conj(b) / nrm};
}

}  // namespace

QuatMatrix::QuatMatrix(std::initializer_list<std::initializer_list<Quaternion>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    require(row.size() == cols_, "ragged matrix literal");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

QuatMatrix QuatMatrix::identity(std::size_t n) {
  QuatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

QuatMatrix QuatMatrix::column(std::span<const Quaternion> values) {
  QuatMatrix m(values.size(), 1);
  for (std::size_t i = 0; i < values.size(); ++i) m(i, 0) = values[i];
  return m;
}

QuatMatrix operator*(const QuatMatrix& a, const QuatMatrix& b) {
  require(a.cols() == b.rows(), "matmul " + shape(a) + " by " + shape(b));
  QuatMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < b.cols(); ++c) {
      Quaternion acc;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(r, k) * b(k, c);
      out(r, c) = acc;
    }
  }
  return out;
}

QuatMatrix operator+(const QuatMatrix& a, const QuatMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "add " + shape(a) + " and " + shape(b));
  QuatMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) + b(r, c);
  return out;
}

QuatMatrix operator-(const QuatMatrix& a, const QuatMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "subtract " + shape(a) + " and " + shape(b));
  QuatMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) - b(r, c);
  return out;
}

QuatMatrix operator*(const Quaternion& s, const QuatMatrix& a) {
  QuatMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = s * a(r, c);
  return out;
}

QuatMatrix operator*(const QuatMatrix& a, const Quaternion& s) {
  QuatMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) * s;
  return out;
}

double max_norm(const QuatMatrix& a) {
  double m = 0.0;
  for (const auto& q : a.entries()) m = std::max(m, q.norm());
  return m;
}

ComplexMatrix complex_adjoint(const QuatMatrix& a) {
  const auto n = static_cast<Eigen::Index>(a.rows());
  const auto m = static_cast<Eigen::Index>(a.cols());
  ComplexMatrix out(2 * n, 2 * m);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < m; ++c) {
      // q = (w + x i) + (y + z i) j
      const Quaternion& q = a(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
      const cd a1(q.w, q.x);
      const cd a2(q.y, q.z);
      out(r, c) = a1;
      out(r, c + m) = a2;
      out(r + n, c) = -std::conj(a2);
      out(r + n, c + m) = std::conj(a1);
    }
  }
  return out;
}

std::vector<cd> complex_eigenvalues(const ComplexMatrix& a) {
  require(a.rows() == a.cols(), "eigenvalues of a non-square matrix");
  const Eigen::Index n = a.rows();
  std::vector<cd> eig(static_cast<std::size_t>(n));
  if (n == 0) return eig;

  ComplexMatrix h = a;
  to_hessenberg(h);

  constexpr double kDeflate = 1e-12;
  const long budget = 100L * n;
  long sweeps = 0;
  int since_deflation = 0;
  Eigen::Index hi = n - 1;
  std::vector<Givens> rot(static_cast<std::size_t>(n));

  while (hi >= 0) {
    if (hi == 0) {
      eig[0] = h(0, 0);
      break;
    }
    Eigen::Index lo = hi;
    while (lo > 0) {
      const double scale = std::abs(h(lo, lo)) + std::abs(h(lo - 1, lo - 1));
      const double sub = std::abs(h(lo, lo - 1));
      if (sub <= kDeflate * scale || sub < std::numeric_limits<double>::min()) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      eig[static_cast<std::size_t>(hi)] = h(hi, hi);
      --hi;
      since_deflation = 0;
      continue;
    }
    if (++sweeps > budget) {
      throw Error(ErrorKind::EigensolverFailure,
                  "QR iteration did not converge within " + std::to_string(budget) + " sweeps");
    }
    ++since_deflation;

    // Wilkinson shift from the trailing 2x2 block, with an ad hoc exceptional
    // shift every 10 stalled sweeps.
    const cd p = h(hi - 1, hi - 1), q = h(hi - 1, hi), r = h(hi, hi - 1), s = h(hi, hi);
    cd mu;
    if (since_deflation % 10 == 0) {
      mu = s + cd(std::abs(r), std::abs(h(hi - 1, std::max<Eigen::Index>(lo, hi - 2))));
    } else {
      const cd half = 0.5 * (p - s);
      const cd disc = std::sqrt(half * half + q * r);
      const cd m1 = s - q * r / (half + disc);
      const cd m2 = s - q * r / (half - disc);
      const bool use_first = std::abs(half + disc) >= std::abs(half - disc);
      mu = use_first ? m1 : m2;
      if (!std::isfinite(mu.real()) || !std::isfinite(mu.imag())) mu = s;
    }

    for (Eigen::Index k = lo; k <= hi; ++k) h(k, k) -= mu;
    for (Eigen::Index k = lo; k < hi; ++k) {
      const Givens g = make_givens(h(k, k), h(k + 1, k));
      rot[static_cast<std::size_t>(k)] = g;
      for (Eigen::Index c = k; c <= hi; ++c) {
        const cd top = h(k, c), bot = h(k + 1, c);
        h(k, c) = g.c * top + g.s * bot;
        h(k + 1, c) = -std::conj(g.s) * top + g.c * bot;
      }
    }
    for (Eigen::Index k = lo; k < hi; ++k) {
      const Givens g = rot[static_cast<std::size_t>(k)];
      const Eigen::Index last = std::min(k + 2, hi);
      for (Eigen::Index rr = lo; rr <= last; ++rr) {
        const cd left = h(rr, k), right = h(rr, k + 1);
        h(rr, k) = g.c * left + std::conj(g.s) * right;
        h(rr, k + 1) = -g.s * left + g.c * right;
      }
    }
    for (Eigen::Index k = lo; k <= hi; ++k) h(k, k) += mu;
  }
  return eig;
}

std::vector<cd> adjoint_eigenvalues(const QuatMatrix& a) {
  require(a.rows() == a.cols(), "right eigenvalues of non-square " + shape(a));
  return complex_eigenvalues(complex_adjoint(a));
}

RightSpectrum right_eigenvalues(const QuatMatrix& a, double tol) {
  const auto eig = adjoint_eigenvalues(a);
  std::vector<SimilarityClass> folded;
  folded.reserve(eig.size());
  for (const auto& e : eig) folded.push_back({e.real(), std::abs(e.imag())});
  auto desc = [](const SimilarityClass& l, const SimilarityClass& r) {
    if (l.re != r.re) return l.re > r.re;
    return l.im_norm > r.im_norm;
  };
  std::sort(folded.begin(), folded.end(), desc);

  // Conjugate partners fold onto the same (re, |im|) and sit next to each other.
  RightSpectrum out;
  for (std::size_t i = 0; i + 1 < folded.size(); i += 2) {
    SimilarityClass c{0.5 * (folded[i].re + folded[i + 1].re),
                      0.5 * (folded[i].im_norm + folded[i + 1].im_norm)};
    if (c.im_norm <= tol * std::max(1.0, c.norm())) c.im_norm = 0.0;
    out.classes.push_back(c);
  }
  std::sort(out.classes.begin(), out.classes.end(), desc);
  return out;
}

bool spectral_radius_stable(const QuatMatrix& a, double tol) {
  const auto spectrum = right_eigenvalues(a);
  return std::all_of(spectrum.classes.begin(), spectrum.classes.end(),
                     [tol](const SimilarityClass& c) { return c.norm() < 1.0 - tol; });
}

std::vector<Quaternion> solve_left_linear(const std::vector<std::vector<Quaternion>>& coeff_rows,
                                          std::span<const Quaternion> rhs) {
  require(coeff_rows.size() == rhs.size(), "solve_left_linear: " + std::to_string(coeff_rows.size()) +
                                               " equations but " + std::to_string(rhs.size()) +
                                               " right-hand sides");
  const std::size_t unknowns = coeff_rows.empty() ? 0 : coeff_rows.front().size();
  for (const auto& row : coeff_rows) require(row.size() == unknowns, "solve_left_linear: ragged rows");
  if (unknowns == 0) return {};

  const auto eqs = static_cast<Eigen::Index>(coeff_rows.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4 * eqs, 4 * static_cast<Eigen::Index>(unknowns));
  Eigen::VectorXd b(4 * eqs);
  for (Eigen::Index k = 0; k < eqs; ++k) {
    const auto& row = coeff_rows[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < unknowns; ++i) {
      const RealMatrix4 r = right_mul_matrix(row[i]);
      for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c) m(4 * k + a, 4 * static_cast<Eigen::Index>(i) + c) = r[a][c];
    }
    const auto v = rhs[static_cast<std::size_t>(k)].to_array();
    for (int a = 0; a < 4; ++a) b(4 * k + a) = v[static_cast<std::size_t>(a)];
  }
  const Eigen::VectorXd sol = m.completeOrthogonalDecomposition().solve(b);
  std::vector<Quaternion> out(unknowns);
  for (std::size_t i = 0; i < unknowns; ++i) {
    const auto o = static_cast<Eigen::Index>(4 * i);
    out[i] = {sol(o), sol(o + 1), sol(o + 2), sol(o + 3)};
  }
  return out;
}

}  // namespace qctl
