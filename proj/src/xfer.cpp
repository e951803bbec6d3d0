#include "qctl/xfer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qctl/error.hpp"

namespace qctl {

namespace {

// Greedy one-to-one matching of two class multisets.
bool classes_biject(std::vector<SimilarityClass> lhs, std::vector<SimilarityClass> rhs, double tol) {
  if (lhs.size() != rhs.size()) return false;
  for (const auto& c : lhs) {
    auto it = std::find_if(rhs.begin(), rhs.end(), [&](const SimilarityClass& r) { return similar(c, r, tol); });
    if (it == rhs.end()) return false;
    rhs.erase(it);
  }
  return true;
}

// Zero classes of a with multiplicity (one per degree).
std::vector<SimilarityClass> zero_classes(const QPoly& a) {
  if (a.degree() < 1) return {};
  return right_eigenvalues(companion_matrix(a)).classes;
}

SimilarityClass reciprocal(const SimilarityClass& c) {
  const double n2 = c.re * c.re + c.im_norm * c.im_norm;
  return {c.re / n2, c.im_norm / n2};
}

}  // namespace

void StateSpace::validate() const {
  const std::size_t n = F.rows();
  const bool ok = F.cols() == n && G.rows() == n && G.cols() == 1 && H.rows() == 1 && H.cols() == n;
  if (!ok) {
    throw Error(ErrorKind::DimensionMismatch,
                "state-space shapes F " + std::to_string(F.rows()) + "x" + std::to_string(F.cols()) + ", G " +
                    std::to_string(G.rows()) + "x" + std::to_string(G.cols()) + ", H " +
                    std::to_string(H.rows()) + "x" + std::to_string(H.cols()));
  }
}

LeftFraction make_left_fraction(const QPoly& den, const QPoly& num, double tol) {
  if (den.is_zero()) throw Error(ErrorKind::ZeroDivisor, "left fraction with zero denominator");
  QPoly a = den, b = num;
  const BezoutData bz = gcld(den, num, tol);
  if (bz.g.degree() > 0) {
    a = div_quotient_right(den, bz.g).quotient;
    b = div_quotient_right(num, bz.g).quotient;
  }
  if (a[0].norm() <= tol * std::max(1.0, a.max_norm())) {
    throw Error(ErrorKind::NonCausal, "left denominator vanishes at d = 0: " + format(a));
  }
  const Quaternion unit = inverse(a[0]);
  return {unit * a, unit * b};
}

RightFraction make_right_fraction(const QPoly& num, const QPoly& den, double tol) {
  if (den.is_zero()) throw Error(ErrorKind::ZeroDivisor, "right fraction with zero denominator");
  QPoly a = den, b = num;
  const BezoutData bz = gcrd(den, num, tol);
  if (bz.g.degree() > 0) {
    a = div_quotient_left(den, bz.g).quotient;
    b = div_quotient_left(num, bz.g).quotient;
  }
  if (a[0].norm() > tol * std::max(1.0, a.max_norm())) {
    const Quaternion unit = inverse(a[0]);
    return {b * unit, a * unit};
  }
  return {b, a};
}

std::vector<Quaternion> markov(const StateSpace& ss, std::size_t count) {
  ss.validate();
  std::vector<Quaternion> out;
  out.reserve(count);
  if (count == 0) return out;
  out.push_back(ss.J);
  QuatMatrix fg = ss.G;  // F^(k-1) G
  for (std::size_t k = 1; k < count; ++k) {
    out.push_back(ss.order() == 0 ? Quaternion{} : (ss.H * fg)(0, 0));
    fg = ss.F * fg;
  }
  return out;
}

std::vector<Quaternion> series(const LeftFraction& f, std::size_t count) {
  if (f.den.is_zero() || f.den[0].norm() <= kZeroThreshold) {
    throw Error(ErrorKind::NonCausal, "series of a fraction whose denominator vanishes at d = 0");
  }
  const Quaternion inv0 = inverse(f.den[0]);
  std::vector<Quaternion> s(count);
  for (std::size_t k = 0; k < count; ++k) {
    Quaternion acc = f.num[k];
    for (std::size_t i = 1; i <= std::min(k, f.den.size() - 1); ++i) acc -= f.den[i] * s[k - i];
    s[k] = inv0 * acc;
  }
  return s;
}

std::vector<Quaternion> series(const RightFraction& f, std::size_t count) {
  if (f.den.is_zero() || f.den[0].norm() <= kZeroThreshold) {
    throw Error(ErrorKind::NonCausal, "series of a fraction whose denominator vanishes at d = 0");
  }
  // s den = num
  const Quaternion inv0 = inverse(f.den[0]);
  std::vector<Quaternion> s(count);
  for (std::size_t k = 0; k < count; ++k) {
    Quaternion acc = f.num[k];
    for (std::size_t i = 1; i <= std::min(k, f.den.size() - 1); ++i) acc -= s[k - i] * f.den[i];
    s[k] = acc * inv0;
  }
  return s;
}

LeftFraction tf_left(const StateSpace& ss, double tol) {
  ss.validate();
  const std::size_t n = ss.order();
  constexpr std::size_t kGuard = 4;
  const std::vector<Quaternion> s = markov(ss, 4 * n + kGuard + 1);

  for (std::size_t m = 0; m <= 2 * n; ++m) {
    const std::size_t first = m + 1, last = m + 2 * n + kGuard;
    double scale = 0.0;
    for (std::size_t k = 1; k <= last; ++k) scale = std::max(scale, s[k].norm());
    scale = std::max(scale, kZeroThreshold);

    // sum_{i=1..m} p_i S_{k-i} = -S_k over the recurrence window only; the
    // guard terms are checked afterwards.
    std::vector<std::vector<Quaternion>> rows;
    std::vector<Quaternion> rhs;
    for (std::size_t k = first; k <= m + 2 * n; ++k) {
      std::vector<Quaternion> row(m);
      for (std::size_t i = 1; i <= m; ++i) row[i - 1] = s[k - i];
      rows.push_back(std::move(row));
      rhs.push_back(-s[k]);
    }
    std::vector<Quaternion> p(1, Quaternion(1.0));
    const auto sol = solve_left_linear(rows, rhs);
    p.insert(p.end(), sol.begin(), sol.end());

    double p_size = 0.0;
    for (const auto& c : p) p_size += c.norm();
    double residual = 0.0;
    for (std::size_t k = first; k <= last; ++k) {
      Quaternion acc;
      for (std::size_t i = 0; i <= m; ++i) acc += p[i] * s[k - i];
      residual = std::max(residual, acc.norm());
    }
    if (residual > tol * scale * p_size) continue;

    std::vector<Quaternion> q(m + 1);
    for (std::size_t k = 0; k <= m; ++k)
      for (std::size_t i = 0; i <= k; ++i) q[k] += p[i] * s[k - i];
    const QPoly den = QPoly(p).trimmed(tol * p_size);
    const QPoly num = QPoly(std::move(q)).trimmed(tol * scale * p_size);
    return {den, num};
  }
  throw Error(ErrorKind::AnnihilatorNotFound,
              "no left annihilator of degree <= " + std::to_string(2 * n) + " reaches tolerance");
}

RightFraction tf_right(const StateSpace& ss, double tol) {
  const LeftFraction lf = tf_left(ss, tol);
  const RightPair rp = left_to_right(lf.den, lf.num);
  return {rp.b_r, rp.a_r};
}

bool fraction_equal(const LeftFraction& lf, const RightFraction& rf, double tol) {
  const QPoly lhs = lf.den * rf.num;
  const QPoly rhs = lf.num * rf.den;
  const double scale = std::max({1.0, lhs.max_norm(), rhs.max_norm()});
  return max_diff(lhs, rhs) <= tol * scale;
}

StateSpace realize(const LeftFraction& f, double tol) {
  if (f.den.is_zero() || f.den[0].norm() <= kZeroThreshold) {
    throw Error(ErrorKind::NonCausal, "realization needs an invertible den(0)");
  }
  const Quaternion unit = inverse(f.den[0]);
  const QPoly den = unit * f.den;
  const QPoly num = unit * f.num;

  const int n = std::max({0, den.degree(), num.degree()});
  const Quaternion b0 = num[0];
  const QPoly btilde = num - den * b0;

  StateSpace ss;
  ss.J = b0;
  const auto un = static_cast<std::size_t>(n);
  ss.F = QuatMatrix(un, un);
  ss.G = QuatMatrix(un, 1);
  ss.H = QuatMatrix(1, un);
  if (n == 0) return ss;

  const RightPair rp = left_to_right(den, btilde, tol);
  const QPoly& bhat = rp.b_r;
  const QPoly& ahat = rp.a_r;
  if (std::abs(ahat[0].w - 1.0) > 1e-9 || ahat[0].im_norm() > 1e-9) {
    throw Error(ErrorKind::NonCausal, "converted denominator has no constant term: " + format(ahat));
  }
  if (ahat.degree() > n || bhat.degree() > n) {
    throw Error(ErrorKind::IllConditioned, "fraction conversion raised the degree above " + std::to_string(n));
  }
  for (std::size_t r = 0; r + 1 < un; ++r) ss.F(r, r + 1) = 1.0;
  for (std::size_t c = 0; c < un; ++c) {
    ss.F(un - 1, c) = -ahat[un - c];
    ss.H(0, c) = bhat[un - c];
  }
  ss.G(un - 1, 0) = 1.0;
  return ss;
}

StateSpace realize(const RightFraction& f, double tol) {
  const LeftPair lp = right_to_left(f.num, f.den, tol);
  return realize(make_left_fraction(lp.a_l, lp.b_l, tol), tol);
}

bool check_denominator_classes(const LeftFraction& lf, const RightFraction& rf, double tol) {
  return classes_biject(zero_classes(lf.den), zero_classes(rf.den), tol);
}

bool check_zero_eigen_correspondence(const StateSpace& ss, const LeftFraction& lf, double tol) {
  std::vector<SimilarityClass> inverted;
  for (const auto& c : zero_classes(lf.den)) {
    if (c.norm() <= kZeroThreshold) return false;
    inverted.push_back(reciprocal(c));
  }
  std::vector<SimilarityClass> eig = right_eigenvalues(ss.F).classes;
  if (inverted.size() > eig.size()) return false;
  for (std::size_t extra = eig.size() - inverted.size(); extra > 0; --extra) inverted.push_back({0.0, 0.0});
  return classes_biject(std::move(inverted), std::move(eig), tol);
}

}  // namespace qctl
