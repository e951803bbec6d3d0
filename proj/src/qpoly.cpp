#include "qctl/qpoly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "qctl/error.hpp"

namespace qctl {

QPoly::QPoly(std::vector<Quaternion> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

QPoly::QPoly(std::initializer_list<Quaternion> coeffs) : coeffs_(coeffs) { normalize(); }

void QPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

QPoly QPoly::monomial(const Quaternion& c, int power) {
  std::vector<Quaternion> v(static_cast<std::size_t>(power) + 1);
  v.back() = c;
  return QPoly(std::move(v));
}

double QPoly::max_norm() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, c.norm());
  return m;
}

QPoly QPoly::trimmed(double abs_tol) const {
  std::vector<Quaternion> v = coeffs_;
  while (!v.empty() && v.back().norm() <= abs_tol) v.pop_back();
  return QPoly(std::move(v));
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<Quaternion> v(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
  return QPoly(std::move(v));
}

QPoly operator-(const QPoly& a, const QPoly& b) {
  std::vector<Quaternion> v(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] - b[i];
  return QPoly(std::move(v));
}

QPoly operator-(const QPoly& a) {
  std::vector<Quaternion> v(a.coeffs());
  for (auto& c : v) c = -c;
  return QPoly(std::move(v));
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Quaternion> v(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) v[i + j] += a[i] * b[j];
  return QPoly(std::move(v));
}

QPoly operator*(const Quaternion& s, const QPoly& a) {
  std::vector<Quaternion> v(a.coeffs());
  for (auto& c : v) c = s * c;
  return QPoly(std::move(v));
}

QPoly operator*(const QPoly& a, const Quaternion& s) {
  std::vector<Quaternion> v(a.coeffs());
  for (auto& c : v) c = c * s;
  return QPoly(std::move(v));
}

QPoly shift(const QPoly& a, int k) {
  if (a.is_zero()) return {};
  std::vector<Quaternion> v;
  if (k >= 0) {
    v.assign(static_cast<std::size_t>(k), Quaternion{});
    v.insert(v.end(), a.coeffs().begin(), a.coeffs().end());
  } else {
    const auto drop = std::min(a.size(), static_cast<std::size_t>(-k));
    v.assign(a.coeffs().begin() + static_cast<std::ptrdiff_t>(drop), a.coeffs().end());
  }
  return QPoly(std::move(v));
}

QPoly conj(const QPoly& a) {
  std::vector<Quaternion> v(a.coeffs());
  for (auto& c : v) c = c.conj();
  return QPoly(std::move(v));
}

double max_diff(const QPoly& a, const QPoly& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) m = std::max(m, (a[i] - b[i]).norm());
  return m;
}

Quaternion eval_right(const QPoly& a, const Quaternion& q) {
  // Horner with the variable on the right: (...(a_n q + a_{n-1}) q + ...) + a_0
  Quaternion acc;
  for (std::size_t i = a.size(); i-- > 0;) acc = acc * q + a[i];
  return acc;
}

Quaternion eval_left(const QPoly& a, const Quaternion& q) {
  Quaternion acc;
  for (std::size_t i = a.size(); i-- > 0;) acc = q * acc + a[i];
  return acc;
}

namespace {

enum class Side { Right, Left };

// Side::Right: a = b q + r (quotient on the right of b).
// Side::Left:  a = q b + r.
DivResult divide(const QPoly& a, const QPoly& b, Side side) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroDivisor, "polynomial division by zero");
  if (a.degree() < b.degree()) return {QPoly{}, a};
  const Quaternion lead_inv = inverse(b.lead());
  std::vector<Quaternion> rem(a.coeffs());
  const std::size_t nb = b.size() - 1;
  std::vector<Quaternion> quot(rem.size() - nb);
  for (std::size_t top = rem.size(); top-- > nb;) {
    const std::size_t k = top - nb;
    const Quaternion t = side == Side::Right ? lead_inv * rem[top] : rem[top] * lead_inv;
    quot[k] = t;
    for (std::size_t i = 0; i < nb; ++i) rem[k + i] -= side == Side::Right ? b[i] * t : t * b[i];
    rem[top] = Quaternion{};
  }
  rem.resize(nb);
  return {QPoly(std::move(quot)), QPoly(std::move(rem))};
}

// Extended Euclid; Side::Right builds gcld with right-multiplied cofactors.
BezoutData euclid(const QPoly& a, const QPoly& b, double tol, Side side) {
  if (a.is_zero() && b.is_zero()) throw Error(ErrorKind::BothZero, "gcd of two zero polynomials");
  const double abs_tol = tol * std::max(a.max_norm(), b.max_norm());

  QPoly r_prev = a, r_cur = b.trimmed(abs_tol);
  QPoly u_prev = QPoly::constant(1.0), v_prev;
  QPoly u_cur, v_cur = QPoly::constant(1.0);
  while (!r_cur.is_zero()) {
    DivResult dr = divide(r_prev, r_cur, side);
    QPoly rem = dr.remainder.trimmed(abs_tol);
    QPoly u_next = side == Side::Right ? u_prev - u_cur * dr.quotient : u_prev - dr.quotient * u_cur;
    QPoly v_next = side == Side::Right ? v_prev - v_cur * dr.quotient : v_prev - dr.quotient * v_cur;
    r_prev = std::move(r_cur);
    r_cur = std::move(rem);
    u_prev = std::exchange(u_cur, std::move(u_next));
    v_prev = std::exchange(v_cur, std::move(v_next));
  }

  const Quaternion unit = inverse(r_prev.lead());
  if (side == Side::Right) return {r_prev * unit, u_prev * unit, v_prev * unit, u_cur, v_cur};
  return {unit * r_prev, unit * u_prev, unit * v_prev, u_cur, v_cur};
}

bool has_constant_term(const QPoly& p, double tol) {
  return p[0].norm() > tol * std::max(1.0, p.max_norm());
}

}  // namespace

DivResult div_quotient_right(const QPoly& a, const QPoly& b) { return divide(a, b, Side::Right); }

DivResult div_quotient_left(const QPoly& a, const QPoly& b) { return divide(a, b, Side::Left); }

BezoutData gcld(const QPoly& a, const QPoly& b, double tol) { return euclid(a, b, tol, Side::Right); }

BezoutData gcrd(const QPoly& a, const QPoly& b, double tol) { return euclid(a, b, tol, Side::Left); }

RightPair left_to_right(const QPoly& a, const QPoly& b, double tol) {
  if (a.is_zero()) throw Error(ErrorKind::ZeroDivisor, "left fraction with zero denominator");
  const BezoutData bz = gcld(a, b, tol);
  QPoly b_r = bz.u;
  QPoly a_r = -bz.v;
  const Quaternion unit = inverse(has_constant_term(a_r, tol) ? a_r[0] : a_r.lead());
  return {b_r * unit, a_r * unit};
}

LeftPair right_to_left(const QPoly& b, const QPoly& a, double tol) {
  if (a.is_zero()) throw Error(ErrorKind::ZeroDivisor, "right fraction with zero denominator");
  const BezoutData bz = gcrd(a, b, tol);
  QPoly b_l = bz.u;
  QPoly a_l = -bz.v;
  const Quaternion unit = inverse(has_constant_term(a_l, tol) ? a_l[0] : a_l.lead());
  return {unit * a_l, unit * b_l};
}

QPoly companion_polynomial(const QPoly& a) { return conj(a) * a; }

QuatMatrix companion_matrix(const QPoly& a) {
  if (a.degree() < 1) return {};
  const auto n = static_cast<std::size_t>(a.degree());
  const QPoly monic = inverse(a.lead()) * a;
  QuatMatrix c(n, n);
  for (std::size_t r = 0; r + 1 < n; ++r) c(r, r + 1) = 1.0;
  for (std::size_t col = 0; col < n; ++col) c(n - 1, col) = -monic[col];
  return c;
}

std::string format(const QPoly& a, int digits) {
  if (a.is_zero()) return "0";
  std::string out;
  const double scale = a.max_norm();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].norm() <= 1e-12 * scale) continue;
    if (!out.empty()) out += " + ";
    out += "(" + format(a[i], digits, scale) + ")";
    if (i == 1) out += " d";
    if (i > 1) out += " d^" + std::to_string(i);
  }
  return out;
}

}  // namespace qctl
