#pragma once

// Polynomials over the quaternions in a central indeterminate d:
//
//   a(d) = a_0 + a_1 d + ... + a_n d^n,   a_i in H, d a_i = a_i d.
//
// Coefficients are stored ascending by power. Division, divisors and
// evaluation are all one-sided; every routine here states the side it uses.

#include <initializer_list>
#include <limits>
#include <string>
#include <vector>

#include "qctl/qmat.hpp"
#include "qctl/quat.hpp"

namespace qctl {

inline constexpr double kCoeffTol = 1e-9;

class QPoly {
 public:
  /// Degree reported for the zero polynomial.
  static constexpr int kMinusInfinity = std::numeric_limits<int>::min();

  QPoly() = default;
  explicit QPoly(std::vector<Quaternion> coeffs);
  QPoly(std::initializer_list<Quaternion> coeffs);

  static QPoly constant(const Quaternion& c) { return QPoly({c}); }
  static QPoly monomial(const Quaternion& c, int power);
  /// d - r
  static QPoly linear_factor(const Quaternion& r) { return QPoly({-r, Quaternion(1.0)}); }

  int degree() const noexcept {
    return coeffs_.empty() ? kMinusInfinity : static_cast<int>(coeffs_.size()) - 1;
  }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::size_t size() const noexcept { return coeffs_.size(); }
  const std::vector<Quaternion>& coeffs() const noexcept { return coeffs_; }

  /// Coefficient of d^i; zero beyond the degree.
  Quaternion operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Quaternion{}; }
  Quaternion lead() const { return coeffs_.empty() ? Quaternion{} : coeffs_.back(); }

  /// Largest coefficient norm (0 for the zero polynomial).
  double max_norm() const;

  /// Drops trailing coefficients whose norm is <= abs_tol.
  QPoly trimmed(double abs_tol) const;

  bool operator==(const QPoly&) const = default;

 private:
  void normalize();
  std::vector<Quaternion> coeffs_;
};

QPoly operator+(const QPoly& a, const QPoly& b);
QPoly operator-(const QPoly& a, const QPoly& b);
QPoly operator-(const QPoly& a);
/// sum_{i,j} a_i b_j d^{i+j}, with a_i on the left of b_j.
QPoly operator*(const QPoly& a, const QPoly& b);
QPoly operator*(const Quaternion& s, const QPoly& a);
QPoly operator*(const QPoly& a, const Quaternion& s);

/// Multiplies by d^k.
QPoly shift(const QPoly& a, int k);
/// Coefficientwise conjugate.
QPoly conj(const QPoly& a);

/// Largest coefficient norm of a - b.
double max_diff(const QPoly& a, const QPoly& b);

/// sum a_i q^i (coefficients left of powers); right zeros make this vanish.
Quaternion eval_right(const QPoly& a, const Quaternion& q);
/// sum q^i a_i (powers left of coefficients).
Quaternion eval_left(const QPoly& a, const Quaternion& q);

struct DivResult {
  QPoly quotient;
  QPoly remainder;
};

/// a = b * quotient + remainder, deg remainder < deg b. Common left divisors
/// of a and b divide the remainder. Throws Error(ZeroDivisor) for b = 0.
DivResult div_quotient_right(const QPoly& a, const QPoly& b);
/// a = quotient * b + remainder, deg remainder < deg b. Common right divisors
/// of a and b divide the remainder.
DivResult div_quotient_left(const QPoly& a, const QPoly& b);

/// Greatest common divisor with Bezout and kernel cofactors.
///   gcld: a p + b q = g,  a u + b v = 0   (g left-divides a and b)
///   gcrd: p a + q b = g,  u a + v b = 0   (g right-divides a and b)
/// g is monic. Remainders whose coefficients all fall below
/// tol * max(|a|, |b|) are treated as zero.
struct BezoutData {
  QPoly g;
  QPoly p;
  QPoly q;
  QPoly u;
  QPoly v;
};

BezoutData gcld(const QPoly& a, const QPoly& b, double tol = kCoeffTol);
BezoutData gcrd(const QPoly& a, const QPoly& b, double tol = kCoeffTol);

/// Right-coprime pair with a^-1 b = b_r a_r^-1, i.e. a b_r = b a_r.
struct RightPair {
  QPoly b_r;
  QPoly a_r;
};
/// a_r is scaled (from the right) to a_r(0) = 1 when a_r(0) != 0, else to
/// monic. Throws Error(ZeroDivisor) for a = 0.
RightPair left_to_right(const QPoly& a, const QPoly& b, double tol = kCoeffTol);

/// Left-coprime pair with a_l^-1 b_l = b a^-1, i.e. b_l a = a_l b.
struct LeftPair {
  QPoly a_l;
  QPoly b_l;
};
/// a_l is scaled (from the left) to a_l(0) = 1 when possible, else monic.
LeftPair right_to_left(const QPoly& b, const QPoly& a, double tol = kCoeffTol);

/// conj(a) * a. Real coefficients; each right zero of a lies in the class of
/// one of its roots.
QPoly companion_polynomial(const QPoly& a);

/// Bottom companion matrix of lead(a)^-1 a. Its right eigenvalue classes are
/// the right-zero classes of a.
QuatMatrix companion_matrix(const QPoly& a);

struct IsolatedZero {
  Quaternion zero;
  SimilarityClass cls;
  /// Candidate matched its class only between tol and 1e3 * tol.
  bool ill_conditioned = false;
};

struct ZeroReport {
  std::vector<IsolatedZero> isolated;
  /// Classes consisting entirely of right zeros; never real.
  std::vector<SimilarityClass> spherical;
};

/// Right zeros of a (deg a >= 1; degree 0 gives an empty report).
///
/// Zero classes come from the eigenvalues of the complex adjoint of
/// companion_matrix(a). A nonreal class with central quadratic psi is
/// spherical when psi divides a, otherwise the remainder r_1 d + r_0 of a by
/// psi gives the unique zero -r_1^-1 r_0 in the class. Real classes are
/// polished by Newton steps on a. Throws Error(IllConditioned) when a
/// candidate misses its class by more than 1e3 * tol.
ZeroReport right_zeros(const QPoly& a, double tol = kSimilarityTol);

/// All right zeros (isolated and spherical) have norm > 1 + tol. Constants are stable.
bool is_stable(const QPoly& a, double tol = 1e-9);

std::string format(const QPoly& a, int digits = 5);

}  // namespace qctl
