#pragma once

// Quaternion scalars over doubles and their similarity classes.
//
// A quaternion q = w + x i + y j + z k. Multiplication is the Hamilton
// product: i j = k, j i = -k, i^2 = j^2 = k^2 = ijk = -1.

#include <array>
#include <cmath>
#include <iosfwd>
#include <string>

namespace qctl {

inline constexpr double kZeroThreshold = 1e-12;
inline constexpr double kSimilarityTol = 1e-6;

struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_) : w(w_) {}  // NOLINT: reals embed implicitly
  constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion k() { return {0, 0, 0, 1}; }

  constexpr bool operator==(const Quaternion&) const = default;

  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }

  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
  constexpr double norm_sq() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm_sq()); }
  double im_norm() const { return std::sqrt(x * x + y * y + z * z); }
  constexpr bool is_zero() const { return w == 0.0 && x == 0.0 && y == 0.0 && z == 0.0; }

  constexpr std::array<double, 4> to_array() const { return {w, x, y, z}; }
  static constexpr Quaternion from_array(const std::array<double, 4>& a) {
    return {a[0], a[1], a[2], a[3]};
  }
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a *= (1.0 / s); }

// Hamilton product, not commutative.
constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
  return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
          p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
          p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
          p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

/// conj(q) / |q|^2. Throws Error(ZeroDivision) when |q| <= zero_threshold.
Quaternion inverse(const Quaternion& q, double zero_threshold = kZeroThreshold);

/// Orbit {u q u^-1} of a quaternion, identified by its real part and the norm
/// of its imaginary part. The canonical complex representative is re + im_norm i.
struct SimilarityClass {
  double re = 0.0;
  double im_norm = 0.0;

  double norm() const { return std::hypot(re, im_norm); }
  Quaternion representative() const { return {re, im_norm, 0.0, 0.0}; }
  bool is_real(double tol) const { return im_norm <= tol * std::max(1.0, norm()); }
};

SimilarityClass class_of(const Quaternion& q);

/// Classes agree when real parts and imaginary norms match within tol * scale,
/// scale = max(1, |p|, |q|).
bool similar(const SimilarityClass& p, const SimilarityClass& q, double tol = kSimilarityTol);
bool similar(const Quaternion& p, const Quaternion& q, double tol = kSimilarityTol);

using RealMatrix4 = std::array<std::array<double, 4>, 4>;

/// M with M * vec(p) = vec(q p).
RealMatrix4 left_mul_matrix(const Quaternion& q);
/// M with M * vec(p) = vec(p q).
RealMatrix4 right_mul_matrix(const Quaternion& q);

std::string format(const Quaternion& q, int digits = 5);
/// As above, printing components below 1e-12 * scale as 0.
std::string format(const Quaternion& q, int digits, double scale);
std::ostream& operator<<(std::ostream& os, const Quaternion& q);

}  // namespace qctl
