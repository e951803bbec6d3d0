#pragma once

// SISO quaternionic systems x(k+1) = F x(k) + G u(k), y(k) = H x(k) + J u(k)
// and their transfer functions S = J + d H (I - d F)^-1 G written as
// polynomial fractions in d.

#include <cstddef>
#include <vector>

#include "qctl/qmat.hpp"
#include "qctl/qpoly.hpp"

namespace qctl {

struct StateSpace {
  QuatMatrix F;  // n x n
  QuatMatrix G;  // n x 1
  QuatMatrix H;  // 1 x n
  Quaternion J;

  std::size_t order() const noexcept { return F.rows(); }
  /// Throws Error(DimensionMismatch) when the shapes do not conform.
  void validate() const;

  bool operator==(const StateSpace&) const = default;
};

/// S = den^-1 num with den(0) = 1.
struct LeftFraction {
  QPoly den;
  QPoly num;
  bool operator==(const LeftFraction&) const = default;
};

/// S = num den^-1.
struct RightFraction {
  QPoly num;
  QPoly den;
  bool operator==(const RightFraction&) const = default;
};

/// Reduces by the greatest common left divisor and scales den(0) to 1.
/// Throws Error(NonCausal) when the reduced denominator has no constant term.
LeftFraction make_left_fraction(const QPoly& den, const QPoly& num, double tol = kCoeffTol);
/// Reduces by the greatest common right divisor and scales den(0) to 1 when
/// den(0) != 0.
RightFraction make_right_fraction(const QPoly& num, const QPoly& den, double tol = kCoeffTol);

/// Markov parameters S_0 = J, S_k = H F^(k-1) G for k < count.
std::vector<Quaternion> markov(const StateSpace& ss, std::size_t count);

/// Power-series coefficients of den^-1 num. Throws Error(NonCausal) when
/// den(0) is not invertible.
std::vector<Quaternion> series(const LeftFraction& f, std::size_t count);
/// Power-series coefficients of num den^-1.
std::vector<Quaternion> series(const RightFraction& f, std::size_t count);

/// Left coprime fraction of the transfer function (Algorithm 1, scalar form).
///
/// Searches m = 0, 1, ..., 2n for the lowest-degree p with p(0) = 1 and
/// sum_i p_i S_{k-i} = 0 for all k in (m, m + 2n]; the Markov sequence obeys
/// the degree-2n real recurrence of the complex adjoint of F, so that window
/// implies the identity for every k > m. The numerator is the truncated
/// product p S. Throws Error(AnnihilatorNotFound) on numerical breakdown.
LeftFraction tf_left(const StateSpace& ss, double tol = 1e-8);

/// tf_left followed by left_to_right conversion.
RightFraction tf_right(const StateSpace& ss, double tol = 1e-8);

/// lf.den * rf.num == lf.num * rf.den coefficientwise within tol * scale.
bool fraction_equal(const LeftFraction& lf, const RightFraction& rf, double tol = kCoeffTol);

/// Controllable-canonical realization of den^-1 num (den(0) must be 1):
/// J = num(0), btilde = num - den J, den^-1 btilde = bhat ahat^-1 with
/// ahat(0) = 1, F bottom companion with last row (-ahat_n, ..., -ahat_1),
/// G = e_n, H = (bhat_n, ..., bhat_1). n = max(deg den, deg num).
StateSpace realize(const LeftFraction& f, double tol = kCoeffTol);

/// Realization of num den^-1 through its left fraction.
StateSpace realize(const RightFraction& f, double tol = kCoeffTol);

/// Each zero class of lf.den pairs with a distinct zero class of rf.den.
bool check_denominator_classes(const LeftFraction& lf, const RightFraction& rf, double tol = kSimilarityTol);

/// Reciprocals of the right zeros of lf.den lie in right-eigenvalue classes
/// of ss.F, and any surplus states show up as zero eigenvalue classes.
bool check_zero_eigen_correspondence(const StateSpace& ss, const LeftFraction& lf, double tol = kSimilarityTol);

}  // namespace qctl
