#pragma once

// Dense quaternionic matrices, the complex adjoint embedding and the
// standard right eigenvalues obtained through it.

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "qctl/quat.hpp"

namespace qctl {

class QuatMatrix {
 public:
  QuatMatrix() = default;
  QuatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  QuatMatrix(std::initializer_list<std::initializer_list<Quaternion>> rows);

  static QuatMatrix identity(std::size_t n);
  static QuatMatrix column(std::span<const Quaternion> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  Quaternion& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Quaternion& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const Quaternion> entries() const noexcept { return entries_; }

  bool operator==(const QuatMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Quaternion> entries_;
};

// Row entries multiply column entries from the left. Shape errors throw
// Error(DimensionMismatch).
QuatMatrix operator*(const QuatMatrix& a, const QuatMatrix& b);
QuatMatrix operator+(const QuatMatrix& a, const QuatMatrix& b);
QuatMatrix operator-(const QuatMatrix& a, const QuatMatrix& b);
QuatMatrix operator*(const Quaternion& s, const QuatMatrix& a);
QuatMatrix operator*(const QuatMatrix& a, const Quaternion& s);

/// Largest entry norm.
double max_norm(const QuatMatrix& a);

using ComplexMatrix = Eigen::MatrixXcd;

/// Writes A = A1 + A2 j with complex A1, A2 and returns [[A1, A2], [-conj A2, conj A1]].
ComplexMatrix complex_adjoint(const QuatMatrix& a);

/// Eigenvalues of a dense complex matrix: Householder reduction to Hessenberg
/// form followed by Wilkinson-shifted QR with deflation at 1e-12 relative.
/// Throws Error(EigensolverFailure) when more than 100 * n sweeps are needed.
std::vector<std::complex<double>> complex_eigenvalues(const ComplexMatrix& a);

/// All 2n eigenvalues of complex_adjoint(a); they come in conjugate pairs.
std::vector<std::complex<double>> adjoint_eigenvalues(const QuatMatrix& a);

struct RightSpectrum {
  std::vector<SimilarityClass> classes;
};

/// Standard right eigenvalues of a square matrix, one class per quaternionic
/// dimension, sorted by real part then imaginary norm, both descending.
/// Imaginary norms below tol * max(1, |lambda|) are reported as exactly zero.
RightSpectrum right_eigenvalues(const QuatMatrix& a, double tol = 1e-12);

/// True iff every right eigenvalue class has norm < 1 - tol, i.e. the powers
/// of `a` contract to zero.
bool spectral_radius_stable(const QuatMatrix& a, double tol = 1e-9);

/// Solves sum_i p_i * coeff_rows[k][i] = rhs[k] for the unknowns p_i (which
/// multiply from the left) in the minimum-norm least-squares sense, using the
/// real 4-fold expansion. Residual checking is left to the caller.
std::vector<Quaternion> solve_left_linear(const std::vector<std::vector<Quaternion>>& coeff_rows,
                                          std::span<const Quaternion> rhs);

}  // namespace qctl
