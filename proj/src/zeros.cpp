#include <algorithm>
#include <cmath>
#include <string>

#include "qctl/error.hpp"
#include "qctl/qpoly.hpp"

namespace qctl {

namespace {

// sum |a_i| r^i: the magnitude a residual at a point of norm r is compared to.
double eval_scale(const QPoly& a, double r) {
  double s = 0.0, p = 1.0;
  for (const auto& c : a.coeffs()) {
    s += c.norm() * p;
    p *= std::max(1.0, r);
  }
  return s;
}

// Newton on a real variable: the residual a(z) is quaternion valued, so take
// the least-squares step along a'(z).
double polish_real(const QPoly& a, double z) {
  std::vector<Quaternion> deriv;
  for (std::size_t i = 1; i < a.size(); ++i) deriv.push_back(a[i] * static_cast<double>(i));
  const QPoly da(std::move(deriv));
  double best = eval_right(a, z).norm();
  for (int it = 0; it < 8 && best > 0.0; ++it) {
    const Quaternion f = eval_right(a, z);
    const Quaternion df = eval_right(da, z);
    const double dn = df.norm_sq();
    if (dn == 0.0) break;
    const double step = (f.w * df.w + f.x * df.x + f.y * df.y + f.z * df.z) / dn;
    const double trial = z - step;
    const double res = eval_right(a, trial).norm();
    if (!(res < best)) break;
    z = trial;
    best = res;
  }
  return z;
}

// Newton in R^4 for an isolated quaternion zero. The directional derivative
// of x^i along h is sum_m x^m h x^(i-1-m).
Quaternion polish_quaternion(const QPoly& a, Quaternion x) {
  const Quaternion basis[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  double best = eval_right(a, x).norm();
  for (int it = 0; it < 8 && best > 0.0; ++it) {
    std::vector<Quaternion> powers(a.size() + 1, Quaternion(1.0));
    for (std::size_t i = 1; i < powers.size(); ++i) powers[i] = powers[i - 1] * x;
    Eigen::Matrix4d jac;
    for (int c = 0; c < 4; ++c) {
      Quaternion col;
      for (std::size_t i = 1; i < a.size(); ++i) {
        Quaternion dir;
        for (std::size_t m = 0; m < i; ++m) dir += powers[m] * basis[c] * powers[i - 1 - m];
        col += a[i] * dir;
      }
      const auto v = col.to_array();
      for (int r = 0; r < 4; ++r) jac(r, c) = v[static_cast<std::size_t>(r)];
    }
    const auto f = eval_right(a, x).to_array();
    const Eigen::Vector4d rhs(f[0], f[1], f[2], f[3]);
    const Eigen::FullPivLU<Eigen::Matrix4d> lu(jac);
    if (!lu.isInvertible()) break;
    const Eigen::Vector4d step = lu.solve(rhs);
    const Quaternion trial = x - Quaternion(step(0), step(1), step(2), step(3));
    const double res = eval_right(a, trial).norm();
    if (!(res < best)) break;
    x = trial;
    best = res;
  }
  return x;
}

}  // namespace

ZeroReport right_zeros(const QPoly& a, double tol) {
  if (a.is_zero()) throw Error(ErrorKind::ZeroDivisor, "zeros of the zero polynomial");
  ZeroReport report;
  if (a.degree() < 1) return report;

  const RightSpectrum spectrum = right_eigenvalues(companion_matrix(a));

  std::vector<SimilarityClass> distinct;
  for (const auto& c : spectrum.classes) {
    const bool seen = std::any_of(distinct.begin(), distinct.end(),
                                  [&](const SimilarityClass& d) { return similar(c, d, tol); });
    if (!seen) distinct.push_back(c);
  }

  for (SimilarityClass cls : distinct) {
    const double scale = eval_scale(a, cls.norm());
    if (cls.is_real(tol)) {
      const double z = polish_real(a, cls.re);
      const double res = eval_right(a, z).norm();
      if (res > 1e3 * tol * scale) {
        throw Error(ErrorKind::IllConditioned, "real zero candidate " + std::to_string(z) +
                                                   " leaves residual " + std::to_string(res));
      }
      report.isolated.push_back({Quaternion(z), {z, 0.0}, res > tol * scale});
      continue;
    }

    // psi(d) = d^2 - 2 re d + |c|^2 vanishes on the whole class.
    const double n2 = cls.re * cls.re + cls.im_norm * cls.im_norm;
    const QPoly psi({Quaternion(n2), Quaternion(-2.0 * cls.re), Quaternion(1.0)});
    const QPoly rem = div_quotient_right(a, psi).remainder;
    const Quaternion r0 = rem[0], r1 = rem[1];
    if (r0.norm() <= tol * scale && r1.norm() <= tol * scale) {
      report.spherical.push_back(cls);
      continue;
    }
    if (r1.norm() <= kZeroThreshold * scale) {
      throw Error(ErrorKind::IllConditioned, "class (" + std::to_string(cls.re) + ", " +
                                                 std::to_string(cls.im_norm) +
                                                 ") has a constant nonzero remainder");
    }
    const Quaternion x = polish_quaternion(a, -(inverse(r1) * r0));
    const SimilarityClass got = class_of(x);
    if (!similar(got, cls, 1e3 * tol)) {
      throw Error(ErrorKind::IllConditioned, "zero candidate " + format(x, 9) + " is outside its class (" +
                                                 std::to_string(cls.re) + ", " +
                                                 std::to_string(cls.im_norm) + ")");
    }
    report.isolated.push_back({x, got, !similar(got, cls, tol)});
  }
  return report;
}

bool is_stable(const QPoly& a, double tol) {
  if (a.degree() < 1) return true;
  const ZeroReport zr = right_zeros(a);
  const double bound = 1.0 + tol;
  return std::all_of(zr.isolated.begin(), zr.isolated.end(),
                     [bound](const IsolatedZero& z) { return z.zero.norm() > bound; }) &&
         std::all_of(zr.spherical.begin(), zr.spherical.end(),
                     [bound](const SimilarityClass& c) { return c.norm() > bound; });
}

}  // namespace qctl
