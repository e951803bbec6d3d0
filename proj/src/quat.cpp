#include "qctl/quat.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "qctl/error.hpp"

namespace qctl {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ZeroDivision: return "ZeroDivision";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::EigensolverFailure: return "EigensolverFailure";
    case ErrorKind::ZeroDivisor: return "ZeroDivisor";
    case ErrorKind::BothZero: return "BothZero";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::NonCausal: return "NonCausal";
    case ErrorKind::AnnihilatorNotFound: return "AnnihilatorNotFound";
    case ErrorKind::Unsolvable: return "Unsolvable";
    case ErrorKind::DegenerateKernel: return "DegenerateKernel";
    case ErrorKind::ZeroRoot: return "ZeroRoot";
    case ErrorKind::NonCausalController: return "NonCausalController";
    case ErrorKind::IllPosed: return "IllPosed";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

Quaternion inverse(const Quaternion& q, double zero_threshold) {
  const double n2 = q.norm_sq();
  if (!(std::sqrt(n2) > zero_threshold)) {
    throw Error(ErrorKind::ZeroDivision, "inverse of quaternion " + format(q, 17));
  }
  return q.conj() / n2;
}

SimilarityClass class_of(const Quaternion& q) { return {q.w, q.im_norm()}; }

bool similar(const SimilarityClass& p, const SimilarityClass& q, double tol) {
  const double scale = std::max({1.0, p.norm(), q.norm()});
  return std::abs(p.re - q.re) <= tol * scale && std::abs(p.im_norm - q.im_norm) <= tol * scale;
}

bool similar(const Quaternion& p, const Quaternion& q, double tol) {
  return similar(class_of(p), class_of(q), tol);
}

RealMatrix4 left_mul_matrix(const Quaternion& q) {
  const double a = q.w, b = q.x, c = q.y, d = q.z;
  return {{{a, -b, -c, -d}, {b, a, -d, c}, {c, d, a, -b}, {d, -c, b, a}}};
}

RealMatrix4 right_mul_matrix(const Quaternion& q) {
  const double a = q.w, b = q.x, c = q.y, d = q.z;
  return {{{a, -b, -c, -d}, {b, a, d, -c}, {c, -d, a, b}, {d, c, -b, a}}};
}

std::string format(const Quaternion& q, int digits) {
  return format(q, digits, q.norm());
}

std::string format(const Quaternion& q, int digits, double scale) {
  // Components that are rounding noise relative to scale print as 0.
  const double floor = 1e-12 * scale;
  auto clean = [floor](double v) { return std::abs(v) <= floor ? 0.0 : v; };
  char buf[64];
  std::string out;
  std::snprintf(buf, sizeof buf, "%.*g", digits, clean(q.w));
  out += buf;
  const char* units[] = {"i", "j", "k"};
  const double parts[] = {clean(q.x), clean(q.y), clean(q.z)};
  for (int n = 0; n < 3; ++n) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, std::abs(parts[n]));
    out += std::signbit(parts[n]) ? " - " : " + ";
    out += buf;
    out += units[n];
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) { return os << format(q); }

}  // namespace qctl
