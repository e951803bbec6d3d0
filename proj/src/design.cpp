#include "qctl/design.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace qctl {

namespace {

double scale_of(std::initializer_list<const QPoly*> polys) {
  double s = 1.0;
  for (const QPoly* p : polys) s = std::max(s, p->max_norm());
  return s;
}

}  // namespace

UnsolvableError::UnsolvableError(QPoly g, QPoly remainder)
    : Error(ErrorKind::Unsolvable,
            "gcld(a, b) = " + format(g) + " does not left-divide c (remainder " + format(remainder) + ")"),
      g_(std::move(g)),
      remainder_(std::move(remainder)) {}

const char* to_string(Flavor f) noexcept {
  switch (f) {
    case Flavor::MinimalX: return "minimal_x";
    case Flavor::MinimalY: return "minimal_y";
    case Flavor::Particular: return "particular";
  }
  return "unknown";
}

DiophantineSolution solve_diophantine(const QPoly& a, const QPoly& b, const QPoly& c, Flavor flavor,
                                      double tol) {
  if (a.is_zero() && b.is_zero()) {
    throw Error(ErrorKind::DegenerateKernel, "a x + b y = c with a = b = 0");
  }
  const BezoutData bz = gcld(a, b, tol);

  const DivResult split = div_quotient_right(c, bz.g);
  const double c_scale = scale_of({&c});
  const QPoly rem = split.remainder.trimmed(tol * c_scale);
  if (!rem.is_zero()) throw UnsolvableError(bz.g, rem);
  const QPoly& c_tilde = split.quotient;

  DiophantineSolution sol;
  sol.flavor = flavor;
  sol.x = bz.p * c_tilde;
  sol.y = bz.q * c_tilde;

  // Kernel pair, scaled so that a_r(0) = 1 where possible.
  sol.b_r = bz.u;
  sol.a_r = -bz.v;
  const bool has_const = sol.a_r[0].norm() > tol * std::max(1.0, sol.a_r.max_norm());
  const Quaternion unit = inverse(has_const ? sol.a_r[0] : sol.a_r.lead());
  sol.b_r = sol.b_r * unit;
  sol.a_r = sol.a_r * unit;

  if (flavor == Flavor::MinimalX && !sol.b_r.is_zero()) {
    const DivResult dr = div_quotient_right(sol.x, sol.b_r);
    sol.x = dr.remainder;
    sol.y = sol.y + sol.a_r * dr.quotient;
  } else if (flavor == Flavor::MinimalY && !sol.a_r.is_zero()) {
    const DivResult dr = div_quotient_right(sol.y, sol.a_r);
    sol.y = dr.remainder;
    sol.x = sol.x - sol.b_r * (-dr.quotient);
  }

  const double abs_tol = tol * scale_of({&sol.x, &sol.y});
  sol.x = sol.x.trimmed(abs_tol);
  sol.y = sol.y.trimmed(abs_tol);
  return sol;
}

std::pair<QPoly, QPoly> general_solution(const DiophantineSolution& sol, const QPoly& t) {
  return {sol.x - sol.b_r * t, sol.y + sol.a_r * t};
}

QPoly build_c(const std::vector<Quaternion>& roots) {
  QPoly c = QPoly::constant(1.0);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (roots[i].norm() <= kZeroThreshold) {
      throw Error(ErrorKind::ZeroRoot, "desired zero #" + std::to_string(i + 1) + " is 0");
    }
    c = c * QPoly::linear_factor(roots[i]);
  }
  return c;
}

ClosedLoop closed_loop_response_tfs(const LeftFraction& plant, const RightFraction& controller, double tol) {
  const QPoly& p_r = controller.den;
  const QPoly& q_r = controller.num;
  QPoly c = plant.den * p_r + plant.num * q_r;
  c = c.trimmed(tol * scale_of({&plant.den, &plant.num, &p_r, &q_r}));
  if (c.is_zero()) throw Error(ErrorKind::IllPosed, "a_l p_r + b_l q_r vanishes");

  const LeftPair gh = right_to_left(p_r, c, tol);
  ClosedLoop out;
  out.c = c;
  out.T_w = make_left_fraction(gh.a_l, gh.b_l * plant.den, tol);
  out.T_v = make_left_fraction(gh.a_l, gh.b_l * plant.num, tol);
  return out;
}

DesignResult place_poles(const LeftFraction& plant, const std::vector<Quaternion>& roots, double tol) {
  DesignResult result;
  result.c = build_c(roots);
  for (const auto& r : roots) {
    if (r.norm() <= 1.0) {
      result.warnings.push_back("requested zero " + format(r) + " has norm <= 1 and is unstable in d");
    }
  }

  const DiophantineSolution sol = solve_diophantine(plant.den, plant.num, result.c, Flavor::MinimalX, tol);
  if (sol.x[0].norm() <= kZeroThreshold * scale_of({&sol.x})) {
    throw Error(ErrorKind::NonCausalController, "p_r(0) = 0: " + format(sol.x));
  }
  result.controller = {sol.y, sol.x};

  const ClosedLoop cl = closed_loop_response_tfs(plant, result.controller, tol);
  result.T_w = cl.T_w;
  result.T_v = cl.T_v;
  result.closed_loop = realize(result.T_w, tol);
  result.stable = is_stable(result.T_w.den) && spectral_radius_stable(result.closed_loop.F);
  if (!result.stable && result.warnings.empty()) {
    result.warnings.push_back("closed loop is not stable");
  }
  return result;
}

}  // namespace qctl
