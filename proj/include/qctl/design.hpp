#pragma once

// The polynomial equation a x + b y = c over H[d] and pole placement for the
// output feedback loop y = S u + w, u = -R y + v.

#include <string>
#include <vector>

#include "qctl/error.hpp"
#include "qctl/qpoly.hpp"
#include "qctl/xfer.hpp"

namespace qctl {

enum class Flavor { MinimalX, MinimalY, Particular };

struct DiophantineSolution {
  QPoly x;
  QPoly y;
  /// a b_r = b a_r, right coprime; the general solution is
  /// (x - b_r t, y + a_r t) for any polynomial t.
  QPoly b_r;
  QPoly a_r;
  Flavor flavor = Flavor::Particular;
};

/// Raised when gcld(a, b) does not left-divide c.
class UnsolvableError : public Error {
 public:
  UnsolvableError(QPoly g, QPoly remainder);
  const QPoly& gcld() const noexcept { return g_; }
  const QPoly& remainder() const noexcept { return remainder_; }

 private:
  QPoly g_;
  QPoly remainder_;
};

/// Solves a x + b y = c.
///
/// With g = gcld(a, b), a p + b q = g, the equation is solvable iff c = g c~;
/// then (p c~, q c~) is a particular solution. MinimalX right-divides x by b_r
/// (x = b_r t + r) and moves along the kernel by t, giving deg x < deg b_r;
/// MinimalY does the same for y and a_r. When b = 0 the x part is unique and
/// y = 0 is returned for every flavor.
/// Throws UnsolvableError, or Error(DegenerateKernel) when a = b = 0.
DiophantineSolution solve_diophantine(const QPoly& a, const QPoly& b, const QPoly& c,
                                      Flavor flavor = Flavor::MinimalX, double tol = kCoeffTol);

/// (sol.x - b_r t, sol.y + a_r t).
std::pair<QPoly, QPoly> general_solution(const DiophantineSolution& sol, const QPoly& t);

/// (d - r_1)(d - r_2)...(d - r_m), multiplied left to right in the given
/// order. Throws Error(ZeroRoot) if some r_i = 0.
QPoly build_c(const std::vector<Quaternion>& roots);

struct ClosedLoop {
  QPoly c;            // a_l p_r + b_l q_r
  LeftFraction T_v;   // g^-1 h_v, h_v = h b_l
  LeftFraction T_w;   // g^-1 h_w, h_w = h a_l
};

struct DesignResult {
  QPoly c;
  RightFraction controller;  // R = q_r p_r^-1
  LeftFraction T_w;
  LeftFraction T_v;
  StateSpace closed_loop;    // realization of T_w
  bool stable = false;
  std::vector<std::string> warnings;
};

/// Closed-loop transfer functions from v and w to y for an arbitrary
/// controller: c = a_l p_r + b_l q_r and p_r c^-1 = g^-1 h.
/// Throws Error(IllPosed) when c = 0.
ClosedLoop closed_loop_response_tfs(const LeftFraction& plant, const RightFraction& controller,
                                    double tol = kCoeffTol);

/// Pole placement: c = build_c(roots), minimal-x solution of
/// a_l p_r + b_l q_r = c, closed-loop fractions and their realization.
/// Requesting zeros inside the closed unit ball produces a warning, not an
/// error. Throws UnsolvableError or Error(NonCausalController) when p_r(0) = 0.
DesignResult place_poles(const LeftFraction& plant, const std::vector<Quaternion>& roots,
                         double tol = kCoeffTol);

const char* to_string(Flavor f) noexcept;

}  // namespace qctl
