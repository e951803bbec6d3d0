#pragma once

// Time-domain simulation of open and closed loops.

#include <cstdint>
#include <random>
#include <vector>

#include "qctl/xfer.hpp"

namespace qctl {

using SignalSeq = std::vector<Quaternion>;

/// Iterates x(k+1) = F x(k) + G u(k) from x(0) = x0 and returns
/// y(k) = H x(k) + J u(k) for k < steps. u is zero-extended.
SignalSeq simulate(const StateSpace& ss, const QuatMatrix& x0, const SignalSeq& u, std::size_t steps);

/// y = S u + w, u = -R y + v with S = plant, R = controller. Each step solves
/// (1 + J_p J_c) y = H_p x_p + J_p (v - H_c x_c) + w, then u = v - (H_c x_c + J_c y).
/// Throws Error(IllPosed) when 1 + J_p J_c is not invertible.
SignalSeq simulate_feedback(const StateSpace& plant, const StateSpace& controller, const QuatMatrix& x0_plant,
                            const QuatMatrix& x0_ctrl, const SignalSeq& v, const SignalSeq& w,
                            std::size_t steps);

/// 64-bit LCG, x <- 6364136223846793005 x + 1442695040888963407 (mod 2^64),
/// seeded with the raw seed value.
using StateRng = std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL,
                                                 1442695040888963407ULL, 0ULL>;

/// Uniform on [-1, 1) from the top 53 bits of the next LCG output.
double uniform_pm1(StateRng& rng);

/// n x 1 initial state with every quaternion component drawn by uniform_pm1,
/// in entry order w, x, y, z.
QuatMatrix random_state(std::size_t n, StateRng& rng);

}  // namespace qctl
