#include "qctl/sim.hpp"

#include "qctl/error.hpp"

namespace qctl {

namespace {

Quaternion at(const SignalSeq& s, std::size_t k) { return k < s.size() ? s[k] : Quaternion{}; }

Quaternion output_part(const StateSpace& ss, const QuatMatrix& x) {
  return ss.order() == 0 ? Quaternion{} : (ss.H * x)(0, 0);
}

QuatMatrix advance(const StateSpace& ss, const QuatMatrix& x, const Quaternion& u) {
  if (ss.order() == 0) return x;
  return ss.F * x + ss.G * u;
}

void check_state(const StateSpace& ss, const QuatMatrix& x0, const char* what) {
  ss.validate();
  if (x0.rows() != ss.order() || (x0.cols() != 1 && ss.order() != 0)) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " initial state has " +
                                                  std::to_string(x0.rows()) + " rows, system order is " +
                                                  std::to_string(ss.order()));
  }
}

}  // namespace

SignalSeq simulate(const StateSpace& ss, const QuatMatrix& x0, const SignalSeq& u, std::size_t steps) {
  check_state(ss, x0, "system");
  SignalSeq y;
  y.reserve(steps);
  QuatMatrix x = x0;
  for (std::size_t k = 0; k < steps; ++k) {
    const Quaternion uk = at(u, k);
    y.push_back(output_part(ss, x) + ss.J * uk);
    x = advance(ss, x, uk);
  }
  return y;
}

SignalSeq simulate_feedback(const StateSpace& plant, const StateSpace& controller, const QuatMatrix& x0_plant,
                            const QuatMatrix& x0_ctrl, const SignalSeq& v, const SignalSeq& w,
                            std::size_t steps) {
  check_state(plant, x0_plant, "plant");
  check_state(controller, x0_ctrl, "controller");
  const Quaternion loop = Quaternion(1.0) + plant.J * controller.J;
  if (loop.norm() <= kZeroThreshold) {
    throw Error(ErrorKind::IllPosed, "1 + J_plant J_controller is not invertible");
  }
  const Quaternion loop_inv = inverse(loop);

  SignalSeq y;
  y.reserve(steps);
  QuatMatrix xp = x0_plant, xc = x0_ctrl;
  for (std::size_t k = 0; k < steps; ++k) {
    const Quaternion hc = output_part(controller, xc);
    const Quaternion yk = loop_inv * (output_part(plant, xp) + plant.J * (at(v, k) - hc) + at(w, k));
    const Quaternion uk = at(v, k) - (hc + controller.J * yk);
    y.push_back(yk);
    xp = advance(plant, xp, uk);
    xc = advance(controller, xc, yk);
  }
  return y;
}

double uniform_pm1(StateRng& rng) {
  const std::uint64_t bits = rng() >> 11;
  return 2.0 * (static_cast<double>(bits) * 0x1.0p-53) - 1.0;
}

QuatMatrix random_state(std::size_t n, StateRng& rng) {
  QuatMatrix x(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = uniform_pm1(rng);
    const double a = uniform_pm1(rng);
    const double b = uniform_pm1(rng);
    const double c = uniform_pm1(rng);
    x(i, 0) = {w, a, b, c};
  }
  return x;
}

}  // namespace qctl
