// qctl: analysis and pole-placement design for quaternionic SISO systems.
//
// Exit codes: 0 success, 1 I/O or parse error, 2 domain error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qctl/design.hpp"
#include "qctl/error.hpp"
#include "qctl/io.hpp"
#include "qctl/sim.hpp"

namespace {

using namespace qctl;
using io::json;

struct Options {
  std::string plant, system, poly, controller;
  std::string a, b, c;
  std::string roots;
  std::string flavor = "minimal_x";
  std::string csv, svg, out;
  std::size_t steps = 40;
  std::uint64_t seed = 1;
  std::optional<double> tol;
  int digits = 5;
};

double tol_or(const Options& o, double fallback) { return o.tol.value_or(fallback); }

std::string fmt(double v, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

std::string class_text(const SimilarityClass& c0, int digits) {
  auto snap = [](double v) { return std::abs(v) < 1e-12 ? 0.0 : v; };
  const SimilarityClass c{snap(c0.re), snap(c0.im_norm)};
  return "(" + fmt(c.re, digits) + ", " + fmt(c.im_norm, digits) + ")  |lambda| = " + fmt(c.norm(), digits);
}

// A plant may be given as a state-space system or as a fraction document.
LeftFraction load_plant_fraction(const std::string& path, double tol) {
  const json doc = io::read_json(path);
  if (io::is_system_document(doc)) return tf_left(io::system_from_json(doc, path), tol);
  if (doc.is_object() && doc.value("kind", std::string("left")) == "right") {
    const RightFraction rf = io::right_fraction_from_json(doc, path);
    const LeftPair lp = right_to_left(rf.num, rf.den, tol);
    return make_left_fraction(lp.a_l, lp.b_l, tol);
  }
  const LeftFraction lf = io::left_fraction_from_json(doc, path);
  return make_left_fraction(lf.den, lf.num, tol);
}

// Systems may also come from a design report (its closed loop) or a fraction.
StateSpace load_system(const std::string& path, double tol) {
  const json doc = io::read_json(path);
  if (io::is_system_document(doc)) return io::system_from_json(doc, path);
  if (doc.is_object() && doc.contains("closed_loop")) return io::system_from_json(doc["closed_loop"], path + "#/closed_loop");
  if (doc.is_object() && doc.value("kind", std::string("left")) == "right") {
    return realize(io::right_fraction_from_json(doc, path), tol);
  }
  return realize(io::left_fraction_from_json(doc, path), tol);
}

QPoly load_poly(const std::string& path) { return io::poly_from_json(io::read_json(path), path); }

void print_zeros(const QPoly& a, double tol, int digits) {
  const ZeroReport rep = right_zeros(a, tol);
  std::cout << "polynomial: " << format(a, digits) << "\n";
  std::cout << "isolated zeros: " << rep.isolated.size() << "\n";
  for (const auto& z : rep.isolated) {
    std::cout << "  " << format(z.zero, digits) << "  class " << class_text(z.cls, digits)
              << (z.ill_conditioned ? "  [ill-conditioned]" : "") << "\n";
  }
  std::cout << "spherical classes: " << rep.spherical.size() << "\n";
  for (const auto& s : rep.spherical) std::cout << "  " << class_text(s, digits) << "\n";
}

int cmd_eig(const Options& o) {
  const std::string path = o.system.empty() ? o.plant : o.system;
  if (path.empty()) throw Error(ErrorKind::Parse, "eig needs --system or --plant");
  const StateSpace ss = load_system(path, tol_or(o, kCoeffTol));
  const RightSpectrum spec = right_eigenvalues(ss.F);
  std::cout << "order: " << ss.order() << "\n";
  std::cout << "right eigenvalue classes (re, |im|):\n";
  for (const auto& c : spec.classes) std::cout << "  " << class_text(c, o.digits) << "\n";
  std::cout << "spectral radius < 1: " << (spectral_radius_stable(ss.F, tol_or(o, 1e-9)) ? "yes" : "no") << "\n";
  return 0;
}

int cmd_tf(const Options& o) {
  const std::string path = o.system.empty() ? o.plant : o.system;
  if (path.empty()) throw Error(ErrorKind::Parse, "tf needs --system or --plant");
  const StateSpace ss = io::system_from_json(io::read_json(path), path);
  const double tol = tol_or(o, 1e-8);
  const LeftFraction lf = tf_left(ss, tol);
  const RightFraction rf = tf_right(ss, tol);
  std::cout << "left:  a_l = " << format(lf.den, o.digits) << "\n";
  std::cout << "       b_l = " << format(lf.num, o.digits) << "\n";
  std::cout << "right: a_r = " << format(rf.den, o.digits) << "\n";
  std::cout << "       b_r = " << format(rf.num, o.digits) << "\n";
  if (!o.out.empty()) {
    io::write_text(o.out, json{{"left", io::to_json(lf)}, {"right", io::to_json(rf)}}.dump(2) + "\n");
  }
  return 0;
}

int cmd_zeros(const Options& o) {
  if (o.poly.empty()) throw Error(ErrorKind::Parse, "zeros needs --poly");
  print_zeros(load_poly(o.poly), tol_or(o, kSimilarityTol), o.digits);
  return 0;
}

int cmd_stable(const Options& o) {
  if (!o.poly.empty()) {
    const QPoly a = load_poly(o.poly);
    const bool ok = is_stable(a, tol_or(o, 1e-9));
    std::cout << "all right zeros outside the closed unit ball: " << (ok ? "PASS" : "FAIL") << "\n";
    return 0;
  }
  const std::string path = o.system.empty() ? o.plant : o.system;
  if (path.empty()) throw Error(ErrorKind::Parse, "stable needs --poly, --system or --plant");
  const StateSpace ss = load_system(path, tol_or(o, kCoeffTol));
  const bool ok = spectral_radius_stable(ss.F, tol_or(o, 1e-9));
  std::cout << "all right eigenvalues inside the unit ball: " << (ok ? "PASS" : "FAIL") << "\n";
  return 0;
}

Flavor parse_flavor(const std::string& s) {
  if (s == "minimal_x") return Flavor::MinimalX;
  if (s == "minimal_y") return Flavor::MinimalY;
  if (s == "particular") return Flavor::Particular;
  throw Error(ErrorKind::Parse, "--flavor: expected minimal_x, minimal_y or particular, got '" + s + "'");
}

int cmd_solve(const Options& o) {
  if (o.a.empty() || o.b.empty() || o.c.empty()) throw Error(ErrorKind::Parse, "solve needs --a, --b and --c");
  const QPoly a = load_poly(o.a), b = load_poly(o.b), c = load_poly(o.c);
  const DiophantineSolution sol = solve_diophantine(a, b, c, parse_flavor(o.flavor), tol_or(o, kCoeffTol));
  const double residual = max_diff(a * sol.x + b * sol.y, c);
  std::cout << "flavor: " << to_string(sol.flavor) << "\n";
  std::cout << "x = " << format(sol.x, o.digits) << "\n";
  std::cout << "y = " << format(sol.y, o.digits) << "\n";
  std::cout << "kernel: b_r = " << format(sol.b_r, o.digits) << "\n";
  std::cout << "        a_r = " << format(sol.a_r, o.digits) << "\n";
  std::cout << "residual |a x + b y - c| = " << fmt(residual, 3) << "\n";
  if (!o.out.empty()) {
    const json doc{{"x", io::to_json(sol.x)}, {"y", io::to_json(sol.y)}, {"b_r", io::to_json(sol.b_r)},
                   {"a_r", io::to_json(sol.a_r)}, {"flavor", to_string(sol.flavor)}};
    io::write_text(o.out, doc.dump(2) + "\n");
  }
  return 0;
}

int cmd_design(const Options& o) {
  if (o.plant.empty() || o.roots.empty()) throw Error(ErrorKind::Parse, "design needs --plant and --roots");
  const double tol = tol_or(o, kCoeffTol);
  const LeftFraction plant = load_plant_fraction(o.plant, tol_or(o, 1e-8));
  const DesignResult r = place_poles(plant, io::parse_roots(o.roots), tol);
  const int d = o.digits;

  std::cout << "plant:      a_l = " << format(plant.den, d) << "\n";
  std::cout << "            b_l = " << format(plant.num, d) << "\n";
  std::cout << "target:     c   = " << format(r.c, d) << "\n";
  std::cout << "controller: p_r = " << format(r.controller.den, d) << "\n";
  std::cout << "            q_r = " << format(r.controller.num, d) << "\n";
  std::cout << "closed loop from w: g   = " << format(r.T_w.den, d) << "\n";
  std::cout << "                    h_w = " << format(r.T_w.num, d) << "\n";
  std::cout << "closed loop from v: h_v = " << format(r.T_v.num, d) << "\n";
  std::cout << "zeros of g:\n";
  for (const auto& z : right_zeros(r.T_w.den).isolated) std::cout << "  " << format(z.zero, d) << "\n";
  for (const auto& s : right_zeros(r.T_w.den).spherical) std::cout << "  sphere " << class_text(s, d) << "\n";
  std::cout << "closed-loop eigenvalue classes (re, |im|):\n";
  for (const auto& c : right_eigenvalues(r.closed_loop.F).classes) std::cout << "  " << class_text(c, d) << "\n";
  for (const auto& w : r.warnings) std::cout << "warning: " << w << "\n";
  std::cout << "stability: " << (r.stable ? "PASS" : "FAIL") << "\n";
  if (!o.out.empty()) io::write_text(o.out, io::to_json(r).dump(2) + "\n");
  return 0;
}

int cmd_simulate(const Options& o) {
  if (o.system.empty()) throw Error(ErrorKind::Parse, "simulate needs --system");
  if (o.steps == 0) throw Error(ErrorKind::Parse, "--steps must be at least 1");
  const double tol = tol_or(o, kCoeffTol);
  const StateSpace sys = load_system(o.system, tol);
  StateRng rng(o.seed);
  const QuatMatrix x0 = random_state(sys.order(), rng);

  SignalSeq y;
  if (o.controller.empty()) {
    y = simulate(sys, x0, {}, o.steps);
  } else {
    const StateSpace ctrl = load_system(o.controller, tol);
    const QuatMatrix xc = random_state(ctrl.order(), rng);
    y = simulate_feedback(sys, ctrl, x0, xc, {}, {}, o.steps);
  }

  double peak = 0.0;
  for (const auto& q : y) peak = std::max(peak, q.norm());
  std::cout << "order: " << sys.order() << ", steps: " << o.steps << ", seed: " << o.seed << "\n";
  std::cout << "x0 = [";
  for (std::size_t i = 0; i < x0.rows(); ++i) std::cout << (i ? "; " : "") << format(x0(i, 0), o.digits);
  std::cout << "]\n";
  std::cout << "|y(0)| = " << fmt(y.front().norm(), o.digits) << ", max |y| = " << fmt(peak, o.digits)
            << ", |y(" << o.steps - 1 << ")| = " << fmt(y.back().norm(), o.digits) << "\n";
  if (!o.csv.empty()) io::write_text(o.csv, io::signal_csv(y));
  if (!o.svg.empty()) io::write_text(o.svg, io::signal_svg(y, "output from a random initial state, seed " + std::to_string(o.seed)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quaternionic polynomial control toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;

  app.add_option("--tol", o.tol, "Override the tolerance of the underlying operation");
  app.add_option("--digits", o.digits, "Significant digits in reports")->check(CLI::Range(1, 17));

  auto* eig = app.add_subcommand("eig", "Right eigenvalue classes of F");
  auto* tf = app.add_subcommand("tf", "Left and right transfer fractions of a system");
  auto* zeros = app.add_subcommand("zeros", "Right zeros of a polynomial");
  auto* stable = app.add_subcommand("stable", "Stability of a polynomial or a system");
  auto* solve = app.add_subcommand("solve", "Solve a x + b y = c");
  auto* design = app.add_subcommand("design", "Pole placement for a plant");
  auto* sim = app.add_subcommand("simulate", "Response of a system from a random initial state");

  for (auto* sc : {eig, tf, stable}) {
    sc->add_option("--system", o.system, "System JSON");
    sc->add_option("--plant", o.plant, "Plant JSON");
  }
  zeros->add_option("--poly", o.poly, "Polynomial JSON")->required();
  stable->add_option("--poly", o.poly, "Polynomial JSON");
  tf->add_option("--out", o.out, "Write both fractions as JSON");
  solve->add_option("--a", o.a, "Polynomial JSON for a")->required();
  solve->add_option("--b", o.b, "Polynomial JSON for b")->required();
  solve->add_option("--c", o.c, "Polynomial JSON for c")->required();
  solve->add_option("--flavor", o.flavor, "minimal_x, minimal_y or particular");
  solve->add_option("--out", o.out, "Write the solution as JSON");
  design->add_option("--plant", o.plant, "Plant JSON: system or fraction")->required();
  design->add_option("--roots", o.roots, "Closed-loop zeros, e.g. \"3,4\" or \"(1,0,2,0),5\"")->required();
  design->add_option("--out", o.out, "Write the design report as JSON");
  sim->add_option("--system", o.system, "System, fraction or design report JSON")->required();
  sim->add_option("--controller", o.controller, "Close the loop with this controller");
  sim->add_option("--steps", o.steps, "Number of samples");
  sim->add_option("--seed", o.seed, "Seed of the initial-state generator");
  sim->add_option("--csv", o.csv, "Write samples as CSV");
  sim->add_option("--svg", o.svg, "Write a line chart as SVG");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*eig) return cmd_eig(o);
    if (*tf) return cmd_tf(o);
    if (*zeros) return cmd_zeros(o);
    if (*stable) return cmd_stable(o);
    if (*solve) return cmd_solve(o);
    if (*design) return cmd_design(o);
    if (*sim) return cmd_simulate(o);
  } catch (const qctl::Error& e) {
    std::cerr << "qctl: " << e.what() << "\n";
    return e.kind() == qctl::ErrorKind::Parse ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "qctl: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
