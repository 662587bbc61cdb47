#include "lienard/orbit.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <tuple>
#include <utility>

namespace lienard {

namespace {

constexpr double kArmThreshold = -1e-6;
constexpr double kChunk = 12.0;  // integration window per scan chunk

Rhs autonomous_rhs(const GeneralizedLienard& sys) {
  return [&sys](double, const State& x) { return eval_rhs(sys, x); };
}

}  // namespace

std::optional<Event> next_section_return(const Rhs& rhs, double t0,
                                         const State& x0,
                                         const StepperConfig& cfg,
                                         double window) {
  const PoincareSection section;
  const Guard guard = [&section](const State& x) { return section.guard(x); };
  double t = t0;
  State x = x0;
  const double t_end = t0 + window;
  bool armed = section.guard(x0) < kArmThreshold;
  while (t < t_end) {
    const double t_next = std::min(t + kChunk, t_end);
    if (!(t_next > t)) break;
    const Trajectory traj = integrate(rhs, x, t, t_next, cfg);
    std::size_t idx = 0;
    while (true) {
      const auto ev =
          find_crossing(rhs, traj, guard, CrossingDirection::rising, idx);
      if (!ev) break;
      // arm on the guard dip preceding the candidate crossing
      for (std::size_t i = idx; i <= ev->left_index && !armed; ++i)
        armed = guard(traj.states[i]) < kArmThreshold;
      if (armed && section.admissible(ev->state)) return ev;
      idx = ev->left_index + 1;
    }
    for (std::size_t i = idx; i < traj.size() && !armed; ++i)
      armed = guard(traj.states[i]) < kArmThreshold;
    t = traj.times.back();
    x = traj.states.back();
  }
  return std::nullopt;
}

ReturnResult return_map(const GeneralizedLienard& sys, double a,
                        const StepperConfig& cfg) {
  if (!(a < 0.0))
    throw std::invalid_argument("return_map: anchor a must be negative");
  const Rhs rhs = autonomous_rhs(sys);
  const auto ev = next_section_return(rhs, 0.0, make_state(0.0, a), cfg,
                                      cfg.t_max);
  if (!ev)
    throw NoReturnError("no section return from a=" + std::to_string(a) +
                            " within t_max=" + std::to_string(cfg.t_max),
                        cfg.t_max);
  return ReturnResult{upos(ev->state), ev->t, ev->state};
}

PeriodicOrbit find_periodic_orbit(const GeneralizedLienard& sys,
                                  double a_guess, double tol, int max_iter,
                                  const StepperConfig& cfg) {
  if (!(a_guess < 0.0))
    throw std::invalid_argument(
        "find_periodic_orbit: a_guess must be negative");

  StepperConfig local = cfg;
  auto g_of = [&](double a) {
    const ReturnResult r = return_map(sys, a, local);
    // 10x the best period estimate bounds later return searches
    local.t_max = std::min(cfg.t_max, 10.0 * r.t_return);
    return std::pair<double, double>(r.a_next - a, r.t_return);
  };

  double a0 = a_guess;
  auto [g0, t0] = g_of(a0);
  double a_star = a0;
  double tau = t0;
  if (std::abs(g0) > tol) {
    double a1 = a_guess * 1.05;
    auto [g1, t1] = g_of(a1);
    tau = t1;
    int iter = 0;
    while (std::abs(g1) > tol) {
      if (++iter > max_iter)
        throw ConvergenceError(
            "find_periodic_orbit: secant did not converge", max_iter);
      if (g1 == g0)
        throw ConvergenceError(
            "find_periodic_orbit: degenerate secant update", iter);
      double a2 = a1 - g1 * (a1 - a0) / (g1 - g0);
      if (!(a2 < 0.0)) a2 = 0.5 * a1;  // keep iterates in the a < 0 domain
      a0 = a1;
      g0 = g1;
      a1 = a2;
      std::tie(g1, t1) = g_of(a1);
      tau = t1;
    }
    a_star = a1;
  }

  PeriodicOrbit orbit;
  orbit.a = a_star;
  orbit.tau0 = tau;
  orbit.trajectory =
      integrate(autonomous_rhs(sys), make_state(0.0, a_star), 0.0, tau, cfg);
  const double closure =
      (orbit.trajectory.states.back() - orbit.trajectory.states.front())
          .norm();
  if (closure > 1e-8)
    throw ConvergenceError("find_periodic_orbit: orbit closure " +
                               std::to_string(closure) +
                               " exceeds 1e-8; tighten tol",
                           max_iter);
  return orbit;
}

double period(const PeriodicOrbit& orbit) { return orbit.tau0; }

void write_orbit_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,u,u_prime\n";
  char line[128];
  for (std::size_t i = 0; i < traj.size(); ++i) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g\n", traj.times[i],
                  upos(traj.states[i]), uprime(traj.states[i]));
    os << line;
  }
}

}  // namespace lienard
