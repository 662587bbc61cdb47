#include "lienard/integrate.hpp"

#include <cmath>
#include <stdexcept>

namespace lienard {

void validate(const StepperConfig& cfg) {
  if (!(cfg.step > 0.0))
    throw std::invalid_argument("stepper: step must be > 0");
  if (!(cfg.rtol > 0.0 && cfg.rtol < 1.0))
    throw std::invalid_argument("stepper: rtol must lie in (0, 1)");
  if (!(cfg.atol > 0.0 && cfg.atol < 1.0))
    throw std::invalid_argument("stepper: atol must lie in (0, 1)");
  if (!(cfg.t_max > 0.0) || !std::isfinite(cfg.t_max))
    throw std::invalid_argument("stepper: t_max must be finite and > 0");
}

Trajectory integrate(const Rhs& rhs, const State& x0, double t0, double t1,
                     const StepperConfig& cfg) {
  validate(cfg);
  if (!(t1 > t0)) throw std::invalid_argument("integrate: requires t1 > t0");
  if (!is_finite(x0))
    throw EvaluationError("integrate: non-finite initial state", x0);

  Trajectory traj;
  if (cfg.method == StepMethod::rk4_fixed) {
    const auto n = static_cast<std::size_t>(std::ceil((t1 - t0) / cfg.step));
    traj.times.reserve(n + 1);
    traj.states.reserve(n + 1);
  }
  traj.times.push_back(t0);
  traj.states.push_back(x0);
  auto record = [&traj](double t, const State& x) {
    traj.times.push_back(t);
    traj.states.push_back(x);
  };
  if (cfg.method == StepMethod::rk4_fixed) {
    detail::rk4_fixed_span(rhs, x0, t0, t1, cfg.step, record);
  } else {
    detail::rkf45_span(rhs, x0, t0, t1, cfg.step, cfg.rtol, cfg.atol, record);
  }
  return traj;
}

namespace {

// Bisection across [0, h] from the left endpoint, one RK4 substep per probe.
// The returned event state sits on the outgoing side of the crossing.
Event refine_crossing(const Rhs& rhs, double t_left, const State& x_left,
                      double h, const Guard& guard, bool rising,
                      std::size_t left_index) {
  double lo = 0.0;
  double hi = h;
  State best = detail::rk4_step(rhs, t_left, x_left, h);
  double dt_best = h;
  for (int iter = 0; iter < 64; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval exhausted in double precision
    const State probe = detail::rk4_step(rhs, t_left, x_left, mid);
    const double g = guard(probe);
    const bool incoming = rising ? (g < 0.0) : (g > 0.0);
    if (incoming) {
      lo = mid;
    } else {
      hi = mid;
      best = probe;
      dt_best = mid;
      if (std::abs(g) <= kGuardTol) break;
    }
  }
  Event ev;
  ev.t = t_left + dt_best;
  ev.state = best;
  ev.direction = rising ? +1 : -1;
  ev.left_index = left_index;
  return ev;
}

}  // namespace

std::optional<Event> find_crossing(const Rhs& rhs, const Trajectory& traj,
                                   const Guard& guard,
                                   CrossingDirection direction,
                                   std::size_t start_index) {
  if (traj.size() < 2 || start_index + 1 >= traj.size()) return std::nullopt;
  double g_prev = guard(traj.states[start_index]);
  for (std::size_t i = start_index; i + 1 < traj.size(); ++i) {
    const double g_next = guard(traj.states[i + 1]);
    const bool rising = g_prev < 0.0 && g_next >= 0.0;
    const bool falling = g_prev > 0.0 && g_next <= 0.0;
    const bool match =
        (direction == CrossingDirection::rising && rising) ||
        (direction == CrossingDirection::falling && falling) ||
        (direction == CrossingDirection::any && (rising || falling));
    if (match) {
      return refine_crossing(rhs, traj.times[i], traj.states[i],
                             traj.times[i + 1] - traj.times[i], guard, rising,
                             i);
    }
    g_prev = g_next;
  }
  return std::nullopt;
}

double integrate_samples(const std::vector<double>& times,
                         const std::vector<double>& values) {
  if (times.size() != values.size())
    throw std::invalid_argument("integrate_samples: length mismatch");
  const std::size_t n = times.size();
  double total = 0.0;
  std::size_t i = 0;
  while (i + 1 < n) {
    const double h1 = times[i + 1] - times[i];
    if (i + 2 < n) {
      const double h2 = times[i + 2] - times[i + 1];
      if (std::abs(h2 - h1) < 1e-12 * h1) {
        total += h1 / 3.0 * (values[i] + 4.0 * values[i + 1] + values[i + 2]);
        i += 2;
        continue;
      }
    }
    total += 0.5 * h1 * (values[i] + values[i + 1]);
    i += 1;
  }
  return total;
}

}  // namespace lienard
