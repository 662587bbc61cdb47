#pragma once

#include "lienard/types.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

namespace lienard {

enum class StepMethod { rk4_fixed, rk45_adaptive };

struct StepperConfig {
  StepMethod method = StepMethod::rk4_fixed;
  double step = 1e-4;   ///< fixed-mode step; adaptive mode uses it as the initial step
  double rtol = 1e-9;
  double atol = 1e-12;
  double t_max = 50.0;  ///< integration horizon guard for section returns
};

/// Throws std::invalid_argument on out-of-range settings.
void validate(const StepperConfig& cfg);

using Rhs = std::function<State(double, const State&)>;
using Guard = std::function<double(const State&)>;

struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;

  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }
};

enum class CrossingDirection { rising, falling, any };

struct Event {
  double t = 0.0;
  State state = State::Zero();
  int direction = 0;           ///< +1 rising, -1 falling
  std::size_t left_index = 0;  ///< sample index of the bracketing step's left endpoint
};

inline constexpr double kGuardTol = 1e-12;
inline constexpr double kBlowupNorm = 1e8;

/// Integrate rhs from x0 over [t0, t1], recording every accepted step.
/// Fixed mode takes ceil((t1-t0)/step) uniform steps with the last one
/// shortened to land on t1 exactly.
Trajectory integrate(const Rhs& rhs, const State& x0, double t0, double t1,
                     const StepperConfig& cfg);

/// First sign change of guard after start_index with matching direction,
/// refined by bisection on re-integration across the bracketing step until
/// |guard| <= kGuardTol.  The refined state lies on the outgoing side of the
/// crossing.  Returns nullopt when no crossing exists before trajectory end.
std::optional<Event> find_crossing(const Rhs& rhs, const Trajectory& traj,
                                   const Guard& guard,
                                   CrossingDirection direction,
                                   std::size_t start_index = 0);

/// Quadrature of sampled data: composite Simpson over runs of equal-width
/// panels, trapezoid for a leftover or unequal final panel.
double integrate_samples(const std::vector<double>& times,
                         const std::vector<double>& values);

namespace detail {

template <class Vec, class F>
Vec rk4_step(const F& f, double t, const Vec& y, double h) {
  const Vec k1 = f(t, y);
  const Vec k2 = f(t + 0.5 * h, Vec(y + 0.5 * h * k1));
  const Vec k3 = f(t + 0.5 * h, Vec(y + 0.5 * h * k2));
  const Vec k4 = f(t + h, Vec(y + h * k3));
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <class Vec>
void check_step(double t_prev, double t, const Vec& y) {
  if (!y.allFinite()) {
    throw EvaluationError("non-finite state at t=" + std::to_string(t),
                          State(y(0), y(1)));
  }
  if (y.norm() > kBlowupNorm) {
    throw DivergenceError("trajectory blow-up at t=" + std::to_string(t),
                          t_prev);
  }
}

/// Fixed-step RK4 over [t0, t1]; calls record(t, y) after every step.
template <class Vec, class F, class Cb>
void rk4_fixed_span(const F& f, Vec y, double t0, double t1, double step,
                    Cb&& record) {
  const long n = static_cast<long>(std::ceil((t1 - t0) / step));
  double t = t0;
  for (long i = 0; i < n; ++i) {
    const double t_next = (i + 1 == n) ? t1 : t0 + static_cast<double>(i + 1) * step;
    y = rk4_step(f, t, y, t_next - t);
    check_step(t, t_next, y);
    t = t_next;
    record(t, y);
  }
}

/// Embedded Fehlberg 4(5) with standard step control; calls record on every
/// accepted step.  The 5th-order solution is propagated.
template <class Vec, class F, class Cb>
void rkf45_span(const F& f, Vec y, double t0, double t1, double step,
                double rtol, double atol, Cb&& record) {
  double t = t0;
  double h = std::min(step, t1 - t0);
  const double h_min = 1e-14 * (t1 - t0);
  int rejected_in_a_row = 0;
  while (t < t1) {
    h = std::min(h, t1 - t);
    const Vec k1 = f(t, y);
    const Vec k2 = f(t + h / 4.0, Vec(y + h * (k1 / 4.0)));
    const Vec k3 = f(t + 3.0 * h / 8.0,
                     Vec(y + h * (3.0 / 32.0 * k1 + 9.0 / 32.0 * k2)));
    const Vec k4 =
        f(t + 12.0 * h / 13.0,
          Vec(y + h * (1932.0 / 2197.0 * k1 - 7200.0 / 2197.0 * k2 +
                       7296.0 / 2197.0 * k3)));
    const Vec k5 = f(t + h, Vec(y + h * (439.0 / 216.0 * k1 - 8.0 * k2 +
                                         3680.0 / 513.0 * k3 -
                                         845.0 / 4104.0 * k4)));
    const Vec k6 =
        f(t + h / 2.0,
          Vec(y + h * (-8.0 / 27.0 * k1 + 2.0 * k2 - 3544.0 / 2565.0 * k3 +
                       1859.0 / 4104.0 * k4 - 11.0 / 40.0 * k5)));
    const Vec y5 = y + h * (16.0 / 135.0 * k1 + 6656.0 / 12825.0 * k3 +
                            28561.0 / 56430.0 * k4 - 9.0 / 50.0 * k5 +
                            2.0 / 55.0 * k6);
    const Vec y4 = y + h * (25.0 / 216.0 * k1 + 1408.0 / 2565.0 * k3 +
                            2197.0 / 4104.0 * k4 - 1.0 / 5.0 * k5);
    double err = 0.0;
    for (int i = 0; i < y.size(); ++i) {
      const double sc =
          atol + rtol * std::max(std::abs(y(i)), std::abs(y5(i)));
      const double e = (y5(i) - y4(i)) / sc;
      err += e * e;
    }
    err = std::sqrt(err / static_cast<double>(y.size()));
    if (err <= 1.0 || h <= h_min) {
      check_step(t, t + h, y5);
      t += h;
      y = y5;
      record(t, y);
      rejected_in_a_row = 0;
    } else if (++rejected_in_a_row > 200) {
      throw ConvergenceError("adaptive step control stalled at t=" +
                                 std::to_string(t),
                             rejected_in_a_row);
    }
    const double factor =
        std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 5.0);
    h = std::max(h * factor, h_min);
  }
}

}  // namespace detail
}  // namespace lienard
