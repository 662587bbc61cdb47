#pragma once

#include "lienard/integrate.hpp"
#include "lienard/systems.hpp"

#include <iosfwd>
#include <optional>

namespace lienard {

/// Poincare section used throughout: guard x1 = u' crossing zero while
/// rising, restricted to the half-plane x2 = u < 0.  Anchors (0, a) with
/// a < 0 sit exactly on it.
struct PoincareSection {
  double guard(const State& x) const { return uprime(x); }
  bool admissible(const State& x) const { return upos(x) < 0.0; }
};

struct PeriodicOrbit {
  double a = 0.0;         ///< section anchor u(0) < 0
  double tau0 = 0.0;      ///< least period
  Trajectory trajectory;  ///< one period, densely sampled from (0, a)
};

struct ReturnResult {
  double a_next = 0.0;
  double t_return = 0.0;
  State state = State::Zero();
};

/// Next admissible same-direction section crossing of a (possibly
/// nonautonomous) field, integrating from (t0, x0) for at most `window`
/// time units.  A crossing only counts once the guard has dipped below
/// -1e-6 since the previous one, so the tiny residual at a refined event
/// cannot re-trigger.
std::optional<Event> next_section_return(const Rhs& rhs, double t0,
                                         const State& x0,
                                         const StepperConfig& cfg,
                                         double window);

/// One application of the section return map: integrate from (0, a) to the
/// first admissible rising crossing.  Throws NoReturnError if the trajectory
/// leaves without recrossing within cfg.t_max.
ReturnResult return_map(const GeneralizedLienard& sys, double a,
                        const StepperConfig& cfg);

/// Secant iteration on g(a) = return_map(a) - a down to |g| <= tol, then one
/// dense pass over [0, tau0].  a_guess must be negative.
PeriodicOrbit find_periodic_orbit(const GeneralizedLienard& sys,
                                  double a_guess, double tol, int max_iter,
                                  const StepperConfig& cfg);

double period(const PeriodicOrbit& orbit);

/// CSV with header t,u,u_prime; full double precision, LF endings.
void write_orbit_csv(std::ostream& os, const Trajectory& traj);

}  // namespace lienard
