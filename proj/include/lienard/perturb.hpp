#pragma once

#include "lienard/orbit.hpp"
#include "lienard/systems.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lienard {

/// Forcing term omega(t, u, u') scaled by epsilon, added to the u'' equation:
/// u'' + phi u' + psi = epsilon * omega(t, u, u').
struct Perturbation {
  std::function<double(double, double, double)> omega;
  double epsilon = 0.0;
  std::string label;
};

/// omega(t, u, v) = sin(2t) v.  Forcing period pi in absolute time.
Perturbation sin2t_perturbation(double epsilon);

/// Same forcing with the clock rescaled: omega'(t, u, v) = omega(t/tau, u, v).
Perturbation with_rescaled_clock(const Perturbation& pert, double tau);

/// Nonautonomous field (-phi x1 - psi + eps*omega(t, x2, x1), x1).
/// Requires |epsilon| < 1.
Rhs forced_rhs(const GeneralizedLienard& sys, const Perturbation& pert);

struct RecurrenceResult {
  double tau_estimate = 0.0;  ///< first same-direction section-return interval
  double drift = 0.0;         ///< max full-state distance from x0 over the returns
  bool periodic = false;      ///< drift <= periodicity tolerance
  int n_returns = 0;
};

/// Integrate from (t0, x0) on the section and record n_returns admissible
/// rising crossings.  tau_estimate is the first return interval (this is the
/// observable that reproduces the period table); drift is the max distance
/// of the recorded crossing states from x0.
RecurrenceResult estimate_recurrence(const Rhs& rhs, const State& x0,
                                     double t0, const StepperConfig& cfg,
                                     double periodicity_tol, int n_returns);

struct SweepRow {
  double epsilon = 0.0;
  std::optional<double> tau;
  double drift = 0.0;
  bool periodic = false;
  std::string error;  ///< empty when the row succeeded
};

using OmegaFamily = std::function<Perturbation(double)>;

struct SweepOptions {
  StepperConfig stepper;
  double anchor_a = 0.0;  ///< unperturbed orbit anchor; rows start at (0, a)
  double periodicity_tol = 1e-3;
  int n_returns = 10;
};

/// One recurrence row per epsilon, seeded from the unperturbed anchor at
/// t = 0.  Rows are emitted sorted by epsilon; per-row failures are recorded
/// in the row and the sweep continues.
std::vector<SweepRow> sweep_epsilon(const GeneralizedLienard& sys,
                                    const OmegaFamily& family,
                                    std::vector<double> eps_list,
                                    const SweepOptions& opts);

struct LossScan {
  std::optional<double> first_loss;  ///< smallest epsilon flagged non-periodic
  bool monotone = true;  ///< false when a periodic row follows a non-periodic one
};

LossScan detect_periodicity_loss(const std::vector<SweepRow>& rows);

/// CSV with header epsilon,tau,drift,periodic; tau printed with 4 decimals
/// (empty on row failure).
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace lienard
