#include "lienard/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace lienard {

Perturbation sin2t_perturbation(double epsilon) {
  Perturbation p;
  p.omega = [](double t, double, double v) { return std::sin(2.0 * t) * v; };
  p.epsilon = epsilon;
  p.label = "sin2t";
  return p;
}

Perturbation with_rescaled_clock(const Perturbation& pert, double tau) {
  if (!(tau > 0.0))
    throw std::invalid_argument("with_rescaled_clock: tau must be > 0");
  Perturbation out = pert;
  const auto omega = pert.omega;
  out.omega = [omega, tau](double t, double u, double v) {
    return omega(t / tau, u, v);
  };
  out.label = pert.label + "/tau";
  return out;
}

Rhs forced_rhs(const GeneralizedLienard& sys, const Perturbation& pert) {
  if (!(std::abs(pert.epsilon) < 1.0))
    throw std::invalid_argument("forced_rhs: requires |epsilon| < 1");
  const double eps = pert.epsilon;
  const auto omega = pert.omega;
  return [&sys, omega, eps](double t, const State& x) {
    State r = eval_rhs(sys, x);
    r(0) += eps * omega(t, upos(x), uprime(x));
    if (!is_finite(r))
      throw EvaluationError("forced_rhs: non-finite result", x);
    return r;
  };
}

RecurrenceResult estimate_recurrence(const Rhs& rhs, const State& x0,
                                     double t0, const StepperConfig& cfg,
                                     double periodicity_tol, int n_returns) {
  if (n_returns < 1)
    throw std::invalid_argument("estimate_recurrence: n_returns must be >= 1");
  if (std::abs(uprime(x0)) > 1e-9 || !(upos(x0) < 0.0))
    throw std::invalid_argument(
        "estimate_recurrence: x0 must lie on the section (u' = 0, u < 0)");

  RecurrenceResult res;
  res.n_returns = n_returns;
  double t = t0;
  State x = x0;
  for (int k = 0; k < n_returns; ++k) {
    const auto ev = next_section_return(rhs, t, x, cfg, cfg.t_max);
    if (!ev)
      throw NoReturnError("estimate_recurrence: no return after t=" +
                              std::to_string(t),
                          cfg.t_max);
    if (k == 0) res.tau_estimate = ev->t - t0;
    res.drift = std::max(res.drift, (ev->state - x0).norm());
    t = ev->t;
    x = ev->state;
  }
  res.periodic = res.drift <= periodicity_tol;
  return res;
}

std::vector<SweepRow> sweep_epsilon(const GeneralizedLienard& sys,
                                    const OmegaFamily& family,
                                    std::vector<double> eps_list,
                                    const SweepOptions& opts) {
  for (double e : eps_list)
    if (!std::isfinite(e))
      throw std::invalid_argument("sweep_epsilon: non-finite epsilon");
  std::sort(eps_list.begin(), eps_list.end());

  std::vector<SweepRow> rows;
  rows.reserve(eps_list.size());
  const State anchor = make_state(0.0, opts.anchor_a);
  for (double eps : eps_list) {
    SweepRow row;
    row.epsilon = eps;
    try {
      const Rhs rhs = forced_rhs(sys, family(eps));
      const RecurrenceResult r = estimate_recurrence(
          rhs, anchor, 0.0, opts.stepper, opts.periodicity_tol,
          opts.n_returns);
      row.tau = r.tau_estimate;
      row.drift = r.drift;
      row.periodic = r.periodic;
    } catch (const std::exception& e) {
      row.error = e.what();
      row.periodic = false;
      row.drift = std::numeric_limits<double>::quiet_NaN();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

LossScan detect_periodicity_loss(const std::vector<SweepRow>& rows) {
  LossScan scan;
  bool lost = false;
  for (const SweepRow& row : rows) {
    if (!row.periodic) {
      if (!scan.first_loss) scan.first_loss = row.epsilon;
      lost = true;
    } else if (lost) {
      scan.monotone = false;  // periodic row after a loss
    }
  }
  return scan;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "epsilon,tau,drift,periodic\n";
  char buf[160];
  for (const SweepRow& row : rows) {
    if (row.tau) {
      std::snprintf(buf, sizeof(buf), "%.10g,%.4f,%.6e,%s\n", row.epsilon,
                    *row.tau, row.drift, row.periodic ? "true" : "false");
    } else {
      std::snprintf(buf, sizeof(buf), "%.10g,,%.6e,%s\n", row.epsilon,
                    row.drift, row.periodic ? "true" : "false");
    }
    os << buf;
  }
}

}  // namespace lienard
