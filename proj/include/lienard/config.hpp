#pragma once

#include "lienard/conditions.hpp"
#include "lienard/integrate.hpp"
#include "lienard/plot.hpp"
#include "lienard/systems.hpp"

#include <string>
#include <vector>

namespace lienard {

/// Either a builtin name ("example6", "harmonic", "vanderpol mu=<v>") or an
/// explicit polynomial coefficient list.
struct SystemSpec {
  std::string builtin = "example6";
  PolynomialLienard polynomial;
  bool is_polynomial = false;
};

struct RunConfig {
  SystemSpec system;
  StepperConfig stepper;
  double a_guess = -0.5;
  double orbit_tol = 1e-9;
  int max_iter = 50;
  std::vector<double> sweep_epsilon;
  std::string perturbation = "sin2t";
  double periodicity_tol = 1e-3;
  int n_returns = 10;
  Grid grid;
  std::string out_dir = "out";
  PlotSpec plot;
};

/// Parse and validate a JSON config document.  Unknown keys are rejected
/// with a ConfigError naming the offending key.
RunConfig parse_config(const std::string& json_text);

RunConfig load_config(const std::string& path);

/// Instantiate the configured system; validation warnings (e.g. an even
/// last coefficient index) are appended to `warnings`.
GeneralizedLienard build_system(const SystemSpec& spec,
                                std::vector<std::string>& warnings);

}  // namespace lienard
