// Command-line front end: locate periodic orbits, compute multipliers and
// stability criteria, verify existence/uniqueness hypotheses, and sweep the
// forcing amplitude, writing CSV tables and SVG phase portraits.

#include <CLI11.hpp>

#include "lienard/conditions.hpp"
#include "lienard/config.hpp"
#include "lienard/floquet.hpp"
#include "lienard/orbit.hpp"
#include "lienard/perturb.hpp"
#include "lienard/plot.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

namespace fs = std::filesystem;
using namespace lienard;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitHypothesis = 3;

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::optional<double> a_guess;
  std::optional<double> step;
  std::vector<double> epsilon;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON config file");
  cmd->add_option("--out", args.out_dir, "output directory (overrides config)");
  cmd->add_option("--a-guess", args.a_guess, "orbit seed override");
  cmd->add_option("--step", args.step, "fixed integration step override");
  cmd->add_option("--epsilon", args.epsilon,
                  "sweep epsilon values (overrides config list)");
}

RunConfig resolve(const CommonArgs& args) {
  RunConfig cfg = args.config_path.empty() ? RunConfig{}
                                           : load_config(args.config_path);
  if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
  if (args.a_guess) {
    if (!(*args.a_guess < 0.0)) throw ConfigError("--a-guess must be negative");
    cfg.a_guess = *args.a_guess;
  }
  if (args.step) {
    if (!(*args.step > 0.0)) throw ConfigError("--step must be positive");
    cfg.stepper.step = *args.step;
  }
  if (!args.epsilon.empty()) cfg.sweep_epsilon = args.epsilon;
  return cfg;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << content;
}

GeneralizedLienard make_configured_system(const RunConfig& cfg) {
  std::vector<std::string> warnings;
  GeneralizedLienard sys = build_system(cfg.system, warnings);
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
  return sys;
}

PeriodicOrbit locate_orbit(const GeneralizedLienard& sys,
                           const RunConfig& cfg) {
  return find_periodic_orbit(sys, cfg.a_guess, cfg.orbit_tol, cfg.max_iter,
                             cfg.stepper);
}

int cmd_orbit(const CommonArgs& args) {
  const RunConfig cfg = resolve(args);
  const GeneralizedLienard sys = make_configured_system(cfg);
  PeriodicOrbit orbit;
  try {
    orbit = locate_orbit(sys, cfg);
  } catch (const std::exception& e) {
    std::cerr << "orbit search failed: " << e.what() << "\n";
    return kExitNumerical;
  }
  fs::create_directories(cfg.out_dir);
  {
    std::ofstream os(fs::path(cfg.out_dir) / "orbit.csv", std::ios::binary);
    write_orbit_csv(os, orbit.trajectory);
  }
  write_file(fs::path(cfg.out_dir) / "orbit.svg",
             render_phase_svg(orbit.trajectory, cfg.plot));
  char summary[256];
  std::snprintf(summary, sizeof(summary),
                "a_star: %.7g\ntau0: %.7g\nclosure: %.3g\n", orbit.a,
                orbit.tau0,
                (orbit.trajectory.states.back() - orbit.trajectory.states.front())
                    .norm());
  write_file(fs::path(cfg.out_dir) / "summary.txt", summary);
  std::cout << summary;
  return kExitOk;
}

int cmd_floquet(const CommonArgs& args) {
  const RunConfig cfg = resolve(args);
  const GeneralizedLienard sys = make_configured_system(cfg);
  PeriodicOrbit orbit;
  try {
    orbit = locate_orbit(sys, cfg);
  } catch (const std::exception& e) {
    std::cerr << "orbit search failed: " << e.what() << "\n";
    return kExitNumerical;
  }
  const Monodromy mono = monodromy(sys, orbit, cfg.stepper);
  const StabilityReport rep = stability_report(sys, orbit, cfg.stepper);
  const double psi_a = sys.psi(orbit.a);
  const Matrix2 j = jacobian_J(mono, psi_a);

  std::ostringstream report;
  report << to_text(rep);
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "tau0: %.7g\n"
                "unit_residual: %.3g\n"
                "complex_pair: %s\n"
                "pi_tau0: %.7g\n"
                "det_J: %.7g\n"
                "nondegenerate: %s\n",
                orbit.tau0, mono.unit_residual,
                mono.complex_pair ? "true" : "false", pi_tau0(mono, psi_a),
                j.determinant(), nondegenerate(j) ? "true" : "false");
  report << buf;
  if (!cfg.system.is_polynomial && cfg.system.builtin == "example6") {
    std::snprintf(buf, sizeof(buf),
                  "criterion_polynomial: %.7g\ncriterion_example: %.7g\n",
                  criterion_polynomial(example_equation(), orbit),
                  criterion_example(orbit));
    report << buf;
  }

  fs::create_directories(cfg.out_dir);
  write_file(fs::path(cfg.out_dir) / "stability.csv",
             stability_csv_header() + "\n" + to_csv_row(rep) + "\n");
  write_file(fs::path(cfg.out_dir) / "stability.txt", report.str());
  std::cout << report.str();
  return kExitOk;
}

int cmd_conditions(const CommonArgs& args) {
  const RunConfig cfg = resolve(args);
  const GeneralizedLienard sys = make_configured_system(cfg);
  const CLSReport cls = check_cls(sys, cfg.grid);
  const DeCastroReport dc = check_de_castro(sys, cfg.grid);
  std::string report =
      "[levinson-smith]\n" + to_text(cls) + "[de-castro]\n" + to_text(dc);
  fs::create_directories(cfg.out_dir);
  write_file(fs::path(cfg.out_dir) / "conditions.txt", report);
  std::cout << report;
  return (cls.all_ok() && dc.all_ok()) ? kExitOk : kExitHypothesis;
}

std::string eps_tag(double eps) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", eps);
  return buf;
}

int cmd_sweep(const CommonArgs& args) {
  const RunConfig cfg = resolve(args);
  if (cfg.sweep_epsilon.empty()) {
    std::cerr << "sweep requires a non-empty epsilon list (config sweep.epsilon "
                 "or --epsilon)\n";
    return kExitConfig;
  }
  const GeneralizedLienard sys = make_configured_system(cfg);
  PeriodicOrbit orbit;
  try {
    orbit = locate_orbit(sys, cfg);
  } catch (const std::exception& e) {
    std::cerr << "orbit search failed: " << e.what() << "\n";
    return kExitNumerical;
  }

  SweepOptions opts;
  opts.stepper = cfg.stepper;
  opts.anchor_a = orbit.a;
  opts.periodicity_tol = cfg.periodicity_tol;
  opts.n_returns = cfg.n_returns;
  const OmegaFamily family = [](double e) { return sin2t_perturbation(e); };
  const std::vector<SweepRow> rows =
      sweep_epsilon(sys, family, cfg.sweep_epsilon, opts);

  fs::create_directories(cfg.out_dir);
  {
    std::ofstream os(fs::path(cfg.out_dir) / "sweep.csv", std::ios::binary);
    write_sweep_csv(os, rows);
  }

  // per-epsilon phase portraits over the measured span
  std::size_t failed = 0;
  for (const SweepRow& row : rows) {
    if (!row.error.empty()) {
      std::cerr << "row epsilon=" << row.epsilon << " failed: " << row.error
                << "\n";
      ++failed;
      continue;
    }
    const Rhs rhs = forced_rhs(sys, sin2t_perturbation(row.epsilon));
    const double span = orbit.tau0 * (cfg.n_returns + 1);
    const Trajectory traj = integrate(rhs, make_state(0.0, orbit.a), 0.0,
                                      span, cfg.stepper);
    write_file(fs::path(cfg.out_dir) /
                   ("sweep_eps_" + eps_tag(row.epsilon) + ".svg"),
               render_phase_svg(traj, cfg.plot));
  }

  char line[160];
  for (const SweepRow& row : rows) {
    if (row.tau)
      std::snprintf(line, sizeof(line),
                    "epsilon=%.10g tau=%.4f drift=%.3e periodic=%s\n",
                    row.epsilon, *row.tau, row.drift,
                    row.periodic ? "true" : "false");
    else
      std::snprintf(line, sizeof(line), "epsilon=%.10g failed: %s\n",
                    row.epsilon, row.error.c_str());
    std::cout << line;
  }
  const LossScan loss = detect_periodicity_loss(rows);
  if (loss.first_loss) {
    std::snprintf(line, sizeof(line), "periodicity lost from epsilon=%.10g%s\n",
                  *loss.first_loss,
                  loss.monotone ? "" : " (non-monotone flags)");
    std::cout << line;
  } else {
    std::cout << "all rows periodic\n";
  }
  return failed == rows.size() ? kExitNumerical : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"periodic orbits, multipliers and forced-response sweeps for "
               "generalized Lienard equations"};
  app.require_subcommand(1);

  CommonArgs orbit_args, floquet_args, conditions_args, sweep_args;
  CLI::App* orbit_cmd =
      app.add_subcommand("orbit", "locate the periodic orbit and export it");
  add_common(orbit_cmd, orbit_args);
  CLI::App* floquet_cmd = app.add_subcommand(
      "floquet", "multipliers, stability criterion and J(tau0)");
  add_common(floquet_cmd, floquet_args);
  CLI::App* conditions_cmd = app.add_subcommand(
      "conditions", "Levinson-Smith and De Castro hypothesis checks");
  add_common(conditions_cmd, conditions_args);
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "forcing-amplitude sweep with recurrence table");
  add_common(sweep_cmd, sweep_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (orbit_cmd->parsed()) return cmd_orbit(orbit_args);
    if (floquet_cmd->parsed()) return cmd_floquet(floquet_args);
    if (conditions_cmd->parsed()) return cmd_conditions(conditions_args);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}
