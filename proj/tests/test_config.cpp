#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lienard/config.hpp"

using namespace lienard;

TEST_CASE("defaults with an empty document") {
  const RunConfig cfg = parse_config("{}");
  CHECK(cfg.system.builtin == "example6");
  CHECK(!cfg.system.is_polynomial);
  CHECK(cfg.stepper.method == StepMethod::rk4_fixed);
  CHECK(cfg.stepper.step == 1e-4);
  CHECK(cfg.a_guess == -0.5);
  CHECK(cfg.periodicity_tol == 1e-3);
  CHECK(cfg.out_dir == "out");
}

TEST_CASE("full document round trip") {
  const RunConfig cfg = parse_config(R"({
    "system": "vanderpol mu=2.5",
    "stepper": {"method": "rk45-adaptive", "step": 1e-3, "rtol": 1e-8,
                "atol": 1e-10, "t_max": 80.0},
    "orbit": {"a_guess": -1.5, "tol": 1e-10, "max_iter": 30},
    "sweep": {"epsilon": [0.0, 0.001], "perturbation": "sin2t",
              "periodicity_tol": 0.002, "n_returns": 8},
    "grid": {"x_range": [-5, 5], "y_range": [-4, 4], "resolution": 0.02},
    "plot": {"x_range": [-3, 3], "y_range": [-2, 2], "zoom": 20.0,
             "width": 800, "height": 600, "max_points": 4000},
    "out_dir": "results"
  })");
  CHECK(cfg.system.builtin == "vanderpol mu=2.5");
  CHECK(cfg.stepper.method == StepMethod::rk45_adaptive);
  CHECK(cfg.stepper.t_max == 80.0);
  CHECK(cfg.a_guess == -1.5);
  CHECK(cfg.orbit_tol == 1e-10);
  CHECK(cfg.max_iter == 30);
  REQUIRE(cfg.sweep_epsilon.size() == 2);
  CHECK(cfg.sweep_epsilon[1] == 0.001);
  CHECK(cfg.periodicity_tol == 0.002);
  CHECK(cfg.n_returns == 8);
  CHECK(cfg.grid.x_min == -5.0);
  CHECK(cfg.grid.resolution == 0.02);
  CHECK(cfg.plot.zoom == 20.0);
  CHECK(cfg.plot.width == 800);
  CHECK(cfg.plot.max_points == 4000);
  CHECK(cfg.out_dir == "results");

  std::vector<std::string> warnings;
  const GeneralizedLienard sys = build_system(cfg.system, warnings);
  CHECK(warnings.empty());
  CHECK(sys.phi(2.0, 0.0) == doctest::Approx(2.5 * 3.0));
}

TEST_CASE("unknown keys are named in the error") {
  try {
    parse_config(R"({"stepperr": {}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("stepperr") != std::string::npos);
  }
  try {
    parse_config(R"({"stepper": {"steep": 1e-3}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("stepper.steep") != std::string::npos);
  }
}

TEST_CASE("malformed documents") {
  CHECK_THROWS_AS(parse_config("not json"), ConfigError);
  CHECK_THROWS_AS(parse_config("[1,2]"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"stepper": {"step": "fast"}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"stepper": {"method": "euler"}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"orbit": {"a_guess": 0.5}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"stepper": {"step": -1.0}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"sweep": {"perturbation": "square"}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"grid": {"x_range": [2, -2]}})"),
                  ConfigError);
}

TEST_CASE("polynomial system specification") {
  const RunConfig cfg = parse_config(R"({
    "system": {"polynomial": [[0, 1], [-1, 0, 2], [0, 2], [1]]}
  })");
  REQUIRE(cfg.system.is_polynomial);
  CHECK(cfg.system.polynomial.degree() == 3);
  std::vector<std::string> warnings;
  const GeneralizedLienard sys = build_system(cfg.system, warnings);
  CHECK(warnings.empty());
  CHECK(sys.phi(0.0, 0.0) == doctest::Approx(-1.0));
  CHECK(sys.psi(2.0) == 2.0);

  // even last index surfaces the validation warning
  const RunConfig even = parse_config(R"({
    "system": {"polynomial": [[0, 1], [-1], [0.5]]}
  })");
  warnings.clear();
  build_system(even.system, warnings);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("even") != std::string::npos);
}

TEST_CASE("builtin lookup failures") {
  std::vector<std::string> warnings;
  SystemSpec spec;
  spec.builtin = "duffing";
  CHECK_THROWS_AS(build_system(spec, warnings), ConfigError);
  spec.builtin = "vanderpol mu=abc";
  CHECK_THROWS_AS(build_system(spec, warnings), ConfigError);
  spec.builtin = "harmonic";
  const GeneralizedLienard h = build_system(spec, warnings);
  CHECK(h.phi(1.0, 1.0) == 0.0);
}
