#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lienard/perturb.hpp"

#include <cmath>
#include <limits>
#include <sstream>

using namespace lienard;

namespace {

const double kPi = std::acos(-1.0);

StepperConfig fast_cfg() {
  StepperConfig cfg;
  cfg.step = 1e-3;
  return cfg;
}

const GeneralizedLienard& example_system() {
  static const GeneralizedLienard sys = example6();
  return sys;
}

const PeriodicOrbit& example_orbit() {
  static const PeriodicOrbit orbit =
      find_periodic_orbit(example_system(), -0.5, 1e-9, 50, fast_cfg());
  return orbit;
}

}  // namespace

TEST_CASE("zero forcing reduces to the autonomous field") {
  const Rhs forced = forced_rhs(example_system(), sin2t_perturbation(0.0));
  for (double t : {0.0, 0.37, 2.0}) {
    for (double u : {-1.0, 0.2}) {
      for (double v : {-0.4, 0.9}) {
        const State a = forced(t, make_state(v, u));
        const State b = eval_rhs(example_system(), make_state(v, u));
        CHECK(a(0) == b(0));
        CHECK(a(1) == b(1));
      }
    }
  }
}

TEST_CASE("forcing term enters with amplitude epsilon") {
  const Rhs forced = forced_rhs(example_system(), sin2t_perturbation(0.001));
  const Rhs base = forced_rhs(example_system(), sin2t_perturbation(0.0));
  const State x = make_state(1.0, 0.0);
  const double diff = forced(kPi / 4.0, x)(0) - base(kPi / 4.0, x)(0);
  CHECK(diff == doctest::Approx(0.001).epsilon(1e-12));  // sin(pi/2) * u' = 1
}

TEST_CASE("constant forcing shifts the velocity equation uniformly") {
  Perturbation constant;
  constant.omega = [](double, double, double) { return 1.0; };
  constant.epsilon = 0.25;
  constant.label = "const";
  const Rhs forced = forced_rhs(example_system(), constant);
  for (double t : {0.0, 1.0}) {
    for (double u : {-0.5, 1.5}) {
      const State x = make_state(0.3, u);
      CHECK(forced(t, x)(0) - eval_rhs(example_system(), x)(0) ==
            doctest::Approx(0.25).epsilon(1e-15));
      CHECK(forced(t, x)(1) == x(0));
    }
  }
}

TEST_CASE("sin2t perturbation") {
  const Perturbation p = sin2t_perturbation(1.0 / 1000.0);
  CHECK(p.label == "sin2t");
  CHECK(p.epsilon == 0.001);
  // omega vanishes at t = pi/2 for every state, and has forcing period pi
  CHECK(std::abs(p.omega(kPi / 2.0, -3.0, 7.0)) <= 1e-14);
  CHECK(p.omega(0.3 + kPi, 1.0, 2.0) ==
        doctest::Approx(p.omega(0.3, 1.0, 2.0)).epsilon(1e-12));
  CHECK(p.omega(kPi / 4.0, 0.0, 2.0) == doctest::Approx(2.0).epsilon(1e-12));

  const Perturbation zero = sin2t_perturbation(0.0);
  CHECK(zero.epsilon == 0.0);
}

TEST_CASE("rescaled clock wrapper") {
  const Perturbation p = sin2t_perturbation(0.01);
  const Perturbation scaled = with_rescaled_clock(p, 2.0);
  CHECK(scaled.label == "sin2t/tau");
  CHECK(scaled.omega(1.0, 0.0, 1.0) ==
        doctest::Approx(p.omega(0.5, 0.0, 1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(with_rescaled_clock(p, 0.0), std::invalid_argument);
}

TEST_CASE("epsilon sanity bound") {
  CHECK_THROWS_AS(forced_rhs(example_system(), sin2t_perturbation(1.0)),
                  std::invalid_argument);
}

TEST_CASE("recurrence of the unforced orbit") {
  const Rhs rhs = forced_rhs(example_system(), sin2t_perturbation(0.0));
  const RecurrenceResult r = estimate_recurrence(
      rhs, make_state(0.0, example_orbit().a), 0.0, fast_cfg(), 1e-3, 10);
  CHECK(std::abs(r.tau_estimate - example_orbit().tau0) <= 1e-6);
  CHECK(r.drift <= 1e-6);
  CHECK(r.periodic);
  CHECK(r.n_returns == 10);
}

TEST_CASE("recurrence estimator input checks") {
  const Rhs rhs = forced_rhs(example_system(), sin2t_perturbation(0.0));
  CHECK_THROWS_AS(estimate_recurrence(rhs, make_state(0.5, -0.7), 0.0,
                                      fast_cfg(), 1e-3, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimate_recurrence(rhs, make_state(0.0, -0.7), 0.0,
                                      fast_cfg(), 1e-3, 0),
                  std::invalid_argument);
}

TEST_CASE("forced recurrence reproduces the reference periods") {
  const double a = example_orbit().a;

  const Rhs r200 = forced_rhs(example_system(), sin2t_perturbation(1.0 / 200.0));
  const RecurrenceResult rec200 =
      estimate_recurrence(r200, make_state(0.0, a), 0.0, fast_cfg(), 1e-3, 10);
  CHECK(std::abs(rec200.tau_estimate - 5.4252) <= 1e-3);
  CHECK(rec200.periodic);

  const Rhs r1000 = forced_rhs(example_system(), sin2t_perturbation(1.0 / 1000.0));
  const RecurrenceResult rec1000 =
      estimate_recurrence(r1000, make_state(0.0, a), 0.0, fast_cfg(), 1e-3, 10);
  CHECK(std::abs(rec1000.tau_estimate - 5.4287) <= 1e-3);
  CHECK(rec1000.periodic);
}

TEST_CASE("periodicity is lost at the larger forcing amplitude") {
  const Rhs rhs = forced_rhs(example_system(), sin2t_perturbation(0.01));
  const RecurrenceResult rec = estimate_recurrence(
      rhs, make_state(0.0, example_orbit().a), 0.0, fast_cfg(), 1e-3, 10);
  CHECK(rec.drift > 1e-3);
  CHECK(!rec.periodic);
}

TEST_CASE("sweep rows, ordering and trends") {
  SweepOptions opts;
  opts.stepper = fast_cfg();
  opts.anchor_a = example_orbit().a;
  const OmegaFamily family = [](double e) { return sin2t_perturbation(e); };

  // deliberately unsorted input
  const std::vector<SweepRow> rows = sweep_epsilon(
      example_system(), family, {5e-3, 0.0, 1e-3}, opts);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].epsilon == 0.0);
  CHECK(rows[1].epsilon == 1e-3);
  CHECK(rows[2].epsilon == 5e-3);

  // zero-forcing row matches the orbit module
  REQUIRE(rows[0].tau.has_value());
  CHECK(std::abs(*rows[0].tau - example_orbit().tau0) <= 1e-6);
  CHECK(rows[0].drift <= 1e-6);

  const double tau0 = example_orbit().tau0;
  double prev_tau = *rows[0].tau;
  for (const SweepRow& row : rows) {
    REQUIRE(row.tau.has_value());
    CHECK(row.error.empty());
    CHECK(row.periodic);
    // non-increasing within quadrature noise
    CHECK(*row.tau <= prev_tau + 2e-4);
    prev_tau = *row.tau;
    // perturbed periods stay in the closeness band around tau0
    CHECK(std::abs(*row.tau - tau0) < 0.1 * tau0);
    // zero forcing drifts least
    CHECK(rows[0].drift <= row.drift + 1e-15);
  }
}

TEST_CASE("sweep records per-row failures and continues") {
  SweepOptions opts;
  opts.stepper = fast_cfg();
  opts.anchor_a = example_orbit().a;
  const OmegaFamily family = [](double e) {
    Perturbation p = sin2t_perturbation(e);
    if (e > 0.5) p.epsilon = 1.5;  // trips the |epsilon| < 1 bound
    return p;
  };
  const std::vector<SweepRow> rows =
      sweep_epsilon(example_system(), family, {0.0, 0.6}, opts);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].error.empty());
  CHECK(!rows[1].error.empty());
  CHECK(!rows[1].tau.has_value());
  CHECK(!rows[1].periodic);
}

TEST_CASE("loss detection") {
  auto row = [](double eps, bool periodic) {
    SweepRow r;
    r.epsilon = eps;
    r.tau = 5.4;
    r.periodic = periodic;
    return r;
  };
  const LossScan all_ok =
      detect_periodicity_loss({row(0.001, true), row(0.005, true)});
  CHECK(!all_ok.first_loss.has_value());
  CHECK(all_ok.monotone);

  const LossScan simple =
      detect_periodicity_loss({row(0.001, true), row(0.01, false)});
  REQUIRE(simple.first_loss.has_value());
  CHECK(*simple.first_loss == 0.01);
  CHECK(simple.monotone);

  const LossScan bumpy = detect_periodicity_loss(
      {row(0.001, true), row(0.005, false), row(0.007, true)});
  REQUIRE(bumpy.first_loss.has_value());
  CHECK(*bumpy.first_loss == 0.005);
  CHECK(!bumpy.monotone);
}

TEST_CASE("sweep csv format") {
  SweepRow ok;
  ok.epsilon = 0.001;
  ok.tau = 5.42866;
  ok.drift = 0.000123;
  ok.periodic = true;
  SweepRow failed;
  failed.epsilon = 0.9;
  failed.drift = std::numeric_limits<double>::quiet_NaN();
  failed.error = "diverged";
  std::ostringstream os;
  write_sweep_csv(os, {ok, failed});
  CHECK(os.str().rfind("epsilon,tau,drift,periodic\n", 0) == 0);
  CHECK(os.str().find("0.001,5.4287,1.230000e-04,true\n") != std::string::npos);
  CHECK(os.str().find("0.9,,nan,false\n") != std::string::npos);
}

TEST_CASE("sweep rejects non-finite epsilon") {
  SweepOptions opts;
  opts.stepper = fast_cfg();
  opts.anchor_a = -0.75;
  const OmegaFamily family = [](double e) { return sin2t_perturbation(e); };
  CHECK_THROWS_AS(
      sweep_epsilon(example_system(), family,
                    {std::numeric_limits<double>::infinity()}, opts),
      std::invalid_argument);
}
