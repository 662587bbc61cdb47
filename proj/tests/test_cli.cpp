#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end checks of the command-line surface: exit codes, file outputs,
// and byte determinism.  The binary path arrives via LIENARD_CLI.

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* env = std::getenv("LIENARD_CLI");
  REQUIRE_MESSAGE(env != nullptr, "LIENARD_CLI must point at the binary");
  return env;
}

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run(const std::string& args) {
  const fs::path log = fs::temp_directory_path() / "lienard_cli_test.log";
  const std::string cmd =
      cli_path() + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult res;
#ifdef _WIN32
  res.exit_code = status;
#else
  res.exit_code = WEXITSTATUS(status);
#endif
  std::ifstream in(log);
  std::ostringstream buf;
  buf << in.rdbuf();
  res.output = buf.str();
  return res;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("lienard_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "config.json";
  std::ofstream os(p);
  os << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("orbit command writes csv, svg and summary") {
  const fs::path dir = fresh_dir("orbit");
  const RunResult res =
      run("orbit --step 0.001 --out " + (dir / "out").string());
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("tau0: 5.429545") != std::string::npos);
  CHECK(res.output.find("a_star: -0.754883") != std::string::npos);

  const std::string csv = slurp(dir / "out" / "orbit.csv");
  CHECK(csv.rfind("t,u,u_prime\n", 0) == 0);
  CHECK(slurp(dir / "out" / "orbit.svg").find("<svg") != std::string::npos);
  CHECK(slurp(dir / "out" / "summary.txt").find("tau0") != std::string::npos);

  // csv round trip: first data row starts at (0, a)
  std::istringstream rows(csv);
  std::string header, first;
  std::getline(rows, header);
  std::getline(rows, first);
  CHECK(first.rfind("0,-0.75488297", 0) == 0);
}

TEST_CASE("outputs are byte-deterministic") {
  const fs::path dir = fresh_dir("determinism");
  REQUIRE(run("orbit --step 0.001 --out " + (dir / "a").string()).exit_code ==
          0);
  REQUIRE(run("orbit --step 0.001 --out " + (dir / "b").string()).exit_code ==
          0);
  CHECK(slurp(dir / "a" / "orbit.csv") == slurp(dir / "b" / "orbit.csv"));
  CHECK(slurp(dir / "a" / "orbit.svg") == slurp(dir / "b" / "orbit.svg"));
}

TEST_CASE("config errors name the offending key and exit 1") {
  const fs::path dir = fresh_dir("badkey");
  const fs::path cfg = write_config(dir, R"({"sweeep": {}})");
  const RunResult res = run("orbit --config " + cfg.string());
  CHECK(res.exit_code == 1);
  CHECK(res.output.find("sweeep") != std::string::npos);
}

TEST_CASE("numerical failure exits 2") {
  const fs::path dir = fresh_dir("noreturn");
  // overdamped coefficients: no oscillation, so the seed never returns
  const fs::path cfg = write_config(dir, R"({
    "system": {"polynomial": [[0, 1], [3]]},
    "stepper": {"step": 0.001, "t_max": 20.0},
    "orbit": {"a_guess": -0.5}
  })");
  const RunResult res = run("orbit --config " + cfg.string() + " --out " +
                            (dir / "out").string());
  CHECK(res.exit_code == 2);
}

TEST_CASE("floquet command reports the multiplier routes") {
  const fs::path dir = fresh_dir("floquet");
  const RunResult res =
      run("floquet --step 0.001 --out " + (dir / "out").string());
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("rho2_det: 0.009311163") != std::string::npos);
  CHECK(res.output.find("rho2_liouville: 0.009311163") != std::string::npos);
  CHECK(res.output.find("rho2_integral: 0.009311163") != std::string::npos);
  CHECK(res.output.find("stable: true") != std::string::npos);
  CHECK(res.output.find("nondegenerate: true") != std::string::npos);
  const std::string csv = slurp(dir / "out" / "stability.csv");
  CHECK(csv.rfind("rho1,rho2_det,rho2_liouville,rho2_integral,criterion,stable",
                  0) == 0);
}

TEST_CASE("floquet on the degenerate harmonic case still reports") {
  const fs::path dir = fresh_dir("floquet_degenerate");
  const fs::path cfg = write_config(dir, R"({"system": "harmonic",
    "stepper": {"step": 0.001}, "orbit": {"a_guess": -1.0}})");
  const RunResult res = run("floquet --config " + cfg.string() + " --out " +
                            (dir / "out").string());
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("rho2_det: 1") != std::string::npos);
  CHECK(res.output.find("nondegenerate: false") != std::string::npos);
}

TEST_CASE("conditions exit code separates pass from fail") {
  const fs::path dir = fresh_dir("conditions");
  const RunResult pass =
      run("conditions --out " + (dir / "pass").string());
  CHECK(pass.exit_code == 0);
  CHECK(pass.output.find("x0: 1") != std::string::npos);
  CHECK(pass.output.find("de_castro_ok: true") != std::string::npos);

  const fs::path cfg = write_config(dir, R"({"system": "harmonic"})");
  const RunResult fail = run("conditions --config " + cfg.string() +
                             " --out " + (dir / "fail").string());
  CHECK(fail.exit_code == 3);
}

TEST_CASE("sweep command writes the table and portraits") {
  const fs::path dir = fresh_dir("sweep");
  const RunResult res =
      run("sweep --step 0.001 --epsilon 0 --epsilon 0.005 --epsilon 0.01 "
          "--out " +
          (dir / "out").string());
  CHECK(res.exit_code == 0);
  const std::string csv = slurp(dir / "out" / "sweep.csv");
  CHECK(csv.rfind("epsilon,tau,drift,periodic\n", 0) == 0);
  CHECK(csv.find("0.005,5.4252,") != std::string::npos);
  CHECK(csv.find("0.01,5.4209,") != std::string::npos);
  CHECK(csv.find(",false\n") != std::string::npos);
  CHECK(res.output.find("periodicity lost from epsilon=0.01") !=
        std::string::npos);
  CHECK(fs::exists(dir / "out" / "sweep_eps_0.svg"));
  CHECK(fs::exists(dir / "out" / "sweep_eps_0.005.svg"));
  CHECK(fs::exists(dir / "out" / "sweep_eps_0.01.svg"));
}

TEST_CASE("sweep with no epsilon list exits 1") {
  const fs::path dir = fresh_dir("sweep_empty");
  const RunResult res = run("sweep --out " + (dir / "out").string());
  CHECK(res.exit_code == 1);
}

TEST_CASE("unknown subcommand exits nonzero") {
  const RunResult res = run("viz");
  CHECK(res.exit_code != 0);
}
