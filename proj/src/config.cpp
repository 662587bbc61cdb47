#include "lienard/config.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace lienard {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::string& scope,
                         std::initializer_list<const char*> known) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) ok = true;
    if (!ok)
      throw ConfigError("unknown config key: " +
                        (scope.empty() ? it.key() : scope + "." + it.key()));
  }
}

double as_number(const json& v, const std::string& name) {
  if (!v.is_number())
    throw ConfigError("config key " + name + " must be a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& name) {
  if (!v.is_number_integer())
    throw ConfigError("config key " + name + " must be an integer");
  return v.get<int>();
}

void parse_range(const json& v, const std::string& name, double& lo,
                 double& hi) {
  if (!v.is_array() || v.size() != 2)
    throw ConfigError("config key " + name + " must be [lo, hi]");
  lo = as_number(v[0], name);
  hi = as_number(v[1], name);
  if (!(hi > lo)) throw ConfigError("config key " + name + " needs hi > lo");
}

void parse_system(const json& v, SystemSpec& spec) {
  if (v.is_string()) {
    spec.builtin = v.get<std::string>();
    spec.is_polynomial = false;
    return;
  }
  if (v.is_object()) {
    reject_unknown_keys(v, "system", {"polynomial"});
    if (!v.contains("polynomial"))
      throw ConfigError("system object requires a polynomial key");
    const json& p = v["polynomial"];
    if (!p.is_array() || p.size() < 2)
      throw ConfigError("system.polynomial must list p_0..p_n with n >= 1");
    spec.polynomial.coeffs.clear();
    for (const json& ck : p) {
      if (!ck.is_array() || ck.empty())
        throw ConfigError(
            "system.polynomial entries must be coefficient arrays");
      Eigen::VectorXd c(ck.size());
      for (std::size_t i = 0; i < ck.size(); ++i)
        c(i) = as_number(ck[i], "system.polynomial");
      spec.polynomial.coeffs.push_back(std::move(c));
    }
    spec.is_polynomial = true;
    return;
  }
  throw ConfigError("system must be a builtin name or a polynomial object");
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be an object");
  reject_unknown_keys(root, "",
                      {"system", "stepper", "orbit", "sweep", "grid", "plot",
                       "out_dir"});

  RunConfig cfg;
  if (root.contains("system")) parse_system(root["system"], cfg.system);

  if (root.contains("stepper")) {
    const json& s = root["stepper"];
    reject_unknown_keys(s, "stepper", {"method", "step", "rtol", "atol",
                                       "t_max"});
    if (s.contains("method")) {
      const std::string m = s["method"].get<std::string>();
      if (m == "rk4-fixed")
        cfg.stepper.method = StepMethod::rk4_fixed;
      else if (m == "rk45-adaptive")
        cfg.stepper.method = StepMethod::rk45_adaptive;
      else
        throw ConfigError("stepper.method must be rk4-fixed or rk45-adaptive");
    }
    if (s.contains("step")) cfg.stepper.step = as_number(s["step"], "stepper.step");
    if (s.contains("rtol")) cfg.stepper.rtol = as_number(s["rtol"], "stepper.rtol");
    if (s.contains("atol")) cfg.stepper.atol = as_number(s["atol"], "stepper.atol");
    if (s.contains("t_max")) cfg.stepper.t_max = as_number(s["t_max"], "stepper.t_max");
  }
  try {
    validate(cfg.stepper);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  if (root.contains("orbit")) {
    const json& o = root["orbit"];
    reject_unknown_keys(o, "orbit", {"a_guess", "tol", "max_iter"});
    if (o.contains("a_guess")) cfg.a_guess = as_number(o["a_guess"], "orbit.a_guess");
    if (o.contains("tol")) cfg.orbit_tol = as_number(o["tol"], "orbit.tol");
    if (o.contains("max_iter")) cfg.max_iter = as_int(o["max_iter"], "orbit.max_iter");
    if (!(cfg.a_guess < 0.0))
      throw ConfigError("orbit.a_guess must be negative");
  }

  if (root.contains("sweep")) {
    const json& s = root["sweep"];
    reject_unknown_keys(
        s, "sweep", {"epsilon", "perturbation", "periodicity_tol", "n_returns"});
    if (s.contains("epsilon")) {
      if (!s["epsilon"].is_array())
        throw ConfigError("sweep.epsilon must be an array");
      cfg.sweep_epsilon.clear();
      for (const json& e : s["epsilon"])
        cfg.sweep_epsilon.push_back(as_number(e, "sweep.epsilon"));
    }
    if (s.contains("perturbation"))
      cfg.perturbation = s["perturbation"].get<std::string>();
    if (cfg.perturbation != "sin2t")
      throw ConfigError("sweep.perturbation: unknown label " +
                        cfg.perturbation);
    if (s.contains("periodicity_tol"))
      cfg.periodicity_tol = as_number(s["periodicity_tol"], "sweep.periodicity_tol");
    if (s.contains("n_returns"))
      cfg.n_returns = as_int(s["n_returns"], "sweep.n_returns");
  }

  if (root.contains("grid")) {
    const json& g = root["grid"];
    reject_unknown_keys(g, "grid", {"x_range", "y_range", "resolution"});
    if (g.contains("x_range"))
      parse_range(g["x_range"], "grid.x_range", cfg.grid.x_min, cfg.grid.x_max);
    if (g.contains("y_range"))
      parse_range(g["y_range"], "grid.y_range", cfg.grid.y_min, cfg.grid.y_max);
    if (g.contains("resolution"))
      cfg.grid.resolution = as_number(g["resolution"], "grid.resolution");
    if (!(cfg.grid.resolution > 0.0))
      throw ConfigError("grid.resolution must be > 0");
  }

  if (root.contains("plot")) {
    const json& p = root["plot"];
    reject_unknown_keys(p, "plot",
                        {"x_range", "y_range", "zoom", "width", "height",
                         "max_points"});
    if (p.contains("x_range"))
      parse_range(p["x_range"], "plot.x_range", cfg.plot.x_min, cfg.plot.x_max);
    if (p.contains("y_range"))
      parse_range(p["y_range"], "plot.y_range", cfg.plot.y_min, cfg.plot.y_max);
    if (p.contains("zoom")) cfg.plot.zoom = as_number(p["zoom"], "plot.zoom");
    if (p.contains("width")) cfg.plot.width = as_int(p["width"], "plot.width");
    if (p.contains("height")) cfg.plot.height = as_int(p["height"], "plot.height");
    if (p.contains("max_points"))
      cfg.plot.max_points = static_cast<std::size_t>(
          as_int(p["max_points"], "plot.max_points"));
    if (!(cfg.plot.zoom > 0.0)) throw ConfigError("plot.zoom must be > 0");
  }

  if (root.contains("out_dir")) {
    if (!root["out_dir"].is_string())
      throw ConfigError("out_dir must be a string");
    cfg.out_dir = root["out_dir"].get<std::string>();
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

GeneralizedLienard build_system(const SystemSpec& spec,
                                std::vector<std::string>& warnings) {
  if (spec.is_polynomial) {
    for (std::string& w : validate(spec.polynomial)) warnings.push_back(w);
    return poly_to_generalized(spec.polynomial);
  }
  const std::string& name = spec.builtin;
  if (name == "example6") return example6();
  if (name == "harmonic") return harmonic();
  if (name.rfind("vanderpol", 0) == 0) {
    double mu = 1.0;
    const auto pos = name.find("mu=");
    if (pos != std::string::npos) {
      try {
        mu = std::stod(name.substr(pos + 3));
      } catch (const std::exception&) {
        throw ConfigError("invalid vanderpol mu value in: " + name);
      }
    } else if (name != "vanderpol") {
      throw ConfigError("unknown builtin system: " + name);
    }
    return vanderpol(mu);
  }
  throw ConfigError("unknown builtin system: " + name);
}

}  // namespace lienard
