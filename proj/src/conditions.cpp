#include "lienard/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace lienard {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Linspace hitting round values exactly: v_i = lo + (hi - lo) * i / n.
std::vector<double> axis(double lo, double hi, double resolution) {
  const auto n = static_cast<long>(std::llround((hi - lo) / resolution));
  if (n < 2 || !(hi > lo))
    throw std::invalid_argument("conditions: degenerate grid");
  std::vector<double> v(n + 1);
  for (long i = 0; i <= n; ++i)
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
  return v;
}

struct TestFunction {
  enum Kind { constant, linear, exponential } kind;
  double c;
  double x0;
  double span;
  double operator()(double x) const {
    switch (kind) {
      case constant:
        return c;
      case linear:
        return c * (1.0 - (x - x0) / (2.0 * span));
      case exponential:
      default:
        return c * std::exp(-(x - x0));
    }
  }
};

}  // namespace

CLSReport check_cls(const GeneralizedLienard& sys, const Grid& grid) {
  CLSReport rep;
  rep.grid = grid;
  const std::vector<double> xs = axis(grid.x_min, grid.x_max, grid.resolution);
  const std::vector<double> ys = axis(grid.y_min, grid.y_max, grid.resolution);

  // (i) x psi(x) > 0 away from 0
  rep.psi_sign_ok = true;
  for (double x : xs) {
    if (x == 0.0) continue;
    if (!(x * sys.psi(x) > 0.0)) {
      rep.psi_sign_ok = false;
      rep.witnesses.push_back({"x*psi(x) > 0", x, 0.0});
      break;
    }
  }

  // (ii) Psi(x) = int_0^x psi, divergence proxy: decade growth ratio > 10
  // at the positive range edge (superlinear growth; linear gives exactly 10).
  {
    double edge = 0.0, tenth = 0.0, psi_acc = 0.0;
    double prev_x = 0.0, prev_psi = sys.psi(0.0);
    const double x_tenth = grid.x_max / 10.0;
    for (double x : xs) {
      if (x <= 0.0) continue;
      const double p = sys.psi(x);
      psi_acc += 0.5 * (x - prev_x) * (prev_psi + p);
      prev_x = x;
      prev_psi = p;
      if (x <= x_tenth) tenth = psi_acc;
      edge = psi_acc;
    }
    rep.psi_primitive_divergence_ok = edge > 0.0 && edge > 10.0 * tenth;
    if (!rep.psi_primitive_divergence_ok)
      rep.witnesses.push_back({"Psi(x) -> inf (decade growth)", grid.x_max, 0.0});
  }

  // (iii) phi(0, 0) < 0
  rep.phi00 = sys.phi(0.0, 0.0);
  rep.phi00_negative = rep.phi00 < 0.0;
  if (!rep.phi00_negative) rep.witnesses.push_back({"phi(0,0) < 0", 0.0, 0.0});

  // min_y phi(x, y) per grid column
  std::vector<double> min_phi(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double m = std::numeric_limits<double>::infinity();
    for (double y : ys) m = std::min(m, sys.phi(xs[i], y));
    min_phi[i] = m;
  }

  // (iv) x0 = smallest positive grid value with phi >= 0 for all |x| >= x0
  rep.x0 = kNaN;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double c = xs[i];
    if (!(c > 0.0)) continue;
    bool ok = true;
    for (std::size_t j = 0; j < xs.size() && ok; ++j)
      if (std::abs(xs[j]) >= c && min_phi[j] < 0.0) ok = false;
    if (ok) {
      rep.x0 = c;
      break;
    }
  }
  if (std::isnan(rep.x0)) {
    rep.witnesses.push_back({"phi >= 0 for |x| >= x0", grid.x_max, 0.0});
    rep.M = kNaN;
    rep.x1 = kNaN;
    rep.integral_bound_ok = false;
    return rep;
  }

  // (v) M = max(0, -min phi over |x| <= x0)
  double inner_min = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < xs.size(); ++j)
    if (std::abs(xs[j]) <= rep.x0) inner_min = std::min(inner_min, min_phi[j]);
  rep.M = std::max(0.0, -inner_min);

  // (vi) scan x1 until the damping integral clears 10 M x0 for the whole
  // decreasing-positive test family
  std::vector<TestFunction> family;
  const double span = grid.x_max - rep.x0;
  for (double f : {1e-3, 0.01, 0.1, 0.25, 0.5, 0.75, 1.0}) {
    const double c = f * grid.y_max;
    if (!(c > 0.0)) continue;
    family.push_back({TestFunction::constant, c, rep.x0, span});
    family.push_back({TestFunction::linear, c, rep.x0, span});
    family.push_back({TestFunction::exponential, c, rep.x0, span});
  }
  const double bound = 10.0 * rep.M * rep.x0;
  std::vector<double> acc(family.size(), 0.0);
  rep.x1 = kNaN;
  rep.integral_bound_ok = false;
  if (family.empty()) {
    rep.witnesses.push_back(
        {"damping integral >= 10 M x0 (no positive y range)", grid.y_max, 0.0});
    return rep;
  }
  auto it0 = std::lower_bound(xs.begin(), xs.end(), rep.x0);
  for (auto it = it0; it + 1 != xs.end(); ++it) {
    const double xa = *it;
    const double xb = *(it + 1);
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < family.size(); ++k) {
      const double pa = sys.phi(xa, family[k](xa));
      const double pb = sys.phi(xb, family[k](xb));
      acc[k] += 0.5 * (xb - xa) * (pa + pb);
      lowest = std::min(lowest, acc[k]);
    }
    if (lowest >= bound) {
      rep.x1 = xb;
      rep.integral_bound_ok = true;
      break;
    }
  }
  if (!rep.integral_bound_ok)
    rep.witnesses.push_back({"damping integral >= 10 M x0", grid.x_max, 0.0});
  return rep;
}

double cls_example_bound() { return 1.0 + std::cbrt(60.0); }

DeCastroReport check_de_castro(const GeneralizedLienard& sys,
                               const Grid& grid) {
  DeCastroReport rep;
  rep.grid = grid;

  const std::vector<double> xs = axis(grid.x_min, grid.x_max, grid.resolution);
  rep.psi_is_identity = true;
  for (double x : xs) {
    if (std::abs(sys.psi(x) - x) > 1e-12) {
      rep.psi_is_identity = false;
      break;
    }
  }

  // phi nondecreasing along rays from the origin, all four quadrants
  rep.phi_monotone_ok = true;
  const int n_dirs = 64;
  const double r_lim = std::min({std::abs(grid.x_min), grid.x_max,
                                 std::abs(grid.y_min), grid.y_max});
  for (int d = 0; d < n_dirs; ++d) {
    const double angle = 2.0 * M_PI * d / n_dirs;
    const double dx = std::cos(angle);
    const double dy = std::sin(angle);
    double prev = sys.phi(0.0, 0.0);
    double prev_r = 0.0;
    for (double r = grid.resolution; r <= r_lim; r += grid.resolution) {
      const double value = sys.phi(r * dx, r * dy);
      const double slack = 1e-9 * std::max(1.0, std::abs(prev));
      if (value < prev - slack) {
        rep.phi_monotone_ok = false;
        rep.violations.push_back(
            {prev_r * dx, prev_r * dy, r * dx, r * dy});
      }
      prev = value;
      prev_r = r;
    }
  }
  return rep;
}

std::string to_text(const CLSReport& r) {
  std::ostringstream os;
  auto flag = [](bool b) { return b ? "true" : "false"; };
  os << "psi_sign_ok: " << flag(r.psi_sign_ok) << "\n"
     << "psi_primitive_divergence_ok: " << flag(r.psi_primitive_divergence_ok)
     << "\n";
  char buf[160];
  std::snprintf(buf, sizeof(buf), "phi00: %.7g\n", r.phi00);
  os << buf << "phi00_negative: " << flag(r.phi00_negative) << "\n";
  std::snprintf(buf, sizeof(buf), "x0: %.7g\nM: %.7g\nx1: %.7g\n", r.x0, r.M,
                r.x1);
  os << buf << "integral_bound_ok: " << flag(r.integral_bound_ok) << "\n"
     << "cls_ok: " << flag(r.all_ok()) << "\n";
  for (const auto& w : r.witnesses) {
    std::snprintf(buf, sizeof(buf), "failed: %s (near x=%.7g, y=%.7g)\n",
                  w.condition.c_str(), w.x, w.y);
    os << buf;
  }
  return os.str();
}

std::string to_text(const DeCastroReport& r) {
  std::ostringstream os;
  auto flag = [](bool b) { return b ? "true" : "false"; };
  os << "psi_is_identity: " << flag(r.psi_is_identity) << "\n"
     << "phi_monotone_ok: " << flag(r.phi_monotone_ok) << "\n"
     << "de_castro_ok: " << flag(r.all_ok()) << "\n";
  const std::size_t shown = std::min<std::size_t>(r.violations.size(), 5);
  for (std::size_t i = 0; i < shown; ++i) {
    const auto& v = r.violations[i];
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "violation: phi(%.5g,%.5g) > phi(%.5g,%.5g)\n", v.x, v.y,
                  v.x2, v.y2);
    os << buf;
  }
  if (r.violations.size() > shown)
    os << "(+" << r.violations.size() - shown << " more violations)\n";
  return os.str();
}

}  // namespace lienard
