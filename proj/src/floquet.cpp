#include "lienard/floquet.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace lienard {

namespace {

using Vec6 = Eigen::Matrix<double, 6, 1>;

std::vector<double> sampled(const PeriodicOrbit& orbit,
                            const std::function<double(double, double)>& f) {
  std::vector<double> out;
  out.reserve(orbit.trajectory.size());
  for (const State& x : orbit.trajectory.states)
    out.push_back(f(upos(x), uprime(x)));
  return out;
}

}  // namespace

FundamentalResult integrate_fundamental(
    const Rhs& rhs, const std::function<Matrix2(double, const State&)>& jac,
    const State& x0, double t0, double t1, const StepperConfig& cfg) {
  validate(cfg);
  // z = (x1, x2, y11, y21, y12, y22): state plus the two columns of Y
  auto f = [&rhs, &jac](double t, const Vec6& z) {
    const State x(z(0), z(1));
    const State dx = rhs(t, x);
    const Matrix2 a = jac(t, x);
    Vec6 dz;
    dz(0) = dx(0);
    dz(1) = dx(1);
    dz(2) = a(0, 0) * z(2) + a(0, 1) * z(3);
    dz(3) = a(1, 0) * z(2) + a(1, 1) * z(3);
    dz(4) = a(0, 0) * z(4) + a(0, 1) * z(5);
    dz(5) = a(1, 0) * z(4) + a(1, 1) * z(5);
    return dz;
  };
  Vec6 z;
  z << x0(0), x0(1), 1.0, 0.0, 0.0, 1.0;
  const auto keep_last = [&z](double, const Vec6& y) { z = y; };
  if (cfg.method == StepMethod::rk4_fixed) {
    detail::rk4_fixed_span(f, z, t0, t1, cfg.step, keep_last);
  } else {
    detail::rkf45_span(f, z, t0, t1, cfg.step, cfg.rtol, cfg.atol, keep_last);
  }
  FundamentalResult res;
  res.state = State(z(0), z(1));
  res.phi << z(2), z(4), z(3), z(5);
  return res;
}

Monodromy multipliers(const Matrix2& phi) {
  Monodromy m;
  m.phi_tau0 = phi;
  const double tr = phi.trace();
  const double det = phi.determinant();
  const double disc = tr * tr - 4.0 * det;
  if (disc < 0.0) {
    m.complex_pair = true;
    const double modulus = std::sqrt(det);
    m.rho1 = modulus;
    m.rho2 = modulus;
  } else {
    const double root = std::sqrt(disc);
    // stable quadratic: avoid cancellation in the smaller eigenvalue
    const double q = 0.5 * (tr + (tr >= 0.0 ? root : -root));
    double l1 = q;
    double l2 = (q != 0.0) ? det / q : 0.5 * (tr - root);
    if (std::abs(l1 - 1.0) > std::abs(l2 - 1.0)) std::swap(l1, l2);
    m.rho1 = l1;
    m.rho2 = l2;
  }
  m.unit_residual = std::abs(m.rho1 - 1.0);
  return m;
}

Monodromy monodromy(const GeneralizedLienard& sys, const PeriodicOrbit& orbit,
                    const StepperConfig& cfg) {
  const Rhs rhs = [&sys](double, const State& x) { return eval_rhs(sys, x); };
  const auto jac = [&sys](double, const State& x) { return jacobian(sys, x); };
  const FundamentalResult res = integrate_fundamental(
      rhs, jac, orbit.trajectory.states.front(), 0.0, orbit.tau0, cfg);
  return multipliers(res.phi);
}

double rho2_via_liouville(const GeneralizedLienard& sys,
                          const PeriodicOrbit& orbit) {
  const auto trace = sampled(orbit, [&sys](double u, double v) {
    return -(sys.dphi_dv(u, v) * v + sys.phi(u, v));
  });
  return std::exp(integrate_samples(orbit.trajectory.times, trace));
}

double rho2_via_integral(const GeneralizedLienard& sys,
                         const PeriodicOrbit& orbit) {
  return std::exp(-criterion_generalized(sys, orbit));
}

double criterion_generalized(const GeneralizedLienard& sys,
                             const PeriodicOrbit& orbit) {
  const auto integrand = sampled(orbit, [&sys](double u, double v) {
    return sys.dphi_dv(u, v) * v + sys.phi(u, v);
  });
  return integrate_samples(orbit.trajectory.times, integrand);
}

double criterion_polynomial(const PolynomialLienard& p,
                            const PeriodicOrbit& orbit) {
  const int n = p.degree();
  const auto integrand = sampled(orbit, [&p, n](double u, double v) {
    double acc = 0.0;
    for (int k = n; k >= 1; --k)
      acc = acc * v + static_cast<double>(k) * polyval(p.coeffs[k], u);
    return acc;
  });
  return integrate_samples(orbit.trajectory.times, integrand);
}

double criterion_example(const PeriodicOrbit& orbit) {
  const auto integrand = sampled(orbit, [](double u, double v) {
    return 2.0 * u * u + 4.0 * u * v + 3.0 * v * v - 1.0;
  });
  return integrate_samples(orbit.trajectory.times, integrand);
}

Matrix2 jacobian_J(const Monodromy& mono, double psi_a) {
  Matrix2 shift = Matrix2::Zero();
  shift(0, 0) = -psi_a;
  return Matrix2(-Matrix2::Identity() + shift + mono.phi_tau0);
}

double pi_tau0(const Monodromy& mono, double psi_a) {
  return mono.phi_tau0(0, 1) / (psi_a * psi_a);
}

StabilityReport stability_report(const GeneralizedLienard& sys,
                                 const PeriodicOrbit& orbit,
                                 const StepperConfig& cfg) {
  const Monodromy mono = monodromy(sys, orbit, cfg);
  StabilityReport rep;
  rep.rho1 = mono.rho1;
  rep.rho2_det = mono.phi_tau0.determinant();
  rep.rho2_liouville = rho2_via_liouville(sys, orbit);
  rep.rho2_integral = rho2_via_integral(sys, orbit);
  rep.criterion_value = criterion_generalized(sys, orbit);
  rep.stable = rep.criterion_value > 0.0;
  return rep;
}

std::string to_text(const StabilityReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "rho1: %.7g\n"
                "rho2_det: %.7g\n"
                "rho2_liouville: %.7g\n"
                "rho2_integral: %.7g\n"
                "criterion: %.7g\n"
                "stable: %s\n",
                r.rho1, r.rho2_det, r.rho2_liouville, r.rho2_integral,
                r.criterion_value, r.stable ? "true" : "false");
  return buf;
}

std::string stability_csv_header() {
  return "rho1,rho2_det,rho2_liouville,rho2_integral,criterion,stable";
}

std::string to_csv_row(const StabilityReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g,%.10g,%.10g,%s", r.rho1,
                r.rho2_det, r.rho2_liouville, r.rho2_integral,
                r.criterion_value, r.stable ? "true" : "false");
  return buf;
}

}  // namespace lienard
