#include "lienard/systems.hpp"

#include <cmath>
#include <random>
#include <utility>

namespace lienard {

namespace {

double fd_step(double at) { return std::max(1e-6, 1e-8 * std::abs(at)); }

}  // namespace

GeneralizedLienard make_system(Fn2 phi, Fn1 psi, Fn2 dphi_dv, Fn2 dphi_du,
                               Fn1 dpsi_du) {
  GeneralizedLienard sys;
  sys.phi = std::move(phi);
  sys.psi = std::move(psi);
  sys.dphi_dv = std::move(dphi_dv);
  sys.dphi_du = std::move(dphi_du);
  sys.dpsi_du = std::move(dpsi_du);
  sys.derivative_mode = DerivativeMode::analytic;
  return sys;
}

GeneralizedLienard make_system(Fn2 phi, Fn1 psi) {
  GeneralizedLienard sys;
  sys.phi = phi;
  sys.psi = psi;
  sys.dphi_dv = [phi](double u, double v) {
    const double h = fd_step(v);
    return (phi(u, v + h) - phi(u, v - h)) / (2.0 * h);
  };
  sys.dphi_du = [phi](double u, double v) {
    const double h = fd_step(u);
    return (phi(u + h, v) - phi(u - h, v)) / (2.0 * h);
  };
  sys.dpsi_du = [psi](double u) {
    const double h = fd_step(u);
    return (psi(u + h) - psi(u - h)) / (2.0 * h);
  };
  sys.derivative_mode = DerivativeMode::finite_difference;
  return sys;
}

double polyval(const Eigen::VectorXd& c, double u) {
  double acc = 0.0;
  for (Eigen::Index i = c.size() - 1; i >= 0; --i) acc = acc * u + c(i);
  return acc;
}

Eigen::VectorXd polyder(const Eigen::VectorXd& c) {
  if (c.size() <= 1) return Eigen::VectorXd::Zero(1);
  Eigen::VectorXd d(c.size() - 1);
  for (Eigen::Index i = 1; i < c.size(); ++i)
    d(i - 1) = static_cast<double>(i) * c(i);
  return d;
}

std::vector<std::string> validate(const PolynomialLienard& p) {
  if (p.coeffs.size() < 2)
    throw std::invalid_argument(
        "polynomial system needs coefficients p_0..p_n with n >= 1");
  const Eigen::VectorXd& last = p.coeffs.back();
  if (last.size() == 0 || last.isZero(0.0))
    throw std::invalid_argument("leading coefficient polynomial p_n is zero");
  std::vector<std::string> warnings;
  if (p.degree() % 2 == 0)
    warnings.push_back(
        "last nonzero coefficient index n=" + std::to_string(p.degree()) +
        " is even; an odd index is expected for a periodic solution");
  return warnings;
}

State eval_rhs(const GeneralizedLienard& sys, const State& x) {
  if (!is_finite(x))
    throw EvaluationError("eval_rhs: non-finite input state", x);
  const double v = uprime(x);
  const double u = upos(x);
  const State out(-sys.phi(u, v) * v - sys.psi(u), v);
  if (!is_finite(out)) throw EvaluationError("eval_rhs: non-finite result", x);
  return out;
}

State eval_rhs(const PolynomialLienard& p, const State& x) {
  const double v = uprime(x);
  const double u = upos(x);
  // Horner in v over the coefficient values p_k(u)
  double acc = 0.0;
  for (int k = p.degree(); k >= 0; --k) acc = acc * v + polyval(p.coeffs[k], u);
  const State out(-acc, v);
  if (!is_finite(out)) throw EvaluationError("eval_rhs: non-finite result", x);
  return out;
}

Matrix2 jacobian(const GeneralizedLienard& sys, const State& x) {
  if (!is_finite(x))
    throw EvaluationError("jacobian: non-finite input state", x);
  const double v = uprime(x);
  const double u = upos(x);
  Matrix2 j;
  j << -sys.dphi_dv(u, v) * v - sys.phi(u, v),
      -sys.dphi_du(u, v) * v - sys.dpsi_du(u), 1.0, 0.0;
  if (!j.allFinite()) throw EvaluationError("jacobian: non-finite result", x);
  return j;
}

GeneralizedLienard poly_to_generalized(const PolynomialLienard& p) {
  validate(p);
  const std::vector<Eigen::VectorXd> c = p.coeffs;
  std::vector<Eigen::VectorXd> dc;
  dc.reserve(c.size());
  for (const auto& ck : c) dc.push_back(polyder(ck));
  const int n = p.degree();

  Fn2 phi = [c, n](double u, double v) {
    double acc = 0.0;
    for (int k = n; k >= 1; --k) acc = acc * v + polyval(c[k], u);
    return acc;
  };
  Fn1 psi = [c](double u) { return polyval(c[0], u); };
  Fn2 dphi_dv = [c, n](double u, double v) {
    double acc = 0.0;
    for (int k = n; k >= 2; --k)
      acc = acc * v + static_cast<double>(k - 1) * polyval(c[k], u);
    return acc;
  };
  Fn2 dphi_du = [dc, n](double u, double v) {
    double acc = 0.0;
    for (int k = n; k >= 1; --k) acc = acc * v + polyval(dc[k], u);
    return acc;
  };
  Fn1 dpsi_du = [dc](double u) { return polyval(dc[0], u); };
  return make_system(std::move(phi), std::move(psi), std::move(dphi_dv),
                     std::move(dphi_du), std::move(dpsi_du));
}

PolynomialLienard example_equation() {
  PolynomialLienard p;
  p.coeffs.resize(4);
  p.coeffs[0] = Eigen::Vector2d(0.0, 1.0);            // psi(u) = u
  p.coeffs[1] = Eigen::Vector3d(-1.0, 0.0, 2.0);      // 2u^2 - 1
  p.coeffs[2] = Eigen::Vector2d(0.0, 2.0);            // 2u
  p.coeffs[3] = Eigen::VectorXd::Constant(1, 1.0);    // 1
  return p;
}

GeneralizedLienard example6() { return poly_to_generalized(example_equation()); }

GeneralizedLienard harmonic() {
  return make_system([](double, double) { return 0.0; },
                     [](double u) { return u; },
                     [](double, double) { return 0.0; },
                     [](double, double) { return 0.0; },
                     [](double) { return 1.0; });
}

GeneralizedLienard vanderpol(double mu) {
  return make_system(
      [mu](double u, double) { return mu * (u * u - 1.0); },
      [](double u) { return u; }, [](double, double) { return 0.0; },
      [mu](double u, double) { return 2.0 * mu * u; },
      [](double) { return 1.0; });
}

double derivative_check(const GeneralizedLienard& sys, int samples,
                        unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  const double h = 1e-6;
  double worst = 0.0;
  auto rel = [](double got, double ref) {
    return std::abs(got - ref) / std::max(1.0, std::abs(ref));
  };
  for (int i = 0; i < samples; ++i) {
    const double u = dist(rng);
    const double v = dist(rng);
    const double fd_v = (sys.phi(u, v + h) - sys.phi(u, v - h)) / (2.0 * h);
    const double fd_u = (sys.phi(u + h, v) - sys.phi(u - h, v)) / (2.0 * h);
    const double fd_p = (sys.psi(u + h) - sys.psi(u - h)) / (2.0 * h);
    worst = std::max(worst, rel(sys.dphi_dv(u, v), fd_v));
    worst = std::max(worst, rel(sys.dphi_du(u, v), fd_u));
    worst = std::max(worst, rel(sys.dpsi_du(u), fd_p));
  }
  return worst;
}

}  // namespace lienard
