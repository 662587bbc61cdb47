#pragma once

#include "lienard/orbit.hpp"
#include "lienard/systems.hpp"

#include <string>

namespace lienard {

struct Monodromy {
  Matrix2 phi_tau0 = Matrix2::Identity();
  double rho1 = 1.0;           ///< multiplier nearest 1
  double rho2 = 1.0;           ///< the other multiplier
  double unit_residual = 0.0;  ///< |rho1 - 1|
  bool complex_pair = false;   ///< rho1/rho2 hold the common modulus
};

struct StabilityReport {
  double rho1 = 1.0;
  double rho2_det = 0.0;        ///< det Phi(tau0)
  double rho2_liouville = 0.0;  ///< exp of the trace quadrature
  double rho2_integral = 0.0;   ///< exp(-criterion integral)
  double criterion_value = 0.0;
  bool stable = false;  ///< criterion_value > 0  <=>  rho2 < 1
};

struct FundamentalResult {
  State state = State::Zero();
  Matrix2 phi = Matrix2::Identity();
};

/// Integrates the augmented 6-dimensional system (state plus the two columns
/// of Y, Y(t0) = I) over [t0, t1].
FundamentalResult integrate_fundamental(
    const Rhs& rhs, const std::function<Matrix2(double, const State&)>& jac,
    const State& x0, double t0, double t1, const StepperConfig& cfg);

/// Multipliers of a 2x2 fundamental matrix by the closed-form quadratic;
/// a complex pair is reported by modulus with the flag set.
Monodromy multipliers(const Matrix2& phi);

/// Monodromy matrix of the variational system y' = f_x'(q(t)) y along the
/// orbit, by direct augmented integration from the orbit anchor.
Monodromy monodromy(const GeneralizedLienard& sys, const PeriodicOrbit& orbit,
                    const StepperConfig& cfg);

/// exp of the quadrature of tr f_x'(q(t)) over the orbit samples.
double rho2_via_liouville(const GeneralizedLienard& sys,
                          const PeriodicOrbit& orbit);

/// exp(-Q) with Q the quadrature of dphi_dv(u,u')u' + phi(u,u').
double rho2_via_integral(const GeneralizedLienard& sys,
                         const PeriodicOrbit& orbit);

/// Q itself; Q > 0 is the orbital asymptotic stability criterion.
double criterion_generalized(const GeneralizedLienard& sys,
                             const PeriodicOrbit& orbit);

/// Quadrature of sum_{k>=1} k p_k(u) u'^{k-1} over the orbit.
double criterion_polynomial(const PolynomialLienard& p,
                            const PeriodicOrbit& orbit);

/// Quadrature of 2u^2 + 4uu' + 3u'^2 - 1 over the orbit (the bundled example
/// system's criterion integrand).
double criterion_example(const PeriodicOrbit& orbit);

/// J(tau0) = -I + [[-psi(a), 0], [0, 0]] + Phi(tau0).
Matrix2 jacobian_J(const Monodromy& mono, double psi_a);

inline bool nondegenerate(const Matrix2& j) {
  return std::abs(j.determinant()) > 1e-8;
}

/// Phi(tau0)_12 / psi(a)^2, the off-diagonal entry in the orbit-adapted
/// variables.
double pi_tau0(const Monodromy& mono, double psi_a);

StabilityReport stability_report(const GeneralizedLienard& sys,
                                 const PeriodicOrbit& orbit,
                                 const StepperConfig& cfg);

std::string to_text(const StabilityReport& report);
std::string stability_csv_header();
std::string to_csv_row(const StabilityReport& report);

}  // namespace lienard
