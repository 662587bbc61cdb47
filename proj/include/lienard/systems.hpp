#pragma once

#include "lienard/types.hpp"

#include <functional>
#include <string>
#include <vector>

namespace lienard {

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

enum class DerivativeMode { analytic, finite_difference };

/// Generalized Lienard equation  u'' + phi(u, u') u' + psi(u) = 0.
///
/// All two-argument closures take (u, v) with v = u'.  The planar first-order
/// form uses the (u', u) state ordering, see eval_rhs.
struct GeneralizedLienard {
  Fn2 phi;
  Fn1 psi;
  Fn2 dphi_dv;  ///< d phi / d u'
  Fn2 dphi_du;  ///< d phi / d u
  Fn1 dpsi_du;
  DerivativeMode derivative_mode = DerivativeMode::analytic;
};

/// Build a system with user-supplied analytic partial derivatives.
GeneralizedLienard make_system(Fn2 phi, Fn1 psi, Fn2 dphi_dv, Fn2 dphi_du,
                               Fn1 dpsi_du);

/// Build a system whose derivatives are central finite differences of
/// phi/psi, step max(1e-6, 1e-8*|argument|).
GeneralizedLienard make_system(Fn2 phi, Fn1 psi);

/// Equation  u'' + sum_{k=0..n} p_k(u) u'^k = 0, given by the coefficient
/// polynomials p_k in ascending powers of u.
struct PolynomialLienard {
  std::vector<Eigen::VectorXd> coeffs;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

double polyval(const Eigen::VectorXd& c, double u);
Eigen::VectorXd polyder(const Eigen::VectorXd& c);

/// Checks n >= 1 and p_n != 0 (throws std::invalid_argument otherwise) and
/// returns warnings, e.g. when the last nonzero term has even index.
std::vector<std::string> validate(const PolynomialLienard& p);

/// Planar vector field:  x1' = -phi(x2, x1) x1 - psi(x2),  x2' = x1.
State eval_rhs(const GeneralizedLienard& sys, const State& x);

/// Same field evaluated directly from the power sum, x1' = -sum p_k(x2) x1^k.
State eval_rhs(const PolynomialLienard& p, const State& x);

/// Jacobian of the planar field:
/// [[-dphi_dv*x1 - phi, -dphi_du*x1 - dpsi_du], [1, 0]].
Matrix2 jacobian(const GeneralizedLienard& sys, const State& x);

/// psi = p_0, phi(u, v) = sum_{k>=1} p_k(u) v^{k-1}, with exact polynomial
/// derivatives.
GeneralizedLienard poly_to_generalized(const PolynomialLienard& p);

/// The bundled example  u'' + [u^2 + (u + u')^2 - 1] u' + u = 0  in
/// coefficient form: p0 = u, p1 = 2u^2 - 1, p2 = 2u, p3 = 1.
PolynomialLienard example_equation();

GeneralizedLienard example6();  ///< converted form of example_equation()
GeneralizedLienard harmonic();  ///< u'' + u = 0
GeneralizedLienard vanderpol(double mu = 1.0);  ///< u'' + mu (u^2 - 1) u' + u = 0

/// Max relative mismatch between the stored derivative closures and central
/// finite differences at `samples` points drawn from [-3,3]^2.
double derivative_check(const GeneralizedLienard& sys, int samples,
                        unsigned seed);

}  // namespace lienard
