#pragma once

#include "lienard/systems.hpp"

#include <string>
#include <vector>

namespace lienard {

struct Grid {
  double x_min = -6.0, x_max = 6.0;
  double y_min = -6.0, y_max = 6.0;
  double resolution = 1e-2;
};

struct ConditionWitness {
  std::string condition;
  double x = 0.0, y = 0.0;
};

/// Numerical check of the Levinson-Smith hypotheses on a sampling grid.
/// Failed conditions are reported, never thrown.
struct CLSReport {
  bool psi_sign_ok = false;                  ///< x psi(x) > 0 for x != 0
  bool psi_primitive_divergence_ok = false;  ///< Psi(x) = int_0^x psi grows superlinearly
  double phi00 = 0.0;
  bool phi00_negative = false;
  double x0 = 0.0;  ///< smallest grid value with phi >= 0 for all |x| >= x0
  double M = 0.0;   ///< max(0, -min phi over |x| <= x0)
  double x1 = 0.0;  ///< first grid value with int_{x0}^{x1} phi(x, y(x)) dx >= 10 M x0
                    ///< for the whole decreasing-positive test family
  bool integral_bound_ok = false;
  std::vector<ConditionWitness> witnesses;  ///< one entry per failed condition
  Grid grid;

  bool all_ok() const {
    return psi_sign_ok && psi_primitive_divergence_ok && phi00_negative &&
           integral_bound_ok;
  }
};

struct DeCastroViolation {
  double x = 0.0, y = 0.0;    // inner point
  double x2 = 0.0, y2 = 0.0;  // outer point with smaller phi
};

/// Uniqueness hypotheses: psi(x) = x and phi nondecreasing along rays from
/// the origin (non-strict reading of "increases").
struct DeCastroReport {
  bool psi_is_identity = false;
  bool phi_monotone_ok = false;
  std::vector<DeCastroViolation> violations;
  Grid grid;

  bool all_ok() const { return psi_is_identity && phi_monotone_ok; }
};

/// The x1 scan tests a parametric decreasing-positive family y(x):
/// constants y = c, linear decay c(1 - (x-x0)/L) with L = 2(x_max - x0), and
/// exponential decay c exp(-(x-x0)), with c spanning the positive y range.
/// "Every decreasing positive function" is not decidable numerically; see
/// cls_example_bound for the closed-form bound covering all of them on the
/// bundled example.
CLSReport check_cls(const GeneralizedLienard& sys, const Grid& grid);

/// 1 + 60^(1/3): the damping-integral bound x1 for the bundled example
/// system with x0 = 1, M = 1, valid for every decreasing positive y(x).
double cls_example_bound();

DeCastroReport check_de_castro(const GeneralizedLienard& sys,
                               const Grid& grid);

std::string to_text(const CLSReport& report);
std::string to_text(const DeCastroReport& report);

}  // namespace lienard
