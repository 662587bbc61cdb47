#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace lienard {

/// Planar phase-space point. Ordering is fixed project-wide:
/// x = (x1, x2) = (u', u), i.e. velocity first, position second.
using State = Eigen::Vector2d;
using Matrix2 = Eigen::Matrix2d;

inline double uprime(const State& x) { return x(0); }
inline double upos(const State& x) { return x(1); }
inline State make_state(double uprime_value, double u_value) {
  return State(uprime_value, u_value);
}

inline bool is_finite(const State& x) {
  return std::isfinite(x(0)) && std::isfinite(x(1));
}

/// A right-hand side or coefficient function produced a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(std::string msg, const State& x)
      : std::runtime_error(std::move(msg)), state(x) {}
  State state;
};

/// Trajectory norm exceeded the blow-up threshold.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(std::string msg, double t)
      : std::runtime_error(std::move(msg)), last_valid_time(t) {}
  double last_valid_time;
};

/// The trajectory never recrossed the Poincare section within the horizon.
class NoReturnError : public std::runtime_error {
 public:
  NoReturnError(std::string msg, double horizon)
      : std::runtime_error(std::move(msg)), horizon(horizon) {}
  double horizon;
};

/// An iterative search exhausted its iteration budget.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(std::string msg, int iterations)
      : std::runtime_error(std::move(msg)), iterations(iterations) {}
  int iterations;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lienard
