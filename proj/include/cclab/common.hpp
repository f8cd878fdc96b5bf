#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace cclab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Thrown when a caller violates an operation's stated preconditions
/// (bad dimensions, degenerate frames, out-of-range indices, wrong sign of c).
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown on malformed scenario/config input. The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace cclab
