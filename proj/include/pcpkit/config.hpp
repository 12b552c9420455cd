#pragma once

#include <Eigen/Core>

namespace pcpkit {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Numerical tolerances shared by every module. All fields are overridable;
/// the defaults are what the reports and the acceptance suite are pinned to.
struct Tolerances {
  double feasibility = 1e-8;      // x >= -tol, f(x)+q >= -tol
  double complementarity = 1e-8;  // |x_i (f(x)+q)_i| <= tol
  double jacobian_fd = 1e-5;      // analytic vs central differences
  double dedup = 1e-6;            // infinity-distance for merging roots
  double tie = 1e-6;              // min-selection margin for regular values
  double singular_det = 1e-12;    // |det| below this is singular
  double root_residual = 1e-12;   // Newton convergence on smooth pieces
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

}  // namespace pcpkit
