#pragma once

#include <functional>
#include <vector>

#include "pcpkit/config.hpp"

namespace pcpkit {

struct NewtonOptions {
  int max_iters = 100;
  int max_halvings = 30;
  double backtrack = 0.5;
  double armijo = 1e-4;
  double tol = 1e-12;            // on ||g||_inf
  double divergence_norm = 1e9;  // abandon once ||x||_inf exceeds this
};

struct NewtonResult {
  Vector x;
  double residual = 0.0;  // ||g(x)||_inf at exit
  int iters = 0;
  bool converged = false;
  bool diverged = false;
};

/// Fills g(x) and its Jacobian.
using SmoothSystem = std::function<void(const Vector& x, Vector& g, Matrix& jac)>;

/// Newton's method with Armijo backtracking on 0.5*||g||^2. Falls back to a
/// Levenberg-Marquardt step when the Jacobian is numerically singular.
NewtonResult damped_newton(const SmoothSystem& system, Vector x0,
                           const NewtonOptions& opts = {});

struct LmResult {
  Vector x;
  double residual = 0.0;  // ||r(x)||_inf at exit
  int iters = 0;
  bool converged = false;
};

/// Residual r(x) (any length) and its Jacobian.
using LeastSquaresSystem = std::function<void(const Vector& x, Vector& r, Matrix& jac)>;

/// Levenberg-Marquardt on 0.5*||r||^2; stops at ||r||_inf <= tol, after
/// max_iters, or when progress stalls.
LmResult levenberg_marquardt(const LeastSquaresSystem& system, Vector x0,
                             int max_iters, double tol);

/// Appends x unless an entry within `tol` (infinity norm) already exists.
/// Returns true when x was added.
bool insert_unique(std::vector<Vector>& set, const Vector& x, double tol);

/// Set equality up to `tol` in the infinity norm.
bool same_set(const std::vector<Vector>& a, const std::vector<Vector>& b, double tol);

/// Tensor-product grid with `per_axis` points on [lo, hi] per coordinate.
/// dim == 0 yields a single empty vector.
std::vector<Vector> grid_points(int dim, int per_axis, double lo, double hi);

/// Sorts vectors lexicographically, for deterministic report order.
void sort_lex(std::vector<Vector>& v);

}  // namespace pcpkit
