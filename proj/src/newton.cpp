#include "pcpkit/newton.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace pcpkit {

namespace {

double inf_norm(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

Vector newton_direction(const Matrix& jac, const Vector& g) {
  Eigen::FullPivLU<Matrix> lu(jac);
  lu.setThreshold(1e-13);
  if (lu.isInvertible()) {
    Vector d = -lu.solve(g);
    if (d.allFinite()) return d;
  }
  const Matrix jtj = jac.transpose() * jac;
  const double mu = 1e-10 * (1.0 + jtj.diagonal().cwiseAbs().maxCoeff());
  return -(jtj + mu * Matrix::Identity(jac.cols(), jac.cols()))
              .ldlt()
              .solve(jac.transpose() * g);
}

}  // namespace

NewtonResult damped_newton(const SmoothSystem& system, Vector x0,
                           const NewtonOptions& opts) {
  NewtonResult res;
  const Eigen::Index n = x0.size();
  res.x = std::move(x0);
  if (n == 0) {
    res.converged = true;
    return res;
  }
  Vector g(n), g_try(n);
  Matrix jac(n, n), jac_try(n, n);
  system(res.x, g, jac);
  double phi = 0.5 * g.squaredNorm();
  res.residual = inf_norm(g);

  for (; res.iters < opts.max_iters; ++res.iters) {
    if (!std::isfinite(phi)) break;
    if (res.residual <= opts.tol) {
      res.converged = true;
      return res;
    }
    const Vector d = newton_direction(jac, g);
    if (!d.allFinite()) break;

    double t = 1.0;
    bool accepted = false;
    Vector x_try;
    for (int h = 0; h <= opts.max_halvings; ++h) {
      x_try = res.x + t * d;
      system(x_try, g_try, jac_try);
      const double phi_try = 0.5 * g_try.squaredNorm();
      if (std::isfinite(phi_try) && phi_try <= (1.0 - 2.0 * opts.armijo * t) * phi) {
        accepted = true;
        phi = phi_try;
        break;
      }
      t *= opts.backtrack;
    }
    if (!accepted) break;
    res.x = x_try;
    g = g_try;
    jac = jac_try;
    res.residual = inf_norm(g);
    if (inf_norm(res.x) > opts.divergence_norm) {
      res.diverged = true;
      return res;
    }
  }
  res.converged = res.residual <= opts.tol;
  return res;
}

LmResult levenberg_marquardt(const LeastSquaresSystem& system, Vector x0,
                             int max_iters, double tol) {
  LmResult res;
  res.x = std::move(x0);
  Vector r, r_try;
  Matrix jac, jac_try;
  system(res.x, r, jac);
  double phi = 0.5 * r.squaredNorm();
  res.residual = inf_norm(r);
  double lambda = 1e-3;
  int stalled = 0;
  for (; res.iters < max_iters; ++res.iters) {
    if (res.residual <= tol) {
      res.converged = true;
      return res;
    }
    const Matrix jtj = jac.transpose() * jac;
    const Vector grad = jac.transpose() * r;
    const double diag_scale = 1.0 + jtj.diagonal().maxCoeff();
    bool accepted = false;
    for (int tries = 0; tries < 12; ++tries) {
      const Matrix lhs = jtj + lambda * diag_scale * Matrix::Identity(jtj.rows(), jtj.cols());
      const Vector d = -lhs.ldlt().solve(grad);
      if (!d.allFinite()) break;
      const Vector x_try = res.x + d;
      system(x_try, r_try, jac_try);
      const double phi_try = 0.5 * r_try.squaredNorm();
      if (std::isfinite(phi_try) && phi_try < phi) {
        stalled = (phi - phi_try) <= 1e-12 * phi ? stalled + 1 : 0;
        res.x = x_try;
        r = r_try;
        jac = jac_try;
        phi = phi_try;
        lambda = std::max(lambda * 0.3, 1e-12);
        accepted = true;
        break;
      }
      lambda *= 10.0;
    }
    res.residual = inf_norm(r);
    if (!accepted || stalled >= 5) break;
  }
  res.converged = res.residual <= tol;
  return res;
}

bool insert_unique(std::vector<Vector>& set, const Vector& x, double tol) {
  for (const Vector& y : set)
    if (y.size() == x.size() && (y - x).cwiseAbs().maxCoeff() <= tol) return false;
  set.push_back(x);
  return true;
}

bool same_set(const std::vector<Vector>& a, const std::vector<Vector>& b, double tol) {
  auto covered = [tol](const std::vector<Vector>& from, const std::vector<Vector>& in) {
    for (const Vector& x : from) {
      bool hit = false;
      for (const Vector& y : in)
        if (y.size() == x.size() && (y - x).cwiseAbs().maxCoeff() <= tol) {
          hit = true;
          break;
        }
      if (!hit) return false;
    }
    return true;
  };
  return covered(a, b) && covered(b, a);
}

std::vector<Vector> grid_points(int dim, int per_axis, double lo, double hi) {
  std::vector<Vector> pts;
  if (dim == 0) {
    pts.emplace_back(0);
    return pts;
  }
  std::vector<double> axis(per_axis);
  for (int i = 0; i < per_axis; ++i)
    axis[i] = per_axis == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (per_axis - 1);
  std::vector<int> ctr(dim, 0);
  while (true) {
    Vector p(dim);
    for (int d = 0; d < dim; ++d) p[d] = axis[ctr[d]];
    pts.push_back(std::move(p));
    int d = dim - 1;
    while (d >= 0 && ++ctr[d] == per_axis) ctr[d--] = 0;
    if (d < 0) break;
  }
  return pts;
}

void sort_lex(std::vector<Vector>& v) {
  std::sort(v.begin(), v.end(), [](const Vector& a, const Vector& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                        b.data() + b.size());
  });
}

}  // namespace pcpkit
