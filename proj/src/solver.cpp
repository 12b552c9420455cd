#include "pcpkit/solver.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include "pcpkit/errors.hpp"
#include "pcpkit/kernels.hpp"
#include "pcpkit/newton.hpp"
#include "pcpkit/rng.hpp"

namespace pcpkit {

void SolveConfig::validate() const {
  if (multistart_count < 0 || newton_max_iters < 1 || max_halvings < 0 ||
      enum_grid_per_axis < 2 || pattern_enum_dim_cap < 1)
    throw InvalidInput("SolveConfig: counts must be positive");
  if (!(feasibility_tol > 0) || !(complementarity_tol > 0) || !(search_radius > 0) ||
      !(dedup_tol > 0) || !(damping_factor > 0 && damping_factor < 1))
    throw InvalidInput("SolveConfig: tolerances must be positive");
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kSolved:
      return "solved";
    case SolveStatus::kAllSolutionsEnumerated:
      return "all-solutions-enumerated";
    case SolveStatus::kNoSolutionCertified:
      return "no-solution-certified";
    case SolveStatus::kBudgetExhausted:
      return "budget-exhausted";
  }
  return "?";
}

namespace {

double inf_norm(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

ResidualReport residuals(const PcpInstance& inst, const Vector& x) {
  ResidualReport r;
  const Vector y = inst.f.eval(x) + inst.q;
  for (int i = 0; i < inst.dim(); ++i) {
    r.nonnegativity = std::max(r.nonnegativity, -x[i]);
    r.feasibility = std::max(r.feasibility, -y[i]);
    r.complementarity += std::abs(x[i] * y[i]);
  }
  r.max_violation = std::max({r.nonnegativity, r.feasibility, r.complementarity});
  r.natural_residual = kernels::natural_residual_inf(
      std::span<const double>(x.data(), x.size()), std::span<const double>(y.data(), y.size()));
  return r;
}

// f with every coefficient replaced by its absolute value; |f|(|x|) bounds the
// size of the terms that cancel in f(x), hence the rounding error of f(x).
PolynomialMap abs_map(const PolynomialMap& f) {
  std::vector<Tensor> terms;
  for (const Tensor& t : f.terms()) {
    std::vector<double> c(t.coeffs().begin(), t.coeffs().end());
    for (double& v : c) v = std::abs(v);
    terms.emplace_back(t.order(), t.dim(), std::move(c));
  }
  return PolynomialMap(f.dim(), std::move(terms));
}

// Allowance for rounding in f(x) + q; negligible unless x is large.
double rounding_floor(const PolynomialMap& absf, const Vector& x) {
  return 64.0 * std::numeric_limits<double>::epsilon() *
         absf.eval(x.cwiseAbs()).cwiseAbs().maxCoeff();
}

bool passes(const ResidualReport& r, const SolveConfig& cfg, double floor = 0.0,
            double xnorm1 = 0.0) {
  return r.nonnegativity <= cfg.feasibility_tol && r.feasibility <= cfg.feasibility_tol + floor &&
         r.complementarity <= cfg.complementarity_tol + floor * xnorm1;
}

std::vector<int> support_indices(unsigned mask, int n) {
  std::vector<int> idx;
  for (int i = 0; i < n; ++i)
    if (mask & (1u << i)) idx.push_back(i);
  return idx;
}

Vector scatter(const std::vector<int>& idx, const Vector& y, int n) {
  Vector x = Vector::Zero(n);
  for (std::size_t r = 0; r < idx.size(); ++r) x[idx[r]] = y[r];
  return x;
}

Vector gather(const std::vector<int>& idx, const Vector& x) {
  Vector y(idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) y[r] = x[idx[r]];
  return y;
}

Matrix gather(const std::vector<int>& idx, const Matrix& a) {
  Matrix b(idx.size(), idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c < idx.size(); ++c) b(r, c) = a(idx[r], idx[c]);
  return b;
}

// |det| small relative to the row norms.
bool nearly_singular(const Matrix& a, double rel = 1e-10) {
  if (a.rows() == 0) return false;
  double scale = 1.0;
  for (Eigen::Index r = 0; r < a.rows(); ++r) scale *= std::max(a.row(r).norm(), 1e-300);
  return std::abs(a.determinant()) <= rel * scale;
}

NewtonOptions newton_options(const SolveConfig& cfg, double qscale) {
  NewtonOptions o;
  o.max_iters = cfg.newton_max_iters;
  o.max_halvings = cfg.max_halvings;
  o.backtrack = cfg.damping_factor;
  o.tol = 1e-12 * qscale;
  return o;
}

// Plain Newton steps while the residual keeps dropping. Roots of multiplicity
// above one converge only linearly, so the accepted iterate can sit 1e-5 away
// from the root; this pulls it down to the rounding floor before dedup.
Vector polish(const SmoothSystem& system, Vector x, int max_steps = 80) {
  if (x.size() == 0) return x;
  Vector g, g_try;
  Matrix jac, jac_try;
  system(x, g, jac);
  double res = inf_norm(g);
  for (int k = 0; k < max_steps && res > 0.0; ++k) {
    const Vector x_try = x - Eigen::CompleteOrthogonalDecomposition<Matrix>(jac).solve(g);
    if (!x_try.allFinite()) break;
    system(x_try, g_try, jac_try);
    const double r = inf_norm(g_try);
    if (!(r < res)) break;
    x = x_try;
    g = g_try;
    jac = jac_try;
    res = r;
  }
  return x;
}

}  // namespace

ResidualReport verify_solution(const PcpInstance& inst, const Vector& x, double tol) {
  if (x.size() != inst.dim()) throw InvalidInput("verify_solution: dimension mismatch");
  ResidualReport r = residuals(inst, x);
  r.pass = r.max_violation <= tol;
  return r;
}

SolveReport solve(const PcpInstance& inst, const SolveConfig& cfg) {
  cfg.validate();
  const int n = inst.dim();
  const int degree = inst.f.degree();
  const double qscale = 1.0 + inf_norm(inst.q);

  std::vector<Vector> starts;
  starts.push_back(Vector::Zero(n));
  Vector seed_point(n);
  for (int i = 0; i < n; ++i)
    seed_point[i] = std::pow(std::max(0.0, -inst.q[i]), 1.0 / degree);
  starts.push_back(seed_point);
  // The e_i rows of the generalized Jacobian send an overshooting coordinate
  // straight to zero, where a homogeneous f of degree >= 2 has a flat
  // Jacobian. Shrunken seeds and log-radial points reach the small solutions.
  for (double c : {0.5, 0.25, 0.125}) starts.push_back(c * seed_point);
  Rng rng(cfg.seed);
  for (int s = 0; s < cfg.multistart_count; ++s)
    starts.push_back(rng.uniform_vector(n, 0.0, cfg.search_radius));
  const int radial = std::max(1, cfg.multistart_count / 4);
  for (int s = 0; s < radial; ++s) {
    const Vector dir = rng.uniform_vector(n, 0.0, 1.0);
    const double r = std::pow(10.0, rng.uniform(-2.0, std::log10(cfg.search_radius)));
    starts.push_back(r * dir / std::max(inf_norm(dir), 1e-12));
  }

  const SmoothSystem natural_map = [&inst, n](const Vector& x, Vector& g, Matrix& jac) {
    const Vector y = inst.f.eval(x) + inst.q;
    const Matrix jf = inst.f.jacobian(x);
    g.resize(n);
    jac.resize(n, n);
    for (int i = 0; i < n; ++i) {
      if (x[i] < y[i]) {
        g[i] = x[i];
        jac.row(i).setZero();
        jac(i, i) = 1.0;
      } else {  // ties take the f-row
        g[i] = y[i];
        jac.row(i) = jf.row(i);
      }
    }
  };

  SolveReport rep;
  const NewtonOptions opts = newton_options(cfg, qscale);
  const PolynomialMap absf = abs_map(inst.f);
  for (const Vector& x0 : starts) {
    ++rep.starts_tried;
    const NewtonResult nr = damped_newton(natural_map, x0, opts);
    const double floor = rounding_floor(absf, nr.x);
    if (nr.residual > 1e-9 * qscale + floor) continue;
    const ResidualReport r = verify_solution(inst, nr.x, cfg.feasibility_tol);
    if (!passes(r, cfg, floor, nr.x.lpNorm<1>())) continue;
    rep.status = SolveStatus::kSolved;
    rep.solutions.push_back({nr.x, r});
    rep.solutions.back().residuals.pass = true;
    return rep;
  }
  rep.status = SolveStatus::kBudgetExhausted;
  rep.notes.push_back("no verified solution from " + std::to_string(rep.starts_tried) +
                      " starts");
  return rep;
}

SolveReport enumerate_solutions(const PcpInstance& inst, const SolveConfig& cfg) {
  cfg.validate();
  const int n = inst.dim();
  if (n > cfg.pattern_enum_dim_cap)
    throw InvalidInput("enumerate_solutions: n = " + std::to_string(n) +
                       " exceeds pattern-enum-dim-cap " +
                       std::to_string(cfg.pattern_enum_dim_cap));
  const double qscale = 1.0 + inf_norm(inst.q);
  const double radius = cfg.search_radius;
  const NewtonOptions opts = newton_options(cfg, qscale);

  const PolynomialMap absf = abs_map(inst.f);
  SolveReport rep;
  std::vector<Vector> found;
  rep.complete = true;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    const std::vector<int> idx = support_indices(mask, n);
    PatternDiagnostics diag;
    diag.support = mask;

    const SmoothSystem system = [&inst, &idx, n](const Vector& y, Vector& g, Matrix& jac) {
      const Vector x = scatter(idx, y, n);
      g = gather(idx, Vector(inst.f.eval(x) + inst.q));
      jac = gather(idx, inst.f.jacobian(x));
    };

    const std::vector<Vector> starts =
        grid_points(static_cast<int>(idx.size()), cfg.enum_grid_per_axis, 0.0, radius);
    std::vector<Vector> roots;
    int last_new = -1;
    for (std::size_t s = 0; s < starts.size(); ++s) {
      ++diag.starts;
      const NewtonResult nr = damped_newton(system, starts[s], opts);
      if (!nr.x.allFinite()) continue;
      const Vector x = scatter(idx, polish(system, nr.x), n);
      const double res = idx.empty() ? 0.0 : inf_norm(gather(idx, Vector(inst.f.eval(x) + inst.q)));
      if (res > 1e-9 * qscale + rounding_floor(absf, x)) continue;
      ++diag.converged;
      if (inf_norm(x) > radius * (1.0 + 1e-9)) continue;
      const Vector y = inst.f.eval(x) + inst.q;
      const double floor = rounding_floor(absf, x);
      bool signs = true;
      for (int i = 0; i < n; ++i) {
        if (x[i] < -cfg.feasibility_tol) signs = false;
        if (!(mask & (1u << i)) && y[i] < -cfg.feasibility_tol - floor) signs = false;
      }
      if (!signs) continue;
      if (insert_unique(roots, x, cfg.dedup_tol)) {
        last_new = static_cast<int>(s);
        if (!idx.empty() && nearly_singular(gather(idx, inst.f.jacobian(x))))
          diag.singular_root = true;
        if (inf_norm(x) > 0.9 * radius) diag.boundary_root = true;
      }
    }
    diag.roots = static_cast<int>(roots.size());
    diag.saturated = last_new < static_cast<int>(starts.size()) / 2 || starts.size() == 1;
    rep.starts_tried += diag.starts;
    if (!diag.saturated || diag.singular_root) rep.complete = false;
    for (const Vector& x : roots) insert_unique(found, x, cfg.dedup_tol);
    rep.patterns.push_back(diag);
  }

  // Newton on a singular piece (x_i^3 = 0, say) stops short of the face
  // x_i = 0 with a tiny residual. Such a root is moved onto the face when the
  // moved point still solves; a regular root is left alone.
  std::vector<Vector> snapped;
  for (const Vector& x : found) {
    const double small = 1e-4 * (1.0 + inf_norm(x));
    std::vector<int> keep, free;
    for (int i = 0; i < n; ++i) {
      if (x[i] > small) keep.push_back(i);
      if (x[i] != 0.0) free.push_back(i);
    }
    Vector z = x;
    if (keep.size() < free.size()) {
      const Matrix piece = gather(free, inst.f.jacobian(x));
      const Eigen::JacobiSVD<Matrix> svd(piece);
      const Vector sv = svd.singularValues();
      const bool singular = sv.size() > 0 && sv[sv.size() - 1] <= 1e-6 * (1.0 + sv[0]);
      if (singular) {
        const SmoothSystem face = [&inst, &keep, n](const Vector& y, Vector& g, Matrix& jac) {
          const Vector w = scatter(keep, y, n);
          g = gather(keep, Vector(inst.f.eval(w) + inst.q));
          jac = gather(keep, inst.f.jacobian(w));
        };
        const Vector cand = scatter(keep, polish(face, gather(keep, x)), n);
        ResidualReport r = verify_solution(inst, cand, cfg.feasibility_tol);
        if (passes(r, cfg, rounding_floor(absf, cand), cand.lpNorm<1>())) z = cand;
      }
    }
    insert_unique(snapped, z, cfg.dedup_tol);
  }
  found = std::move(snapped);

  sort_lex(found);
  for (const Vector& x : found) {
    ResidualReport r = verify_solution(inst, x, cfg.feasibility_tol);
    r.pass = passes(r, cfg, rounding_floor(absf, x), x.lpNorm<1>());
    if (r.pass) rep.solutions.push_back({x, r});
  }
  rep.status = SolveStatus::kAllSolutionsEnumerated;
  if (!rep.complete)
    rep.notes.push_back("best-effort: some pattern system unsaturated or with singular roots");
  return rep;
}

std::vector<Vector> find_cone_roots(const PolynomialMap& homogeneous,
                                    const ConeSearchOptions& opts, bool stop_at_first) {
  const int n = homogeneous.dim();
  double coef_scale = 1.0;
  for (const Tensor& t : homogeneous.terms()) coef_scale = std::max(coef_scale, t.max_abs());
  const double tol = opts.root_tol * coef_scale;
  Rng rng(opts.seed);
  std::vector<Vector> roots;
  std::vector<std::pair<int, Vector>> candidates;

  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    const std::vector<int> idx = support_indices(mask, n);
    const int k = static_cast<int>(idx.size());

    // simplex grid on the face, then random points
    std::vector<Vector> starts;
    {
      const int d = opts.simplex_divisions;
      std::vector<int> c(k, 0);
      std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == k - 1) {
          c[pos] = left;
          Vector u(k);
          for (int i = 0; i < k; ++i) u[i] = static_cast<double>(c[i]) / d;
          starts.push_back(u);
          return;
        }
        for (int v = 0; v <= left; ++v) {
          c[pos] = v;
          rec(pos + 1, left - v);
        }
      };
      rec(0, d);
      for (int r = 0; r < opts.random_per_face; ++r) {
        Vector u(k);
        for (int i = 0; i < k; ++i) u[i] = -std::log(1.0 - rng.uniform());
        starts.push_back(u / u.sum());
      }
    }

    const LeastSquaresSystem system = [&homogeneous, &idx, n, k](const Vector& u, Vector& r,
                                                                 Matrix& jac) {
      const Vector x = scatter(idx, u, n);
      r.resize(k + 1);
      r.head(k) = gather(idx, homogeneous.eval(x));
      r[k] = u.sum() - 1.0;
      jac.resize(k + 1, k);
      jac.topRows(k) = gather(idx, homogeneous.jacobian(x));
      jac.row(k).setOnes();
    };

    for (const Vector& u0 : starts) {
      const LmResult lm = levenberg_marquardt(system, u0, opts.lm_iters, tol);
      if (!lm.converged) continue;
      const Vector u = scatter(idx, lm.x, n);
      if ((u.array() < -1e-9).any()) continue;
      const Vector w = u.cwiseMax(0.0).normalized();
      const Vector fw = homogeneous.eval(w);
      const double res = kernels::natural_residual_inf(
          std::span<const double>(w.data(), n), std::span<const double>(fw.data(), n));
      if (res > 1e-8 * coef_scale) continue;
      if (stop_at_first) return {w};
      candidates.emplace_back(k, w);
    }
  }
  // A root of higher multiplicity on a face boundary also converges, slowly,
  // from the larger face; keep the copy with the smaller support.
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [k, w] : candidates) {
    bool near = false;
    for (const Vector& r : roots) near = near || (r - w).cwiseAbs().maxCoeff() <= 1e-3;
    if (!near) roots.push_back(w);
  }
  sort_lex(roots);
  return roots;
}

SolInftyVerdict check_sol_infty_zero(const PolynomialMap& f, const ConeSearchOptions& opts) {
  const PolynomialMap lead = f.leading_term();
  SolInftyVerdict v;
  const std::vector<Vector> roots = find_cone_roots(lead, opts, true);
  if (roots.empty()) {
    v.zero_only = true;
    v.note = "no nonzero root of min{u, f_inf(u)} found (sampling certificate)";
    return v;
  }
  v.zero_only = false;
  v.witness = roots.front();
  const Vector fw = lead.eval(v.witness);
  v.witness_residual = kernels::natural_residual_inf(
      std::span<const double>(v.witness.data(), v.witness.size()),
      std::span<const double>(fw.data(), fw.size()));
  v.note = "nonzero solution of PCP(f_inf, 0)";
  return v;
}

BoundednessReport boundedness_probe(const PolynomialMap& f, const std::vector<Vector>& K,
                                    const SolveConfig& cfg, int max_doublings) {
  if (!check_sol_infty_zero(f).zero_only)
    throw InvalidInput("boundedness_probe: SOL(f_inf, 0) has a nonzero element");
  if (f.dim() > cfg.pattern_enum_dim_cap)
    throw InvalidInput("boundedness_probe: n exceeds pattern-enum-dim-cap");
  BoundednessReport rep;
  for (const Vector& q : K) {
    ++rep.problems;
    const PcpInstance inst(f, q);
    SolveConfig c = cfg;
    SolveReport base = enumerate_solutions(inst, c);
    bool settled = false;
    for (int d = 0; d <= max_doublings; ++d) {
      SolveConfig wide_cfg = c;
      wide_cfg.search_radius = 2.0 * c.search_radius;
      SolveReport wide = enumerate_solutions(inst, wide_cfg);
      std::vector<Vector> a, b;
      for (const Solution& s : base.solutions) a.push_back(s.x);
      for (const Solution& s : wide.solutions) b.push_back(s.x);
      if (!a.empty() && same_set(a, b, cfg.dedup_tol)) {
        settled = true;
        double nb = 0.0, nw = 0.0;
        for (const Vector& x : a) nb = std::max(nb, x.norm());
        for (const Vector& x : b) nw = std::max(nw, x.norm());
        rep.max_norm = std::max(rep.max_norm, nb);
        rep.max_norm_doubled = std::max(rep.max_norm_doubled, nw);
        rep.max_radius = std::max(rep.max_radius, c.search_radius);
        break;
      }
      c = wide_cfg;
      base = std::move(wide);
    }
    if (settled) {
      ++rep.solved;
    } else {
      rep.boundary_hit = true;
      rep.unsolved_q.push_back(q);
    }
  }
  rep.stable = !rep.boundary_hit && std::isfinite(rep.max_norm) &&
               rep.max_norm_doubled <= rep.max_norm + cfg.dedup_tol;
  return rep;
}

UnsolvabilityCertificate certify_unsolvable(const PcpInstance& inst, const Vector& lo,
                                            const Vector& hi, double grid_step) {
  const int n = inst.dim();
  if (lo.size() != n || hi.size() != n) throw InvalidInput("certify_unsolvable: box dimension");
  if (!(grid_step > 0)) throw InvalidInput("certify_unsolvable: grid step must be positive");
  for (int i = 0; i < n; ++i)
    if (!(hi[i] >= lo[i])) throw InvalidInput("certify_unsolvable: empty box");

  UnsolvabilityCertificate cert;
  cert.box_lo = lo;
  cert.box_hi = hi;
  cert.grid_step = grid_step;
  cert.min_grid_residual = std::numeric_limits<double>::infinity();

  std::vector<long long> counts(n);
  for (int i = 0; i < n; ++i)
    counts[i] = static_cast<long long>(std::ceil((hi[i] - lo[i]) / grid_step - 1e-9)) + 1;
  auto coord = [&](int i, long long k) {
    return std::min(hi[i], lo[i] + static_cast<double>(k) * grid_step);
  };

  // Jacobian row-sum bound sampled on a coarse sub-grid plus the corners.
  double jac_bound = 0.0;
  {
    const int coarse = 33;
    std::vector<int> c(n, 0);
    while (true) {
      Vector x(n);
      for (int i = 0; i < n; ++i) x[i] = lo[i] + (hi[i] - lo[i]) * c[i] / (coarse - 1);
      const Matrix j = inst.f.jacobian(x);
      jac_bound = std::max(jac_bound, j.cwiseAbs().rowwise().sum().maxCoeff());
      int d = n - 1;
      while (d >= 0 && ++c[d] == coarse) c[d--] = 0;
      if (d < 0) break;
    }
  }
  cert.lipschitz = std::max(1.0, 1.25 * jac_bound);
  cert.margin = 0.5 * cert.lipschitz;

  std::vector<long long> k(n, 0);
  Vector x(n);
  while (true) {
    for (int i = 0; i < n; ++i) x[i] = coord(i, k[i]);
    const Vector y = inst.f.eval(x) + inst.q;
    const double r = kernels::natural_residual_inf(std::span<const double>(x.data(), n),
                                                   std::span<const double>(y.data(), n));
    ++cert.grid_points;
    if (r < cert.min_grid_residual) {
      cert.min_grid_residual = r;
      cert.argmin = x;
    }
    int d = n - 1;
    while (d >= 0 && ++k[d] == counts[d]) k[d--] = 0;
    if (d < 0) break;
  }
  cert.certified = cert.min_grid_residual > cert.margin * grid_step;
  return cert;
}

namespace {

// Roots of a t^2 + b t + c with a scale-aware zero test.
std::vector<double> real_roots_quadratic(double a, double b, double c, double eps) {
  std::vector<double> r;
  if (std::abs(a) <= eps) {
    if (std::abs(b) <= eps) return r;  // constant: caller handles
    r.push_back(-c / b);
    return r;
  }
  double disc = b * b - 4 * a * c;
  if (disc < 0 && disc > -eps * eps * 1e4) disc = 0;
  if (disc < 0) return r;
  const double s = std::sqrt(disc);
  r.push_back((-b - s) / (2 * a));
  r.push_back((-b + s) / (2 * a));
  return r;
}

struct Quadratic {
  double c = 0.0;
  Vector l;
  Matrix Q;  // symmetric; g(y) = c + l.y + y'Qy
};

}  // namespace

PatternConsistency analyze_pattern_system(const PcpInstance& inst, unsigned support) {
  const int n = inst.dim();
  PatternConsistency out;
  out.support = support;
  if (inst.f.top_order() > 3) {
    out.reason = "map is not quadratic";
    return out;
  }
  const std::vector<int> idx = support_indices(support, n);
  const int k = static_cast<int>(idx.size());
  if (k == 0) {
    out.reason = "empty pattern (x = 0)";
    return out;
  }

  // Exact coefficient extraction: the Jacobian of a quadratic is affine.
  std::vector<Quadratic> eqs(k);
  const Vector g0 = gather(idx, Vector(inst.f.eval(Vector::Zero(n)) + inst.q));
  const Matrix j0 = gather(idx, inst.f.jacobian(Vector::Zero(n)));
  double scale = 1.0 + inf_norm(inst.q);
  for (int r = 0; r < k; ++r) {
    eqs[r].c = g0[r];
    eqs[r].l = j0.row(r).transpose();
    eqs[r].Q = Matrix::Zero(k, k);
  }
  for (int c = 0; c < k; ++c) {
    Vector e = Vector::Zero(n);
    e[idx[c]] = 1.0;
    const Matrix jc = gather(idx, inst.f.jacobian(e));
    for (int r = 0; r < k; ++r) eqs[r].Q.col(c) = 0.5 * (jc.row(r) - j0.row(r)).transpose();
  }
  for (Quadratic& q : eqs) {
    q.Q = 0.5 * (q.Q + q.Q.transpose());
    scale = std::max({scale, q.l.cwiseAbs().maxCoeff(), q.Q.cwiseAbs().maxCoeff()});
  }
  const double eps = 1e-10 * scale;

  auto eval_eq = [](const Quadratic& q, const Vector& y) {
    return q.c + q.l.dot(y) + y.dot(q.Q * y);
  };

  if (k == 1) {
    const Quadratic& q = eqs[0];
    if (std::abs(q.Q(0, 0)) <= eps && std::abs(q.l[0]) <= eps) {
      if (std::abs(q.c) > eps) {
        out.verdict = PatternConsistency::Verdict::kInconsistent;
        out.reason = "equation reduces to a nonzero constant";
      }
      return out;
    }
    if (real_roots_quadratic(q.Q(0, 0), q.l[0], q.c, eps).empty()) {
      out.verdict = PatternConsistency::Verdict::kInconsistent;
      out.reason = "univariate quadratic has no real root";
    }
    return out;
  }

  // Candidate multipliers: single equations and singular pencil members.
  std::vector<Vector> weights;
  for (int r = 0; r < k; ++r) weights.push_back(Vector::Unit(k, r));
  for (int r = 0; r < k; ++r) {
    for (int s = r + 1; s < k; ++s) {
      std::vector<double> ts;
      if (k == 2) {
        auto det_at = [&](double t) { return (eqs[r].Q + t * eqs[s].Q).determinant(); };
        const double d0 = det_at(0.0), dp = det_at(1.0), dm = det_at(-1.0);
        const double a = 0.5 * (dp + dm) - d0, b = 0.5 * (dp - dm);
        ts = real_roots_quadratic(a, b, d0, eps * eps);
      } else {
        Eigen::GeneralizedEigenSolver<Matrix> ges(eqs[r].Q, -eqs[s].Q);
        for (Eigen::Index i = 0; i < ges.alphas().size(); ++i) {
          const std::complex<double> al = ges.alphas()[i];
          const double be = ges.betas()[i];
          if (std::abs(be) < 1e-14) continue;
          const std::complex<double> t = al / be;
          if (std::abs(t.imag()) <= 1e-6 * (1.0 + std::abs(t.real()))) ts.push_back(t.real());
        }
      }
      for (double t : ts) {
        Vector w = Vector::Zero(k);
        w[r] = 1.0;
        w[s] = t;
        weights.push_back(w);
      }
    }
  }

  for (const Vector& w0 : weights) {
    for (double sign : {1.0, -1.0}) {
      const Vector w = sign * w0;
      Quadratic h;
      h.c = 0.0;
      h.l = Vector::Zero(k);
      h.Q = Matrix::Zero(k, k);
      for (int r = 0; r < k; ++r) {
        h.c += w[r] * eqs[r].c;
        h.l += w[r] * eqs[r].l;
        h.Q += w[r] * eqs[r].Q;
      }
      Eigen::SelfAdjointEigenSolver<Matrix> es(h.Q);
      const Vector& ev = es.eigenvalues();
      const double hq = eps * (1.0 + w.cwiseAbs().maxCoeff());
      if (ev.minCoeff() < -hq) continue;  // not semidefinite in this sign
      // kernel of Q and the linear part's component in it
      std::vector<int> ker, rng_idx;
      for (int i = 0; i < k; ++i) (ev[i] <= hq ? ker : rng_idx).push_back(i);
      const Matrix& V = es.eigenvectors();
      bool linear_in_kernel = false;
      for (int i : ker)
        if (std::abs(V.col(i).dot(h.l)) > hq) linear_in_kernel = true;
      if (linear_in_kernel) continue;  // unbounded below, zero set is a quadric
      Vector y0 = Vector::Zero(k);
      for (int i : rng_idx) y0 -= 0.5 * V.col(i).dot(h.l) / ev[i] * V.col(i);
      const double hmin = eval_eq(h, y0);
      if (hmin > hq) {
        out.verdict = PatternConsistency::Verdict::kInconsistent;
        out.multipliers = w;
        out.subspace_point = y0;
        out.reason = "a combination of the equations is bounded below by a positive constant";
        return out;
      }
      if (hmin < -hq) continue;
      // zero set of the combination is y0 + ker(Q)
      if (ker.empty()) {
        for (const Quadratic& q : eqs) {
          if (std::abs(eval_eq(q, y0)) > hq) {
            out.verdict = PatternConsistency::Verdict::kInconsistent;
            out.multipliers = w;
            out.subspace_point = y0;
            out.reason = "combination vanishes at a single point where the system fails";
            return out;
          }
        }
        continue;
      }
      if (ker.size() != 1) continue;
      const Vector v = V.col(ker.front());
      // restrict every equation to the line y0 + t v
      std::vector<std::vector<double>> root_sets;
      bool inconsistent = false;
      std::string why;
      for (const Quadratic& q : eqs) {
        const double p0 = eval_eq(q, y0);
        const double pp = eval_eq(q, Vector(y0 + v));
        const double pm = eval_eq(q, Vector(y0 - v));
        const double a = 0.5 * (pp + pm) - p0, b = 0.5 * (pp - pm);
        if (std::abs(a) <= hq && std::abs(b) <= hq) {
          if (std::abs(p0) > hq) {
            inconsistent = true;
            why = "on the zero set of the combination an equation reduces to the nonzero constant " +
                  std::to_string(p0);
            break;
          }
          continue;  // identically zero on the line
        }
        std::vector<double> rts = real_roots_quadratic(a, b, p0, hq);
        if (rts.empty()) {
          inconsistent = true;
          why = "restricted equation has no real root";
          break;
        }
        root_sets.push_back(std::move(rts));
      }
      if (!inconsistent && root_sets.size() >= 2) {
        bool common = false;
        for (double t : root_sets.front()) {
          bool all = true;
          for (std::size_t s = 1; s < root_sets.size(); ++s) {
            bool hit = false;
            for (double u : root_sets[s])
              if (std::abs(t - u) <= 1e-8 * (1.0 + std::abs(t))) hit = true;
            all = all && hit;
          }
          common = common || all;
        }
        if (!common) {
          inconsistent = true;
          why = "restricted equations have no common real root";
        }
      }
      if (inconsistent) {
        out.verdict = PatternConsistency::Verdict::kInconsistent;
        out.multipliers = w;
        out.subspace_point = y0;
        out.direction = v;
        out.reason = why;
        return out;
      }
    }
  }
  out.reason = "no semidefinite combination certifies inconsistency";
  return out;
}

}  // namespace pcpkit
