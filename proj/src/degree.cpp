#include "pcpkit/degree.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pcpkit/errors.hpp"
#include "pcpkit/newton.hpp"
#include "pcpkit/rng.hpp"

namespace pcpkit {

const char* to_string(DegreeMethod m) {
  switch (m) {
    case DegreeMethod::kRegularValue:
      return "regular-value";
    case DegreeMethod::kWinding2d:
      return "winding-2d";
    case DegreeMethod::kBoth:
      return "both";
  }
  return "?";
}

namespace {

double inf_norm(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

struct Attempt {
  bool regular = true;
  std::vector<Preimage> preimages;
};

// f_i(x) + q_i is identically x_i: both sides of the min agree everywhere,
// so the coordinate is always counted on the x side and never a tie.
unsigned trivial_coordinates(const PolynomialMap& f, const Vector& q) {
  const int n = f.dim();
  unsigned bits = 0;
  for (int i = 0; i < n; ++i) {
    bool linear_ok = false, rest_zero = q[i] == 0.0;
    for (const Tensor& t : f.terms()) {
      const std::size_t len = ipow(n, t.order() - 1);
      const auto row = t.coeffs().subspan(i * len, len);
      if (t.order() == 2) {
        linear_ok = true;
        for (int j = 0; j < n; ++j)
          if (row[j] != (j == i ? 1.0 : 0.0)) linear_ok = false;
      } else {
        for (double c : row)
          if (c != 0.0) rest_zero = false;
      }
    }
    if (linear_ok && rest_zero) bits |= 1u << i;
  }
  return bits;
}

int default_grid(int n) { return n <= 2 ? 9 : (n == 3 ? 6 : 5); }

// Preimages of p under min{x, f(x)+q} inside |x|_inf <= r.
Attempt count_preimages(const PolynomialMap& f, const Vector& q, const Vector& p, double r,
                        const DegreeOptions& opts) {
  const int n = f.dim();
  const double pn = inf_norm(p);
  const int per_axis = opts.grid_per_axis > 0 ? opts.grid_per_axis : default_grid(n);
  NewtonOptions nopt;
  nopt.tol = 1e-14 * (1.0 + inf_norm(q));
  nopt.max_iters = 200;
  const unsigned trivial = trivial_coordinates(f, q);
  Attempt out;

  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if ((mask & trivial) != trivial) continue;
    std::vector<int> freev;
    for (int i = 0; i < n; ++i)
      if (!(mask & (1u << i))) freev.push_back(i);
    const int k = static_cast<int>(freev.size());
    auto assemble = [&](const Vector& u) {
      Vector x = p;
      for (int c = 0; c < k; ++c) x[freev[c]] = u[c];
      return x;
    };
    const SmoothSystem system = [&](const Vector& u, Vector& g, Matrix& jac) {
      const Vector x = assemble(u);
      const Vector y = f.eval(x) + q;
      const Matrix j = f.jacobian(x);
      g.resize(k);
      jac.resize(k, k);
      for (int r2 = 0; r2 < k; ++r2) {
        g[r2] = y[freev[r2]] - p[freev[r2]];
        for (int c = 0; c < k; ++c) jac(r2, c) = j(freev[r2], freev[c]);
      }
    };

    std::vector<Vector> roots;
    for (const Vector& u0 : grid_points(k, per_axis, -pn, r)) {
      Vector u = u0;
      if (k > 0) {
        const NewtonResult nr = damped_newton(system, u0, nopt);
        if (nr.residual > 1e-12 * (1.0 + inf_norm(q))) continue;
        u = nr.x;
      }
      const Vector x = assemble(u);
      if (inf_norm(x) > r) continue;
      if (!insert_unique(roots, x, 1e-9 * (1.0 + inf_norm(x)))) continue;

      const Vector y = f.eval(x) + q;
      double margin = std::numeric_limits<double>::infinity();
      bool selected = true, near = true;
      for (int i = 0; i < n; ++i) {
        if (trivial & (1u << i)) continue;
        const double gap = (mask & (1u << i)) ? y[i] - x[i] : x[i] - y[i];
        margin = std::min(margin, std::abs(gap));
        if (gap < 0.0) selected = false;
        if (gap < -opts.tie) near = false;
      }
      if (near && margin <= opts.tie) {
        out.regular = false;
        return out;
      }
      if (!selected) continue;
      int sign = 1;
      if (k > 0) {
        Matrix jac;
        Vector g;
        system(u, g, jac);
        double scale = 1.0;
        for (int r2 = 0; r2 < k; ++r2) scale *= std::max(jac.row(r2).norm(), 1e-300);
        const double det = jac.determinant();
        if (std::abs(det) <= opts.singular_rel * scale) {
          out.regular = false;
          return out;
        }
        sign = det > 0 ? 1 : -1;
      }
      out.preimages.push_back({x, mask, sign, margin});
    }
  }
  return out;
}

bool same_preimages(const std::vector<Preimage>& a, const std::vector<Preimage>& b) {
  std::vector<Vector> xa, xb;
  for (const Preimage& p : a) xa.push_back(p.x);
  for (const Preimage& p : b) xb.push_back(p.x);
  return same_set(xa, xb, 1e-7);
}

}  // namespace

DegreeEstimate min_map_degree(const PolynomialMap& f, const Vector& q, const DegreeOptions& opts) {
  const int n = f.dim();
  if (q.size() != n) throw InvalidInput("min_map_degree: dimension mismatch");
  if (n > 4) throw InvalidInput("min_map_degree: n > 4");
  Rng rng(opts.seed);

  for (int attempt = 0; attempt <= opts.max_retries; ++attempt) {
    Vector p = rng.uniform_vector(n, -1.0, 1.0);
    p *= rng.uniform(1e-3, 1e-2) / inf_norm(p);

    DegreeEstimate est;
    est.method = DegreeMethod::kRegularValue;
    est.regular_value = p;
    est.retries = attempt;

    bool regular = true;
    if (opts.fixed_radius > 0) {
      Attempt a = count_preimages(f, q, p, opts.fixed_radius, opts);
      regular = a.regular;
      est.preimages = std::move(a.preimages);
      est.search_radius = opts.fixed_radius;
    } else {
      double r = opts.initial_radius;
      Attempt prev = count_preimages(f, q, p, r, opts);
      regular = prev.regular;
      bool stable = false;
      for (int d = 0; (d < opts.max_doublings || r < opts.min_radius) && d < 40 && regular; ++d) {
        Attempt next = count_preimages(f, q, p, 2 * r, opts);
        regular = next.regular;
        if (!regular) break;
        // union: the coarser grid of the larger box may miss small roots
        std::vector<Preimage> merged = next.preimages;
        for (const Preimage& pre : prev.preimages) {
          bool dup = false;
          for (const Preimage& m : merged)
            if ((m.x - pre.x).cwiseAbs().maxCoeff() <= 1e-7) dup = true;
          if (!dup) merged.push_back(pre);
        }
        r *= 2;
        const bool same = same_preimages(merged, prev.preimages);
        prev.preimages = std::move(merged);
        if (same && r >= opts.min_radius) {
          stable = true;
          break;
        }
      }
      est.preimages = std::move(prev.preimages);
      est.search_radius = r;
      if (regular && !stable)
        est.assumptions.push_back("preimage set did not stabilize by radius " +
                                  std::to_string(r));
    }
    if (!regular) continue;
    est.tie_margin = std::numeric_limits<double>::infinity();
    std::sort(est.preimages.begin(), est.preimages.end(),
              [](const Preimage& a, const Preimage& b) {
                return std::lexicographical_compare(a.x.data(), a.x.data() + a.x.size(),
                                                    b.x.data(), b.x.data() + b.x.size());
              });
    for (const Preimage& pre : est.preimages) {
      est.value += pre.sign;
      est.tie_margin = std::min(est.tie_margin, pre.margin);
    }
    return est;
  }
  throw DegenerateInput("min_map_degree: no regular value found after " +
                        std::to_string(opts.max_retries) + " retries");
}

namespace {

// For |u|_inf = 1 and s >= 1 every component of min{s u, s^d F(u)} is at
// least s |min{u_i, F_i(u)}| in size, so preimages of p lie in the box of
// radius max(1, |p| / m0) with m0 the minimum of |min{u, F(u)}|_inf over the
// unit sphere. m0 is estimated on a grid of the sphere's faces.
double sphere_margin(const PolynomialMap& F) {
  const int n = F.dim();
  const int per_axis = n == 2 ? 401 : n == 3 ? 61 : 17;
  const std::vector<Vector> face = grid_points(n - 1, per_axis, -1.0, 1.0);
  double m0 = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (double side : {-1.0, 1.0}) {
      for (const Vector& g : face) {
        Vector u(n);
        for (int j = 0, c = 0; j < n; ++j) u[j] = j == i ? side : g[c++];
        m0 = std::min(m0, inf_norm(u.cwiseMin(F.eval(u))));
      }
    }
  }
  return m0;
}

}  // namespace

DegreeEstimate local_degree_min_map(const PolynomialMap& F, const DegreeOptions& opts) {
  if (!F.is_homogeneous()) throw InvalidInput("local_degree_min_map: map must be homogeneous");
  if (F.dim() > 4) throw InvalidInput("local_degree_min_map: n > 4");
  const SolInftyVerdict v = check_sol_infty_zero(F);
  if (!v.zero_only)
    throw InvalidInput("local_degree_min_map: SOL(F, 0) has a nonzero element");
  DegreeOptions o = opts;
  o.fixed_radius = 0.0;
  // regular values have |p|_inf <= 1e-2; the grid estimate of m0 is halved
  // since it can only overstate the true minimum
  const double m0 = 0.5 * sphere_margin(F);
  if (m0 > 0) o.min_radius = std::max(o.min_radius, std::min(1e4, 1e-2 / m0));
  DegreeEstimate est = min_map_degree(F, Vector::Zero(F.dim()), o);
  est.assumptions.insert(est.assumptions.begin(), "SOL(F,0)={0} (sampling certificate)");
  return est;
}

int winding_degree_2d(const PolynomialMap& F, const WindingOptions& opts,
                      const std::optional<Vector>& q) {
  if (F.dim() != 2) throw InvalidInput("winding_degree_2d: n must be 2");
  if (!(opts.radius > 0) || opts.samples < 4)
    throw InvalidInput("winding_degree_2d: bad radius or sample count");
  const Vector qq = q ? *q : Vector::Zero(2);
  const double two_pi = 2.0 * std::numbers::pi;

  auto angle_at = [&](double theta) {
    Vector x(2);
    x << opts.radius * std::cos(theta), opts.radius * std::sin(theta);
    const Vector y = F.eval(x) + qq;
    const Vector v = x.cwiseMin(y);
    if (v.norm() < 1e-9)
      throw DegenerateInput("winding_degree_2d: min-map vanishes on the circle at angle " +
                            std::to_string(theta));
    return std::atan2(v[1], v[0]);
  };
  auto wrap = [&](double d) {
    while (d > std::numbers::pi) d -= two_pi;
    while (d <= -std::numbers::pi) d += two_pi;
    return d;
  };

  double total = 0.0;
  // Recursive refinement of [t0, t1] until each angle step is below pi/2.
  std::function<double(double, double, double, double, int)> arc =
      [&](double t0, double a0, double t1, double a1, int depth) -> double {
    const double d = wrap(a1 - a0);
    if (std::abs(d) < std::numbers::pi / 2) return d;
    if (depth >= opts.max_depth)
      throw RefinementFailure("winding_degree_2d: angle step did not resolve");
    const double tm = 0.5 * (t0 + t1);
    const double am = angle_at(tm);
    return arc(t0, a0, tm, am, depth + 1) + arc(tm, am, t1, a1, depth + 1);
  };
  const double step = two_pi / opts.samples;
  double a_prev = angle_at(0.0);
  const double a_first = a_prev;
  for (int s = 1; s <= opts.samples; ++s) {
    const double t = s * step;
    const double a = s == opts.samples ? a_first : angle_at(t);
    total += arc(t - step, a_prev, t, a, 0);
    a_prev = a;
  }
  const double w = total / two_pi;
  const double rounded = std::round(w);
  if (std::abs(w - rounded) > 1e-6)
    throw RefinementFailure("winding_degree_2d: non-integer winding " + std::to_string(w));
  return static_cast<int>(rounded);
}

DegreeEstimate tensor_degree(const Tensor& a, DegreeMethod method, const DegreeOptions& opts) {
  const PolynomialMap F = PolynomialMap::homogeneous(a);
  if (!check_sol_infty_zero(F).zero_only)
    throw InvalidInput("tensor_degree: tensor is not R0");
  if (method == DegreeMethod::kWinding2d) {
    if (a.dim() != 2) throw InvalidInput("tensor_degree: winding method needs n = 2");
    DegreeEstimate est;
    est.method = DegreeMethod::kWinding2d;
    est.value = winding_degree_2d(F);
    est.winding_value = est.value;
    est.assumptions.push_back("SOL(F,0)={0} (sampling certificate)");
    return est;
  }
  DegreeEstimate est = local_degree_min_map(F, opts);
  if (method == DegreeMethod::kBoth && a.dim() == 2) {
    est.method = DegreeMethod::kBoth;
    est.winding_value = winding_degree_2d(F);
    if (*est.winding_value != est.value)
      throw RefinementFailure("tensor_degree: regular-value degree " +
                              std::to_string(est.value) + " disagrees with winding " +
                              std::to_string(*est.winding_value));
  }
  return est;
}

namespace {

// f_inf + t * (lower part of g), built term by term.
PolynomialMap blend(const Tensor& leading, const PolynomialMap& g, double t) {
  std::vector<Tensor> terms{leading};
  if (t != 0.0)
    for (const Tensor& term : g.terms())
      if (term.order() < leading.order()) terms.push_back(term.scaled(t));
  return PolynomialMap(leading.dim(), std::move(terms));
}

bool only_origin(const SolveReport& rep) {
  return rep.solutions.size() == 1 && rep.solutions.front().x.cwiseAbs().maxCoeff() <= 1e-8;
}

}  // namespace

HomotopyReport homotopy_invariance_check(const PolynomialMap& f, const HomotopyRequest& req,
                                         const DegreeOptions& opts) {
  const int n = f.dim();
  HomotopyReport rep;
  if (req.t_steps < 1) throw InvalidInput("homotopy_invariance_check: t_steps < 1");
  const Tensor& lead = f.leading_tensor();
  const PolynomialMap finf = f.leading_term();

  if (!check_sol_infty_zero(f).zero_only) {
    rep.precondition_note = "SOL(f_inf,0) has a nonzero element";
    return rep;
  }
  const PolynomialMap g = req.mode == HomotopyMode::kKaramardian && req.g ? *req.g : f;
  if (g.dim() != n) throw InvalidInput("homotopy_invariance_check: g dimension mismatch");
  if (req.mode == HomotopyMode::kKaramardian && g.leading_tensor().order() == lead.order() &&
      (g.leading_tensor().coeffs().size() != lead.coeffs().size() ||
       !std::equal(lead.coeffs().begin(), lead.coeffs().end(),
                   g.leading_tensor().coeffs().begin())))
    throw InvalidInput("homotopy_invariance_check: g must have the leading term of f");
  const Vector target = req.mode == HomotopyMode::kKaramardian ? req.d : req.q;
  if (target.size() != n) throw InvalidInput("homotopy_invariance_check: vector dimension");

  SolveConfig cfg;
  cfg.search_radius = req.search_radius;
  if (req.mode == HomotopyMode::kKaramardian) {
    if (!(req.d.array() > 0).all())
      throw InvalidInput("homotopy_invariance_check: d must be positive");
    const SolveReport sd = enumerate_solutions(PcpInstance(g, req.d), cfg);
    if (!only_origin(sd)) {
      rep.precondition_note = "SOL(g,d) contains a nonzero solution";
      return rep;
    }
  }
  rep.precondition_ok = true;
  rep.precondition_note = "SOL(f_inf,0)={0} (sampling certificate)";

  for (int s = 0; s <= req.t_steps; ++s) {
    const double t = static_cast<double>(s) / req.t_steps;
    const SolveReport sr = enumerate_solutions(PcpInstance(blend(lead, g, t), t * target), cfg);
    rep.t_values.push_back(t);
    rep.roots_per_t.push_back(static_cast<int>(sr.solutions.size()));
    for (const Solution& sol : sr.solutions) {
      rep.max_root_norm = std::max(rep.max_root_norm, sol.x.cwiseAbs().maxCoeff());
    }
  }
  rep.bounded = rep.max_root_norm <= 0.5 * req.search_radius;
  if (!rep.bounded) {
    rep.inconclusive = true;
    return rep;
  }
  rep.omega_radius = std::max(1.0, 2.0 * rep.max_root_norm + 0.5);

  DegreeOptions o = opts;
  o.fixed_radius = rep.omega_radius;
  rep.degree_start = min_map_degree(finf, Vector::Zero(n), o).value;
  rep.degree_end = min_map_degree(blend(lead, g, 1.0), target, o).value;
  rep.degrees_equal = *rep.degree_start == *rep.degree_end;
  if (req.mode == HomotopyMode::kKaramardian) {
    // min{x, g(x)+d} equals x near 0 since d > 0
    DegreeOptions local = opts;
    local.fixed_radius = 0.0;
    local.initial_radius = 0.5 * std::min(1.0, req.d.minCoeff());
    local.max_doublings = 0;
    rep.end_degree_one = *rep.degree_end == 1 &&
                         min_map_degree(blend(lead, g, 1.0), target, local).value == 1;
  }
  rep.pass = rep.degrees_equal &&
             (req.mode == HomotopyMode::kToLeadingTerm || rep.end_degree_one);
  return rep;
}

StabilityReport stability_radius_probe(const PolynomialMap& F, const std::vector<double>& scales,
                                       std::uint64_t seed, const DegreeOptions& opts) {
  if (!F.is_homogeneous()) throw InvalidInput("stability_radius_probe: map must be homogeneous");
  StabilityReport rep;
  rep.base_degree = local_degree_min_map(F, opts).value;
  if (rep.base_degree == 0) throw InvalidInput("stability_radius_probe: degree is zero");
  Rng rng(seed);
  const Tensor& a = F.leading_tensor();
  for (double eps : scales) {
    StabilityRow row;
    row.scale = eps;
    std::vector<double> c(a.coeffs().begin(), a.coeffs().end());
    for (double& v : c) v += eps * rng.uniform(-1.0, 1.0);
    Tensor b(a.order(), a.dim(), std::move(c));
    if (b.is_zero()) {
      rep.rows.push_back(row);
      continue;
    }
    const PolynomialMap G = PolynomialMap::homogeneous(b);
    row.zero_only = check_sol_infty_zero(G).zero_only;
    if (row.zero_only) {
      try {
        row.degree = local_degree_min_map(G, opts).value;
      } catch (const Error&) {
      }
    }
    row.unchanged = row.zero_only && row.degree && *row.degree == rep.base_degree;
    if (row.unchanged) rep.largest_stable_scale = std::max(rep.largest_stable_scale, eps);
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace pcpkit
