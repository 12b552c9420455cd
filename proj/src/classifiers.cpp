#include "pcpkit/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "pcpkit/errors.hpp"
#include "pcpkit/newton.hpp"
#include "pcpkit/rng.hpp"

namespace pcpkit {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kHolds:
      return "holds";
    case Verdict::kFails:
      return "fails";
    case Verdict::kHoldsUpToSampling:
      return "holds-up-to-sampling";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "?";
}

const char* to_string(DualPosition p) {
  switch (p) {
    case DualPosition::kInterior:
      return "interior";
    case DualPosition::kBoundary:
      return "boundary";
    case DualPosition::kOutside:
      return "outside";
  }
  return "?";
}

namespace {

std::string fmt(const Vector& v) {
  std::ostringstream os;
  os.precision(6);
  os << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

bool only_origin(const SolveReport& rep) {
  return rep.solutions.size() == 1 && rep.solutions.front().x.cwiseAbs().maxCoeff() <= 1e-8;
}

SolveReport enumerate_or_solve(const PcpInstance& inst, const SolveConfig& cfg) {
  if (inst.dim() <= cfg.pattern_enum_dim_cap) return enumerate_solutions(inst, cfg);
  return solve(inst, cfg);
}

// Euclidean projection onto {x >= 0, sum x = s}.
Vector project_simplex(const Vector& v, double s) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cum += u[j];
    const double t = (cum - s) / static_cast<double>(j + 1);
    if (u[j] - t > 0) theta = t;
  }
  return (v.array() - theta).cwiseMax(0.0).matrix();
}

// Compositions of `d` into n parts, scaled to sum s.
std::vector<Vector> simplex_grid(int n, int d, double s) {
  std::vector<Vector> out;
  std::vector<int> c(n, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n - 1) {
      c[pos] = left;
      Vector x(n);
      for (int i = 0; i < n; ++i) x[i] = s * c[i] / d;
      out.push_back(x);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      c[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, d);
  return out;
}

Vector random_simplex(Rng& rng, int n, double s) {
  Vector u(n);
  for (int i = 0; i < n; ++i) u[i] = -std::log(1.0 - rng.uniform());
  return s * u / u.sum();
}

int grid_divisions(int n) {
  switch (n) {
    case 1:
      return 1;
    case 2:
      return 400;
    case 3:
      return 60;
    default:
      return 16;
  }
}

}  // namespace

ClassVerdict is_R0(const Tensor& a, const ConeSearchOptions& opts) {
  ClassVerdict v;
  v.property = "r0";
  v.tolerance = 1e-8;
  const SolInftyVerdict s = check_sol_infty_zero(PolynomialMap::homogeneous(a), opts);
  if (s.zero_only) {
    v.verdict = Verdict::kHoldsUpToSampling;
    v.evidence.push_back(s.note);
  } else {
    v.verdict = Verdict::kFails;
    v.witnesses.push_back(s.witness);
    v.value = s.witness_residual;
    v.evidence.push_back("nonzero u >= 0 with min{u, A u^{m-1}} = 0: u = " + fmt(s.witness));
  }
  return v;
}

ClassVerdict is_R(const Tensor& a, const std::vector<Vector>& d_candidates,
                  const RProbeOptions& opts) {
  ClassVerdict v;
  v.property = "r";
  v.tolerance = opts.solve.feasibility_tol;
  const ClassVerdict r0 = is_R0(a);
  if (r0.verdict == Verdict::kFails) {
    v.verdict = Verdict::kFails;
    v.witnesses = r0.witnesses;
    v.evidence.push_back("not R0");
    return v;
  }
  const int n = a.dim();
  const PolynomialMap F = PolynomialMap::homogeneous(a);
  std::vector<Vector> ds{Vector::Ones(n)};
  for (const Vector& d : d_candidates) {
    if (d.size() != n || !(d.array() > 0).all())
      throw InvalidInput("is_R: candidate d must be positive with length n");
    ds.push_back(d);
  }
  Rng rng(opts.seed);
  for (int i = 0; i < opts.random_d; ++i) ds.push_back(rng.uniform_vector(n, 0.05, 1.0));

  for (const Vector& d : ds) {
    ++v.samples;
    const SolveReport rep = enumerate_or_solve(PcpInstance(F, d), opts.solve);
    if (only_origin(rep)) {
      v.verdict = Verdict::kHolds;
      v.witnesses = {d};
      v.evidence.push_back("SOL(A,d)={0} for d = " + fmt(d));
      return v;
    }
    if (v.witnesses.empty()) {
      for (const Solution& s : rep.solutions) {
        if (s.x.cwiseAbs().maxCoeff() > 1e-8) {
          v.witnesses = {d, s.x};
          break;
        }
      }
    }
  }
  v.verdict = v.witnesses.empty() ? Verdict::kInconclusive : Verdict::kFails;
  v.evidence.push_back("every tested d > 0 admits a nonzero solution (" +
                       std::to_string(v.samples) + " tested); witness is d then x");
  return v;
}

namespace {

// <f(x), x> is identically zero when every symmetrized coefficient of every
// homogeneous part vanishes.
bool form_identically_zero(const PolynomialMap& f) {
  for (const Tensor& t : f.terms()) {
    std::map<std::vector<int>, double> sym;
    const auto c = t.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] == 0.0) continue;
      std::vector<int> idx = t.multi_index(k);
      std::sort(idx.begin(), idx.end());
      sym[idx] += c[k];
    }
    const double scale = std::max(1.0, t.max_abs());
    for (const auto& [key, val] : sym)
      if (std::abs(val) > 1e-12 * scale) return false;
  }
  return true;
}

}  // namespace

ClassVerdict is_copositive(const PolynomialMap& f, bool strict, const CopositiveOptions& opts) {
  ClassVerdict v;
  v.property = strict ? "strictly-copositive" : "copositive";
  v.tolerance = opts.threshold;
  const int n = f.dim();
  const Vector centroid = Vector::Ones(n) / std::sqrt(static_cast<double>(n));

  if (form_identically_zero(f)) {
    if (strict) {
      v.verdict = Verdict::kFails;
      v.witnesses = {centroid};
      v.evidence.push_back("<f(x),x> is identically zero");
    } else {
      v.verdict = Verdict::kHolds;
      v.evidence.push_back("<f(x),x> is identically zero (exact coefficient check)");
    }
    return v;
  }

  auto phi = [&](const Vector& x) { return f.eval(x).dot(x); };
  auto grad = [&](const Vector& x) -> Vector {
    return f.eval(x) + f.jacobian(x).transpose() * x;
  };
  auto unit = [](const Vector& x) -> Vector { return x / x.norm(); };

  const std::vector<double> scales = f.is_homogeneous()
                                         ? std::vector<double>{1.0}
                                         : std::vector<double>{0.01, 0.1, 1.0, 10.0, 100.0};
  Rng rng(opts.seed);
  double best = std::numeric_limits<double>::infinity();
  Vector best_x;
  auto consider = [&](const Vector& x, double s) {
    ++v.samples;
    // strictness is judged on the simplex, where the value is scale-free
    const double val = phi(x) / (f.is_homogeneous() ? 1.0 : s * s);
    if (val < best) {
      best = val;
      best_x = x;
    }
    return val;
  };

  for (double s : scales) {
    // centroid first
    if (consider(centroid * (s / centroid.sum()), s) < -opts.threshold && !strict) break;
    std::vector<std::pair<double, Vector>> pts;
    for (const Vector& x : simplex_grid(n, grid_divisions(n), s)) pts.emplace_back(consider(x, s), x);
    for (int r = 0; r < opts.random_points; ++r) {
      const Vector x = random_simplex(rng, n, s);
      pts.emplace_back(consider(x, s), x);
    }
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    // projected gradient polish of the lowest points
    for (int k = 0; k < opts.polish_starts && k < static_cast<int>(pts.size()); ++k) {
      Vector x = pts[k].second;
      double fx = phi(x);
      double step = 0.1 * s;
      for (int it = 0; it < opts.polish_iters && step > 1e-14 * s; ++it) {
        const Vector g = grad(x);
        const double gn = g.norm();
        if (gn == 0.0) break;
        const Vector y = project_simplex(x - step * g / gn, s);
        const double fy = phi(y);
        if (fy < fx) {
          x = y;
          fx = fy;
          step *= 1.5;
        } else {
          step *= 0.5;
        }
      }
      consider(x, s);
    }
  }

  v.value = best;
  if (best < -opts.threshold) {
    v.verdict = Verdict::kFails;
    v.witnesses = {unit(best_x)};
    v.evidence.push_back("<f(x),x> = " + std::to_string(phi(unit(best_x))) + " at unit x");
  } else if (strict && best <= opts.threshold) {
    v.verdict = Verdict::kFails;
    v.witnesses = {unit(best_x)};
    v.evidence.push_back("<f(x),x> not bounded away from 0 on the simplex");
  } else {
    v.verdict = Verdict::kHoldsUpToSampling;
    v.evidence.push_back("polished minimum on the simplex: " + std::to_string(best));
  }
  return v;
}

namespace {

bool is_diagonal_index(const std::vector<int>& idx) {
  return std::all_of(idx.begin(), idx.end(), [&](int i) { return i == idx.front(); });
}

Vector one_based(const std::vector<int>& idx) {
  Vector w(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) w[k] = idx[k] + 1;
  return w;
}

}  // namespace

ClassVerdict is_Z_tensor(const Tensor& a) {
  ClassVerdict v;
  v.property = "z";
  const auto c = a.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    ++v.samples;
    const std::vector<int> idx = a.multi_index(k);
    if (!is_diagonal_index(idx) && c[k] > 0.0) {
      v.verdict = Verdict::kFails;
      v.witnesses = {one_based(idx)};
      v.value = c[k];
      v.evidence.push_back("positive off-diagonal coefficient " + std::to_string(c[k]) +
                           " at 1-based index " + fmt(one_based(idx)));
      return v;
    }
  }
  v.verdict = Verdict::kHolds;
  v.evidence.push_back("every off-diagonal coefficient is nonpositive");
  return v;
}

ClassVerdict is_nonneg_pos_diag(const Tensor& a) {
  ClassVerdict v;
  v.property = "nonneg-pos-diag";
  const auto c = a.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    ++v.samples;
    const std::vector<int> idx = a.multi_index(k);
    const bool diag = is_diagonal_index(idx);
    if (c[k] < 0.0 || (diag && c[k] <= 0.0)) {
      v.verdict = Verdict::kFails;
      v.witnesses = {one_based(idx)};
      v.value = c[k];
      v.evidence.push_back(std::string(diag ? "nonpositive diagonal" : "negative") +
                           " coefficient at 1-based index " + fmt(one_based(idx)));
      return v;
    }
  }
  v.verdict = Verdict::kHolds;
  v.evidence.push_back("all coefficients nonnegative, diagonal positive");
  return v;
}

ClassVerdict is_strong_M(const Tensor& a, std::uint64_t seed, int restarts) {
  ClassVerdict v = is_Z_tensor(a);
  v.property = "strong-m";
  if (v.verdict == Verdict::kFails) {
    v.evidence.push_back("not a Z-tensor");
    return v;
  }
  v.evidence.clear();
  const int n = a.dim();
  const PolynomialMap F = PolynomialMap::homogeneous(a);
  auto h = [&](const Vector& d) { return F.eval(d).minCoeff(); };
  auto accept = [&](const Vector& d) {
    if (!(d.array() > 0).all()) return false;
    return h(d) > 1e-12;
  };
  const Vector e = Vector::Ones(n);
  if (accept(e)) {
    v.verdict = Verdict::kHolds;
    v.witnesses = {e};
    v.value = h(e);
    v.evidence.push_back("A e^{m-1} > 0");
    return v;
  }
  Rng rng(seed);
  double best = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    Vector d = random_simplex(rng, n, 1.0);
    double hd = h(d);
    double step = 0.1;
    for (int it = 0; it < 500 && step > 1e-12; ++it) {
      const Vector y = F.eval(d);
      int i = 0;
      y.minCoeff(&i);
      const Vector g = F.jacobian(d).row(i).transpose();
      if (g.norm() == 0.0) break;
      const Vector dn = project_simplex(d + step * g / g.norm(), 1.0);
      const double hn = h(dn);
      if (hn > hd) {
        d = dn;
        hd = hn;
        step *= 1.5;
      } else {
        step *= 0.5;
      }
    }
    ++v.samples;
    best = std::max(best, hd);
    if (hd > 1e-12) {
      // push off the boundary of the orthant while keeping positivity
      for (double eta : {0.0, 1e-3, 1e-2, 1e-1}) {
        const Vector dd = (1.0 - eta) * d + eta * e / n;
        if (accept(dd)) {
          v.verdict = Verdict::kHolds;
          v.witnesses = {dd};
          v.value = h(dd);
          v.evidence.push_back("A d^{m-1} > 0 for d = " + fmt(dd));
          return v;
        }
      }
    }
  }
  v.value = best;
  v.verdict = Verdict::kInconclusive;
  v.evidence.push_back("Z-tensor, but no d > 0 with A d^{m-1} > 0 was found");
  return v;
}

ClassVerdict gus_probe(const PolynomialMap& f, const GusOptions& opts) {
  ClassVerdict v;
  v.property = "gus";
  v.tolerance = opts.solve.dedup_tol;
  const int n = f.dim();
  if (n > 4) throw InvalidInput("gus_probe: n > 4");
  Rng rng(opts.seed);
  std::vector<Vector> qs = opts.extra_q;
  for (int k = 0; k < opts.per_family; ++k) qs.push_back(rng.uniform_vector(n, 0.1, 2.0));
  for (int k = 0; k < opts.per_family; ++k) qs.push_back(rng.uniform_vector(n, -2.0, -0.1));
  for (int k = 0; k < opts.per_family; ++k) qs.push_back(rng.uniform_vector(n, -2.0, 2.0));
  for (int k = 0; k < opts.per_family; ++k) {
    Vector q = rng.uniform_vector(n, -2.0, 2.0);
    for (int i = 0; i < n; ++i)
      if (rng.uniform() < 0.5) q[i] = 0.0;
    qs.push_back(q);
  }
  std::optional<Vector> empty_q;
  for (const Vector& q : qs) {
    if (q.size() != n) throw InvalidInput("gus_probe: q of wrong length");
    ++v.samples;
    const SolveReport rep = enumerate_solutions(PcpInstance(f, q), opts.solve);
    if (rep.solutions.size() >= 2) {
      v.verdict = Verdict::kFails;
      v.witnesses = {q, rep.solutions[0].x, rep.solutions[1].x};
      v.value = static_cast<double>(rep.solutions.size());
      v.evidence.push_back(std::to_string(rep.solutions.size()) + " solutions for q = " +
                           fmt(q) + "; witness is q then two solutions");
      return v;
    }
    if (rep.solutions.empty() && !empty_q) empty_q = q;
  }
  if (empty_q) {
    v.verdict = Verdict::kInconclusive;
    v.witnesses = {*empty_q};
    v.evidence.push_back("no solution found for q = " + fmt(*empty_q));
    return v;
  }
  v.verdict = Verdict::kHoldsUpToSampling;
  v.evidence.push_back("exactly one solution for every sampled q");
  return v;
}

ClassVerdict gus_probe(const Tensor& a, const GusOptions& opts) {
  return gus_probe(PolynomialMap::homogeneous(a), opts);
}

ClassVerdict strong_q_probe(const Tensor& a, const StrongQOptions& opts) {
  ClassVerdict v;
  v.property = "strong-q";
  v.tolerance = opts.solve.feasibility_tol;
  const int n = a.dim();
  if (n > 4) throw InvalidInput("strong_q_probe: n > 4");
  const int m = a.order();

  for (const StrongQCandidate& c : opts.candidates) {
    const Tensor& lead = c.f.leading_tensor();
    if (lead.order() != m || lead.dim() != n ||
        !std::equal(lead.coeffs().begin(), lead.coeffs().end(), a.coeffs().begin()))
      throw InvalidInput("strong_q_probe: candidate must have A as its leading tensor");
    const PcpInstance inst(c.f, c.q);
    const UnsolvabilityCertificate cert =
        certify_unsolvable(inst, c.box_lo, c.box_hi, c.grid_step);
    ++v.samples;
    if (cert.certified) {
      v.verdict = Verdict::kFails;
      v.witness_instance = inst;
      v.witnesses = {c.q};
      v.value = cert.min_grid_residual;
      v.evidence.push_back("PCP(f,q) certified unsolvable on the box (min grid residual " +
                           std::to_string(cert.min_grid_residual) + " > margin " +
                           std::to_string(cert.margin * cert.grid_step) + ")");
      return v;
    }
  }

  const PolynomialMap F = PolynomialMap::homogeneous(a);
  const SolInftyVerdict zero = check_sol_infty_zero(F);
  if (!zero.zero_only) {
    // q = 0 with no lower terms: every t * witness solves, unbounded set
    v.verdict = Verdict::kFails;
    v.witness_instance = PcpInstance(F, Vector::Zero(n));
    v.witnesses = {zero.witness};
    v.evidence.push_back("SOL(A,0) contains the ray through " + fmt(zero.witness) +
                         ", so the solution set for q = 0 is not compact");
    return v;
  }

  Rng rng(opts.seed);
  int unsolved = 0, unstable = 0, solve_misses = 0;
  for (int t = 0; t < opts.trials; ++t) {
    std::vector<Tensor> terms{a};
    for (int k = 2; k < m; ++k) {
      std::vector<double> c(ipow(n, k));
      for (double& x : c) x = rng.uniform(-1.0, 1.0);
      terms.emplace_back(k, n, std::move(c));
    }
    const PolynomialMap f(n, std::move(terms));
    const Vector q = rng.uniform_vector(n, -opts.q_scale, opts.q_scale);
    ++v.samples;
    SolveConfig cfg = opts.solve;
    cfg.seed = opts.solve.seed + static_cast<std::uint64_t>(t);
    const SolveReport rep = solve(PcpInstance(f, q), cfg);
    const BoundednessReport b = boundedness_probe(f, {q}, cfg);
    if (b.solved == 0) {
      ++unsolved;
      if (v.witnesses.empty()) v.witnesses = {q};
      continue;
    }
    if (!b.stable) ++unstable;
    if (rep.solutions.empty()) ++solve_misses;
  }
  v.value = unsolved + unstable;
  v.evidence.push_back(std::to_string(opts.trials) + " random perturbations: " +
                       std::to_string(unsolved) + " unsolved, " + std::to_string(unstable) +
                       " with unstable solution norms; multistart solve missed " +
                       std::to_string(solve_misses) + " that enumeration found");
  v.verdict = unsolved + unstable == 0 ? Verdict::kHoldsUpToSampling : Verdict::kInconclusive;
  return v;
}

ClassVerdict p_property_check(const PolynomialMap& f, const PProbeOptions& opts) {
  ClassVerdict v;
  v.property = "p";
  v.tolerance = opts.threshold;
  const int n = f.dim();
  auto phi = [&](const Vector& x, const Vector& y) {
    return ((x - y).array() * (f.eval(x) - f.eval(y)).array()).maxCoeff();
  };
  auto separated = [&](const Vector& x, const Vector& y) {
    return (x - y).cwiseAbs().maxCoeff() >= opts.min_separation;
  };

  std::vector<std::pair<Vector, Vector>> pairs;
  for (int i = 0; i < n; ++i)
    for (double t : {0.1, 0.5, 1.0, 2.0}) pairs.emplace_back(t * Vector::Unit(n, i), Vector::Zero(n));
  Rng rng(opts.seed);
  while (static_cast<int>(pairs.size()) < opts.pairs) {
    const Vector x = rng.uniform_vector(n, 0.0, opts.radius);
    Vector y = rng.uniform_vector(n, 0.0, opts.radius);
    if (rng.uniform() < 0.25) y = x + rng.uniform(0.1, 1.0) * Vector::Unit(n, static_cast<int>(rng.uniform() * n));
    if (separated(x, y)) pairs.emplace_back(x, y);
  }

  std::vector<std::pair<double, int>> vals;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    ++v.samples;
    const double val = phi(pairs[k].first, pairs[k].second);
    vals.emplace_back(val, static_cast<int>(k));
    if (val <= opts.threshold) {
      v.verdict = Verdict::kFails;
      v.witnesses = {pairs[k].first, pairs[k].second};
      v.value = val;
      v.evidence.push_back("max_i (x-y)_i [f(x)-f(y)]_i = " + std::to_string(val));
      return v;
    }
  }
  std::sort(vals.begin(), vals.end());
  // compass search on the lowest pairs
  double best = vals.front().first;
  for (int s = 0; s < opts.polish_starts && s < static_cast<int>(vals.size()); ++s) {
    Vector z(2 * n);
    z << pairs[vals[s].second].first, pairs[vals[s].second].second;
    double fz = vals[s].first;
    double step = 0.25;
    while (step > 1e-9) {
      bool improved = false;
      for (int c = 0; c < 2 * n && !improved; ++c) {
        for (double dir : {1.0, -1.0}) {
          Vector w = z;
          w[c] = std::max(0.0, w[c] + dir * step);
          const Vector x = w.head(n), y = w.tail(n);
          if (!separated(x, y)) continue;
          const double fw = phi(x, y);
          ++v.samples;
          if (fw < fz) {
            z = w;
            fz = fw;
            improved = true;
            break;
          }
        }
      }
      if (!improved) step *= 0.5;
      if (fz <= opts.threshold) break;
    }
    best = std::min(best, fz);
    if (fz <= opts.threshold) {
      v.verdict = Verdict::kFails;
      v.witnesses = {z.head(n), z.tail(n)};
      v.value = fz;
      v.evidence.push_back("polished pair with max_i (x-y)_i [f(x)-f(y)]_i = " +
                           std::to_string(fz));
      return v;
    }
  }
  v.value = best;
  v.verdict = Verdict::kHoldsUpToSampling;
  v.evidence.push_back("smallest max over sampled pairs: " + std::to_string(best));
  return v;
}

ConeSample sol_cone_sample(const PolynomialMap& F, const ConeSearchOptions& opts) {
  ConeSample s;
  s.generators = find_cone_roots(F.leading_term(), opts, false);
  s.exact = false;
  return s;
}

DualPosition dual_interior_test(const Vector& q, const ConeSample& s, double delta) {
  if (!(delta > 0)) throw InvalidInput("dual_interior_test: delta must be positive");
  const double tol = delta * q.norm();
  bool boundary = false;
  for (const Vector& g : s.generators) {
    if (g.size() != q.size()) throw InvalidInput("dual_interior_test: dimension mismatch");
    const double ip = q.dot(g);
    if (ip < -tol) return DualPosition::kOutside;
    if (std::abs(ip) <= tol) boundary = true;
  }
  return boundary ? DualPosition::kBoundary : DualPosition::kInterior;
}

}  // namespace pcpkit
