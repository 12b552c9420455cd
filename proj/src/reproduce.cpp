#include "pcpkit/reproduce.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <utility>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "pcpkit/classifiers.hpp"
#include "pcpkit/constructions.hpp"
#include "pcpkit/degree.hpp"
#include "pcpkit/errors.hpp"
#include "pcpkit/kernels.hpp"
#include "pcpkit/lcp.hpp"
#include "pcpkit/newton.hpp"
#include "pcpkit/report_json.hpp"
#include "pcpkit/rng.hpp"

namespace pcpkit {

bool ScenarioReport::pass() const {
  if (checks.empty()) return false;
  for (const CheckResult& c : checks)
    if (!c.pass) return false;
  return true;
}

namespace {

std::string str(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::string str(const Vector& v) {
  std::ostringstream os;
  os.precision(6);
  os << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

std::string str(const std::vector<Vector>& vs) {
  std::string s = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? ", " : "") + str(vs[i]);
  return s + "}";
}

std::vector<Vector> xs(const SolveReport& r) {
  std::vector<Vector> out;
  for (const Solution& s : r.solutions) out.push_back(s.x);
  return out;
}

Vector vec(std::initializer_list<double> v) {
  Vector out(v.size());
  int i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

struct Observed {
  std::string text;
  bool pass = false;
};

class Runner {
 public:
  explicit Runner(ScenarioReport& r) : r_(r) {}

  void add(std::string name, std::string expected, std::string provenance,
           const std::function<Observed()>& body) {
    CheckResult c{std::move(name), std::move(expected), "", std::move(provenance), false};
    try {
      const Observed o = body();
      c.observed = o.text;
      c.pass = o.pass;
    } catch (const Error& e) {
      c.observed = std::string("error (") + to_string(e.kind()) + "): " + e.what();
    } catch (const std::exception& e) {
      c.observed = std::string("error: ") + e.what();
    }
    r_.checks.push_back(std::move(c));
  }

 private:
  ScenarioReport& r_;
};

// ---------------------------------------------------------------- example1

void example1(Runner& run, std::uint64_t seed) {
  const Matrix A = example1_matrix();
  const Tensor T = example1_tensor();

  run.add("lcp_degree(A)", "-1", "PAPER", [&] {
    const int d = lcp_degree(A, seed).value;
    return Observed{std::to_string(d), d == -1};
  });
  run.add("tensor_degree regular-value and winding", "-1 and -1", "PAPER", [&] {
    DegreeOptions o;
    o.seed = seed;
    const DegreeEstimate e = tensor_degree(T, DegreeMethod::kBoth, o);
    const int w = e.winding_value.value_or(0);
    return Observed{std::to_string(e.value) + " and " + std::to_string(w),
                    e.value == -1 && w == -1};
  });
  run.add("is_R0", "holds", "PAPER", [&] {
    const ClassVerdict v = is_R0(T);
    return Observed{to_string(v.verdict), holds(v.verdict)};
  });
  run.add("is_R over 200 random d > 0", "fails", "PAPER", [&] {
    RProbeOptions o;
    o.seed = seed + 1;
    o.random_d = 200;
    const ClassVerdict v = is_R(T, {}, o);
    return Observed{std::string(to_string(v.verdict)) + " after " + std::to_string(v.samples) +
                        " d",
                    v.verdict == Verdict::kFails && v.samples >= 201};
  });
  run.add("strong_q_probe, 50 perturbed instances", "holds", "PAPER", [&] {
    StrongQOptions o;
    o.seed = seed + 2;
    o.trials = 50;
    const ClassVerdict v = strong_q_probe(T, o);
    return Observed{std::string(to_string(v.verdict)) + "; " + v.evidence.back(),
                    holds(v.verdict) && v.samples >= 50};
  });
  run.add("lcp_enumerate(A, (-1,-1))", "{(3, 4)}", "DERIVED", [&] {
    const LcpResult r = lcp_enumerate(LcpInstance(A, vec({-1, -1})));
    return Observed{str(r.solutions),
                    r.solutions.size() == 1 && (r.solutions[0] - vec({3, 4})).norm() < 1e-9};
  });
  run.add("is_Z_tensor", "fails", "DERIVED", [&] {
    const ClassVerdict v = is_Z_tensor(T);
    return Observed{to_string(v.verdict), v.verdict == Verdict::kFails};
  });
  run.add("gus_probe", "fails", "DERIVED", [&] {
    GusOptions o;
    o.seed = seed + 3;
    const ClassVerdict v = gus_probe(T, o);
    return Observed{to_string(v.verdict), v.verdict == Verdict::kFails};
  });
  run.add("stability at scales 1e-4, 1e-3, 1e-2", "-1 at every scale", "DERIVED", [&] {
    const StabilityReport s =
        stability_radius_probe(PolynomialMap::homogeneous(T), {1e-4, 1e-3, 1e-2}, seed + 4);
    bool ok = s.base_degree == -1;
    std::string text;
    for (const StabilityRow& r : s.rows) {
      ok = ok && r.unchanged;
      text += (text.empty() ? "" : ", ") + (r.degree ? std::to_string(*r.degree) : "none");
    }
    return Observed{text, ok};
  });
}

// ---------------------------------------------------------------- example2

void example2(Runner& run, std::uint64_t seed) {
  const PolynomialMap f = example2_map();
  const Vector q = example2_q();
  const PolynomialMap finf = f.leading_term();

  run.add("f at (1,0)", "(-2.82843, 1)", "DERIVED", [&] {
    const Vector v = f.eval(vec({1, 0}));
    return Observed{str(v), (v - vec({-2.0 * std::sqrt(2.0), 1.0})).norm() < 1e-14};
  });
  run.add("f_inf(x) = |x|^2 A x at random points", "match", "PAPER", [&] {
    Rng rng(seed);
    double err = 0.0;
    for (int k = 0; k < 100; ++k) {
      const Vector x = rng.uniform_vector(2, -2, 2);
      err = std::max(err, (finf.eval(x) - x.squaredNorm() * vec({-x[1], x[0]})).norm());
    }
    return Observed{"max error " + str(err), err < 1e-12};
  });
  run.add("S sample", "single generator (1,0) within angle 1e-4", "PAPER", [&] {
    const ConeSample s = sol_cone_sample(f);
    const bool one = s.generators.size() == 1;
    const double ang = one ? std::atan2(std::abs(s.generators[0][1]), s.generators[0][0]) : 1.0;
    return Observed{str(s.generators), one && ang < 1e-4};
  });
  run.add("dual_interior_test((2,-2), S)", "interior", "PAPER", [&] {
    const DualPosition p = dual_interior_test(q, sol_cone_sample(f));
    return Observed{to_string(p), p == DualPosition::kInterior};
  });
  run.add("certify_unsolvable on [0,1.1]^2, step 1e-3", "certified", "PAPER", [&] {
    const UnsolvabilityCertificate c =
        certify_unsolvable(PcpInstance(f, q), Vector::Zero(2), Vector::Constant(2, 1.1), 1e-3);
    return Observed{std::string(c.certified ? "certified" : "inconclusive") +
                        ", min residual " + str(c.min_grid_residual) + " > " +
                        str(c.margin * c.grid_step),
                    c.certified && c.min_grid_residual > 0 && c.margin > 0};
  });
  run.add("solve", "budget-exhausted, no solution", "PAPER", [&] {
    SolveConfig cfg;
    cfg.seed = seed;
    const SolveReport r = solve(PcpInstance(f, q), cfg);
    return Observed{std::string(to_string(r.status)) + ", " + std::to_string(r.solutions.size()) +
                        " solutions",
                    r.status == SolveStatus::kBudgetExhausted && r.solutions.empty()};
  });
  run.add("is_R0(f_inf)", "fails with witness (1,0)", "PAPER", [&] {
    const ClassVerdict v = is_R0(finf.leading_tensor());
    const bool ok = v.verdict == Verdict::kFails && !v.witnesses.empty() &&
                    (v.witnesses[0] - vec({1, 0})).norm() < 1e-6;
    return Observed{std::string(to_string(v.verdict)) + " " + str(v.witnesses), ok};
  });
  run.add("is_copositive(f_inf)", "holds (identically zero form)", "PAPER", [&] {
    const ClassVerdict v = is_copositive(finf);
    return Observed{to_string(v.verdict), v.verdict == Verdict::kHolds};
  });
  run.add("is_copositive(f)", "fails", "DERIVED", [&] {
    const ClassVerdict v = is_copositive(f);
    return Observed{to_string(v.verdict), v.verdict == Verdict::kFails};
  });
  run.add("strong_q_probe(f_inf) with the certified instance", "fails", "PAPER", [&] {
    StrongQOptions o;
    o.seed = seed + 1;
    o.candidates.push_back({f, q, Vector::Zero(2), Vector::Constant(2, 1.1), 1e-3});
    const ClassVerdict v = strong_q_probe(finf.leading_tensor(), o);
    return Observed{to_string(v.verdict),
                    v.verdict == Verdict::kFails && v.witness_instance.has_value()};
  });
  run.add("p_property_check(f)", "fails", "DERIVED", [&] {
    PProbeOptions o;
    o.seed = seed + 2;
    const ClassVerdict v = p_property_check(f, o);
    bool ok = v.verdict == Verdict::kFails && v.witnesses.size() == 2;
    if (ok) {
      const Vector& x = v.witnesses[0];
      const Vector& y = v.witnesses[1];
      ok = ((x - y).array() * (f.eval(x) - f.eval(y)).array()).maxCoeff() <= 1e-12;
    }
    return Observed{std::string(to_string(v.verdict)) + " " + str(v.witnesses), ok};
  });
}

// ---------------------------------------------------------------- example3

void example3(Runner& run, std::uint64_t seed) {
  const PolynomialMap F = example3_map();

  run.add("F(1.5, 1)", "(1, 1.75)", "DERIVED", [&] {
    const Vector v = F.eval(vec({1.5, 1}));
    return Observed{str(v), (v - vec({1, 1.75})).norm() < 1e-14};
  });
  run.add("solve(F, q_k), k = 1..10", "(k + 1/(2k), k), residual < 1e-10", "PAPER", [&] {
    double worst = 0.0, worst_res = 0.0;
    int ok = 0;
    for (int k = 1; k <= 10; ++k) {
      SolveConfig cfg;
      cfg.seed = seed + static_cast<std::uint64_t>(k);
      const PcpInstance inst(F, example3_q(k));
      const SolveReport r = solve(inst, cfg);
      if (r.solutions.empty()) continue;
      const Vector& x = r.solutions[0].x;
      const double dist = (x - example3_solution(k)).cwiseAbs().maxCoeff();
      const double res = verify_solution(inst, x, 1e-10).natural_residual;
      worst = std::max(worst, dist);
      worst_res = std::max(worst_res, res);
      if ((dist < 1e-8 || r.solutions[0].residuals.pass) && res < 1e-10) ++ok;
    }
    return Observed{std::to_string(ok) + "/10 solved, max distance " + str(worst) +
                        ", max residual " + str(worst_res),
                    ok == 10};
  });
  run.add("enumerate_solutions(F, (-1,-1)), radius 1e3", "no solution", "PAPER", [&] {
    SolveConfig cfg;
    cfg.search_radius = 1e3;
    const SolveReport r = enumerate_solutions(PcpInstance(F, example3_limit_q()), cfg);
    return Observed{std::to_string(r.solutions.size()) + " solutions", r.solutions.empty()};
  });
  run.add("pattern analysis, both components active", "inconsistent", "PAPER", [&] {
    const PatternConsistency p = analyze_pattern_system(PcpInstance(F, example3_limit_q()), 3u);
    return Observed{std::string(p.verdict == PatternConsistency::Verdict::kInconsistent
                                    ? "inconsistent: "
                                    : "unknown: ") +
                        p.reason,
                    p.verdict == PatternConsistency::Verdict::kInconsistent};
  });
  run.add("pattern analysis, single-component patterns", "inconsistent", "DERIVED", [&] {
    bool ok = true;
    for (unsigned s : {1u, 2u}) {
      const PatternConsistency p = analyze_pattern_system(PcpInstance(F, example3_limit_q()), s);
      // x2 = 0 leaves F1 + q1 = -1; x1 = 0 leaves y^2 = 1 with F1 + q1 = -3 < 0
      if (s == 1u) ok = ok && p.verdict == PatternConsistency::Verdict::kInconsistent;
    }
    return Observed{ok ? "inconsistent" : "unknown", ok};
  });
  run.add("grid certification on [0,10]^2, step 1e-2", "inconclusive", "PAPER", [&] {
    const UnsolvabilityCertificate c = certify_unsolvable(
        PcpInstance(F, example3_limit_q()), Vector::Zero(2), Vector::Constant(2, 10.0), 1e-2);
    return Observed{std::string(c.certified ? "certified" : "inconclusive") +
                        ", min residual " + str(c.min_grid_residual),
                    !c.certified && c.min_grid_residual > 0};
  });
}

// ---------------------------------------------------------------- eq4

void eq4_equivalence(Runner& run, std::uint64_t seed) {
  run.add("50 random (A, q): tensor enumeration vs LCP oracle", "0 mismatches", "DERIVED", [&] {
    Rng rng(seed);
    int mismatches = 0, resampled = 0, done = 0;
    std::string first;
    SolveConfig cfg;
    while (done < 50) {
      const int n = 2 + done % 2;
      const int k = (done / 2) % 2 == 0 ? 3 : 5;
      const Matrix A = rng.uniform_matrix(n, n, -1.0, 1.0);
      const Vector q = rng.uniform_vector(n, -1.0, 1.0);
      const Vector qk = componentwise_root(q, k);
      const LcpResult oracle = lcp_enumerate(LcpInstance(A, qk));
      bool skip = oracle.non_isolated || !oracle.singular_patterns.empty();
      for (const Vector& x : oracle.solutions) {
        const double nx = x.cwiseAbs().maxCoeff();
        if (nx > 8.0 && nx < 12.0) skip = true;  // too close to the search radius
      }
      if (skip) {
        ++resampled;
        continue;
      }
      std::vector<Vector> want;
      for (const Vector& x : oracle.solutions)
        if (x.cwiseAbs().maxCoeff() <= cfg.search_radius) want.push_back(x);
      const PolynomialMap T = PolynomialMap::homogeneous(matrix_power_tensor(A, k));
      const std::vector<Vector> got = xs(enumerate_solutions(PcpInstance(T, q), cfg));
      if (!same_set(got, want, 1e-6)) {
        ++mismatches;
        if (first.empty()) first = "; first mismatch: got " + str(got) + ", oracle " + str(want);
      }
      ++done;
    }
    return Observed{std::to_string(mismatches) + " mismatches over 50 (" +
                        std::to_string(resampled) + " degenerate draws resampled)" + first,
                    mismatches == 0};
  });
}

// ---------------------------------------------------------------- R degree

void r_degree_one(Runner& run, std::uint64_t seed) {
  std::vector<std::pair<std::string, Tensor>> items;
  for (const CatalogEntry& c : example_catalog()) {
    for (const ExpectedProperty& e : c.expected)
      if (e.property == "r" && e.expected == "holds" && c.tensor)
        items.emplace_back(c.name, *c.tensor);
  }
  Rng rng(seed);
  for (int i = 0; i < 10; ++i) {
    const int n = i < 5 ? 2 : 3;
    items.emplace_back("random-r-matrix-" + std::to_string(i + 1),
                       matrix_power_tensor(random_r_matrix(rng, n), 3));
  }
  for (const auto& [name, t] : items) {
    run.add(name + ": is_R and degree", "R holds, degree 1", "DERIVED", [&] {
      const ClassVerdict r = is_R(t);
      DegreeOptions o;
      o.seed = seed;
      const DegreeEstimate d = tensor_degree(t, DegreeMethod::kBoth, o);
      return Observed{std::string("R ") + to_string(r.verdict) + ", degree " +
                          std::to_string(d.value),
                      holds(r.verdict) && d.value == 1};
    });
  }
  run.add("class implications on the catalog", "strong-M, nonneg-pos-diag, strict copositivity imply R",
          "PAPER", [&] {
            int checked = 0, broken = 0;
            for (const CatalogEntry& c : example_catalog()) {
              if (!c.tensor) continue;
              const Tensor& t = *c.tensor;
              const bool premise = is_strong_M(t).verdict == Verdict::kHolds ||
                                   is_nonneg_pos_diag(t).verdict == Verdict::kHolds ||
                                   holds(is_copositive(PolynomialMap::homogeneous(t), true).verdict);
              if (!premise) continue;
              ++checked;
              if (!holds(is_R(t).verdict)) ++broken;
            }
            return Observed{std::to_string(checked) + " premises, " + std::to_string(broken) +
                                " without R",
                            checked >= 4 && broken == 0};
          });
}

// ---------------------------------------------------------------- prop4

bool well_posed_r0(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  // keep draws away from singular principal submatrices
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    Matrix s(idx.size(), idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c) s(r, c) = a(idx[r], idx[c]);
    if (std::abs(s.determinant()) < 0.05) return false;
  }
  return lcp_is_r0(a);
}

void prop4_degree(Runner& run, std::uint64_t seed) {
  run.add("deg(matrix_power_tensor(A,k)) = lcp_degree(A), 20 random R0 matrices",
          "exact equality", "PAPER", [&] {
            Rng rng(seed);
            int done = 0, mismatches = 0;
            std::map<int, int> histogram;
            std::string first;
            while (done < 20) {
              const int n = done < 10 ? 2 : 3;
              const int k = done % 2 == 0 ? 3 : 5;
              const Matrix A = rng.uniform_matrix(n, n, -1.0, 1.0);
              if (!well_posed_r0(A)) continue;
              const int dl = lcp_degree(A, seed + done).value;
              DegreeOptions o;
              o.seed = seed + done;
              const int dt = tensor_degree(matrix_power_tensor(A, k), DegreeMethod::kBoth, o).value;
              ++histogram[dl];
              if (dl != dt) {
                ++mismatches;
                if (first.empty())
                  first = "; first mismatch lcp " + std::to_string(dl) + " vs tensor " +
                          std::to_string(dt);
              }
              ++done;
            }
            std::string h;
            for (const auto& [d, c] : histogram)
              h += (h.empty() ? "" : ", ") + std::string("deg ") + std::to_string(d) + " x" +
                   std::to_string(c);
            return Observed{std::to_string(mismatches) + " mismatches (" + h + ")" + first,
                            mismatches == 0};
          });
}

// ---------------------------------------------------------------- remark3

void remark3(Runner& run, std::uint64_t seed) {
  const Matrix A = example1_matrix();
  run.add("theta-scaled Example 1 tensor, r = 1: R0", "holds", "PAPER", [&] {
    const ClassVerdict v = is_R0(theta_scaled_map(A, 3, 1).leading_tensor());
    return Observed{to_string(v.verdict), holds(v.verdict)};
  });
  run.add("theta-scaled Example 1 tensor, r = 1: degree", "-1 (both methods)", "PAPER", [&] {
    DegreeOptions o;
    o.seed = seed;
    const DegreeEstimate d =
        tensor_degree(theta_scaled_map(A, 3, 1).leading_tensor(), DegreeMethod::kBoth, o);
    return Observed{std::to_string(d.value) + " / winding " +
                        std::to_string(d.winding_value.value_or(0)),
                    d.value == -1 && d.winding_value == -1};
  });
  run.add("theta-scaled, r = 2: degree equals lcp_degree(A)", "-1", "DERIVED", [&] {
    DegreeOptions o;
    o.seed = seed;
    const int d =
        tensor_degree(theta_scaled_map(A, 3, 2).leading_tensor(), DegreeMethod::kBoth, o).value;
    return Observed{std::to_string(d), d == lcp_degree(A, seed).value};
  });
  run.add("|x|^2 x winding degree", "1", "DERIVED", [&] {
    const int w = winding_degree_2d(theta_scaled_map(Matrix::Identity(2, 2), 1, 1));
    return Observed{std::to_string(w), w == 1};
  });
  run.add("theta_scaled_map(rotation, 1, 1) equals Example 2's f_inf", "equal coefficients",
          "PAPER", [&] {
            Matrix rot(2, 2);
            rot << 0, -1, 1, 0;
            const Tensor a = theta_scaled_map(rot, 1, 1).leading_tensor();
            const Tensor b = example2_map().leading_tensor();
            double diff = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i)
              diff = std::max(diff, std::abs(a.coeffs()[i] - b.coeffs()[i]));
            return Observed{"max difference " + str(diff), diff == 0.0};
          });
}

// ---------------------------------------------------------------- remark5

void remark5(Runner& run, std::uint64_t seed) {
  const PcpInstance inst = remark5_instance(remark5_tensor());
  const Vector e = Vector::Ones(2);
  run.add("enumerate_solutions, radius 3", "exactly {0, e}", "PAPER", [&] {
    SolveConfig cfg;
    cfg.search_radius = 3.0;
    const std::vector<Vector> got = xs(enumerate_solutions(inst, cfg));
    return Observed{str(got), same_set(got, {Vector::Zero(2), e}, 1e-8)};
  });
  run.add("verify_solution at 0 and e", "0 violation", "DERIVED", [&] {
    const double a = verify_solution(inst, Vector::Zero(2), 1e-12).max_violation;
    const double b = verify_solution(inst, e, 1e-12).max_violation;
    return Observed{str(a) + ", " + str(b), a <= 1e-12 && b <= 1e-12};
  });
  run.add("diagonal tensor (x1^2, x2^2): d and solutions", "d = (-2,-2); {0,1}^2 (includes 0, e)",
          "PAPER", [&] {
            Tensor t(3, 2);
            t({0, 0, 0}) = 1.0;
            t({1, 1, 1}) = 1.0;
            const PcpInstance diag = remark5_instance(t);
            const Matrix D = diag.f.terms().front().to_matrix();
            SolveConfig cfg;
            cfg.search_radius = 3.0;
            const std::vector<Vector> got = xs(enumerate_solutions(diag, cfg));
            const bool ok = std::abs(D(0, 0) + 2) < 1e-15 && std::abs(D(1, 1) + 2) < 1e-15 &&
                            same_set(got, {vec({0, 0}), vec({0, 1}), vec({1, 0}), vec({1, 1})},
                                     1e-8);
            return Observed{"d = " + str(vec({D(0, 0), D(1, 1)})) + ", " + str(got), ok};
          });
  run.add("gus_probe on the constructed map", "fails", "PAPER", [&] {
    GusOptions o;
    o.seed = seed;
    o.extra_q = {e};
    const ClassVerdict v = gus_probe(inst.f, o);
    return Observed{to_string(v.verdict), v.verdict == Verdict::kFails};
  });
}

// ---------------------------------------------------------------- karamardian

void karamardian(Runner& run, std::uint64_t seed) {
  Rng rng(seed);
  const Tensor cube = diagonal_power_tensor(2, 3);
  for (int i = 0; i < 5; ++i) {
    Matrix B = rng.uniform_matrix(2, 2, -1.0, 1.0);
    B *= 0.5 / B.jacobiSvd().singularValues()[0];
    const PolynomialMap f(2, {cube, Tensor::from_matrix(B)});
    const std::string tag = "B" + std::to_string(i + 1);
    for (bool use_f : {true, false}) {
      run.add(tag + ": homotopy, g = " + (use_f ? "f" : "f_inf") + ", d = e",
              "bounded, endpoint degrees 1 and 1", "PAPER", [&] {
                HomotopyRequest req;
                req.mode = HomotopyMode::kKaramardian;
                req.d = Vector::Ones(2);
                req.g = use_f ? f : f.leading_term();
                DegreeOptions o;
                o.seed = seed + i;
                const HomotopyReport h = homotopy_invariance_check(f, req, o);
                const std::string text =
                    std::string(h.bounded ? "bounded" : "unbounded?") + ", max root " +
                    str(h.max_root_norm) + ", degrees " +
                    (h.degree_start ? std::to_string(*h.degree_start) : "none") + " and " +
                    (h.degree_end ? std::to_string(*h.degree_end) : "none") +
                    (h.precondition_ok ? "" : ", precondition: " + h.precondition_note);
                return Observed{text, h.pass && h.bounded && h.degree_start == 1 &&
                                          h.degree_end == 1};
              });
    }
    run.add(tag + ": solve for 50 random q", "50/50", "PAPER", [&] {
      Rng qr(seed + 100 + i);
      int ok = 0;
      for (int k = 0; k < 50; ++k) {
        SolveConfig cfg;
        cfg.seed = seed + k;
        const SolveReport r = solve(PcpInstance(f, qr.uniform_vector(2, -2.0, 2.0)), cfg);
        if (r.status == SolveStatus::kSolved) ++ok;
      }
      return Observed{std::to_string(ok) + "/50", ok == 50};
    });
  }
  run.add("to-leading-term homotopy, f = x^[3] + x, q = (-1,-1)", "degrees 1 and 1", "DERIVED",
          [&] {
            const PolynomialMap f(2, {cube, Tensor::from_matrix(Matrix::Identity(2, 2))});
            HomotopyRequest req;
            req.q = vec({-1, -1});
            const HomotopyReport h = homotopy_invariance_check(f, req);
            return Observed{(h.degree_start ? std::to_string(*h.degree_start) : "none") +
                                " and " + (h.degree_end ? std::to_string(*h.degree_end) : "none"),
                            h.pass && h.degree_start == 1 && h.degree_end == 1};
          });
  run.add("Example 1 f_inf with d = e", "precondition SOL(f_inf,d)={0} fails", "PAPER", [&] {
    const PolynomialMap f = PolynomialMap::homogeneous(example1_tensor());
    HomotopyRequest req;
    req.mode = HomotopyMode::kKaramardian;
    req.d = Vector::Ones(2);
    req.g = f;
    const HomotopyReport h = homotopy_invariance_check(f, req);
    return Observed{h.precondition_ok ? "precondition held" : h.precondition_note,
                    !h.precondition_ok};
  });
}

// ---------------------------------------------------------------- properties

std::vector<PolynomialMap> property_maps() {
  std::vector<PolynomialMap> maps;
  for (const CatalogEntry& c : example_catalog()) maps.push_back(c.as_map());
  return maps;
}

void properties(Runner& run, std::uint64_t seed) {
  run.add("min-relation on 10^4 random pairs", "both directions hold", "TRIVIAL", [&] {
    Rng rng(seed);
    const double vals[] = {-1.5, -0.25, 0.0, 0.0, 0.0, 0.5, 2.0};
    int bad = 0;
    std::vector<double> x(3), y(3), out(3);
    for (int k = 0; k < 10000; ++k) {
      for (int i = 0; i < 3; ++i) {
        x[i] = vals[static_cast<int>(rng.uniform() * 7)];
        y[i] = vals[static_cast<int>(rng.uniform() * 7)];
      }
      kernels::active().min_map(x, y, out);
      const bool lhs = out[0] == 0.0 && out[1] == 0.0 && out[2] == 0.0;
      bool rhs = true;
      double ip = 0.0;
      for (int i = 0; i < 3; ++i) {
        rhs = rhs && x[i] >= 0.0 && y[i] >= 0.0;
        ip += x[i] * y[i];
      }
      rhs = rhs && ip == 0.0;
      if (lhs != rhs) ++bad;
    }
    return Observed{std::to_string(bad) + " violations", bad == 0};
  });
  run.add("homogeneity, relative 1e-10", "holds on catalog and random tensors", "TRIVIAL", [&] {
    Rng rng(seed + 1);
    std::vector<Tensor> ts;
    for (const CatalogEntry& c : example_catalog()) {
      const PolynomialMap m = c.as_map();
      for (const Tensor& t : m.terms()) ts.push_back(t);
    }
    for (int k = 0; k < 10; ++k) {
      const int m = 2 + k % 4, n = 2 + k % 3;
      std::vector<double> c(ipow(n, m));
      for (double& v : c) v = rng.uniform(-1, 1);
      ts.emplace_back(m, n, std::move(c));
    }
    double worst = 0.0;
    for (const Tensor& t : ts) {
      for (int k = 0; k < 20; ++k) {
        const Vector x = rng.uniform_vector(t.dim(), -1, 1);
        const double lam = rng.uniform(0.1, 4.0);
        const Vector a = t.apply(lam * x);
        const Vector b = std::pow(lam, t.order() - 1) * t.apply(x);
        worst = std::max(worst, (a - b).cwiseAbs().maxCoeff() / (1e-300 + b.cwiseAbs().maxCoeff()));
      }
    }
    return Observed{"max relative error " + str(worst), worst <= 1e-10};
  });
  run.add("Jacobian vs central differences, 100 points per map", "max error <= 1e-5", "DERIVED",
          [&] {
            Rng rng(seed + 2);
            double worst = 0.0;
            for (const PolynomialMap& f : property_maps()) {
              const int n = f.dim();
              for (int k = 0; k < 100; ++k) {
                Vector x = rng.uniform_vector(n, -1, 1);
                if (x.norm() > 1) x /= x.norm() * 1.0001;
                const Matrix J = f.jacobian(x);
                for (int j = 0; j < n; ++j) {
                  Vector xp = x, xm = x;
                  xp[j] += 1e-6;
                  xm[j] -= 1e-6;
                  const Vector fd = (f.eval(xp) - f.eval(xm)) / 2e-6;
                  worst = std::max(worst, (fd - J.col(j)).cwiseAbs().maxCoeff());
                }
              }
            }
            return Observed{"max error " + str(worst), worst <= 1e-5};
          });
  run.add("leading-term limit tightens over lambda = 10, 100, 1000", "monotone", "DERIVED", [&] {
    bool ok = true;
    for (const PolynomialMap& f : property_maps()) {
      const PolynomialMap lead = f.leading_term();
      const Vector x = Vector::Ones(f.dim());
      double prev = std::numeric_limits<double>::infinity();
      for (double lam : {10.0, 100.0, 1000.0}) {
        const double err = (f.eval(lam * x) / std::pow(lam, f.degree()) - lead.eval(x)).norm();
        if (err > prev + 1e-12) ok = false;
        prev = err;
      }
    }
    const PolynomialMap f2 = example2_map();
    const Vector x = vec({1, 1});
    const double err = (f2.eval(1e3 * x) / 1e9 - f2.leading_term().eval(x)).norm();
    ok = ok && err <= 1e-2 * f2.leading_term().eval(x).norm() + 1e-6;
    return Observed{ok ? "monotone" : "not monotone", ok};
  });
  run.add("odd-power bijection, k = 1, 3, 5", "relative error <= 1e-12", "TRIVIAL", [&] {
    Rng rng(seed + 3);
    double worst = 0.0;
    for (int k : {1, 3, 5}) {
      for (int t = 0; t < 1000; ++t) {
        const Vector y = rng.uniform_vector(4, -10, 10);
        const Vector back = componentwise_root(componentwise_power(y, k), k);
        worst = std::max(worst, (back - y).cwiseAbs().maxCoeff() / y.cwiseAbs().maxCoeff());
      }
    }
    return Observed{"max relative error " + str(worst), worst <= 1e-12};
  });
  run.add("kernel variants agree", "scalar and SIMD equal to 1e-12 relative", "TRIVIAL", [&] {
    const kernels::KernelTable* simd = kernels::avx2_table();
    if (!simd || !kernels::cpu_supports(kernels::Isa::kAvx2))
      return Observed{"SIMD variant unavailable; scalar only", true};
    const kernels::KernelTable& sc = kernels::scalar_table();
    Rng rng(seed + 4);
    double worst = 0.0;
    for (int len : {1, 3, 4, 7, 8, 15, 64, 1000}) {
      std::vector<double> a(len), b(len), o1(len), o2(len);
      for (int i = 0; i < len; ++i) {
        a[i] = rng.uniform(-1, 1);
        b[i] = rng.uniform(-1, 1);
      }
      const double scale = 1.0 + std::abs(sc.dot(a, a));
      worst = std::max(worst, std::abs(sc.dot(a, b) - simd->dot(a, b)) / scale);
      sc.min_map(a, b, o1);
      simd->min_map(a, b, o2);
      for (int i = 0; i < len; ++i) worst = std::max(worst, std::abs(o1[i] - o2[i]));
      worst = std::max(worst, std::abs(sc.natural_residual_inf(a, b) - simd->natural_residual_inf(a, b)));
      std::vector<double> y1 = b, y2 = b;
      sc.axpy(0.7, a, y1);
      simd->axpy(0.7, a, y2);
      for (int i = 0; i < len; ++i) worst = std::max(worst, std::abs(y1[i] - y2[i]));
    }
    return Observed{"max difference " + str(worst), worst <= 1e-12};
  });
  run.add("determinism: two runs with one seed", "identical JSON", "TRIVIAL", [&] {
    auto once = [&] {
      SolveConfig cfg;
      cfg.seed = seed;
      nlohmann::json j;
      j["solve"] = report::to_json(solve(PcpInstance(example3_map(), example3_q(2)), cfg));
      j["enumerate"] = report::to_json(
          enumerate_solutions(remark5_instance(remark5_tensor()), cfg));
      DegreeOptions o;
      o.seed = seed;
      j["degree"] = report::to_json(tensor_degree(example1_tensor(), DegreeMethod::kBoth, o));
      StrongQOptions sq;
      sq.trials = 5;
      sq.seed = seed;
      j["strong_q"] = report::to_json(strong_q_probe(example1_tensor(), sq));
      return j.dump();
    };
    const std::string a = once(), b = once();
    return Observed{a == b ? "identical" : "different", a == b};
  });
}

// ---------------------------------------------------------------- copositive-S

void copositive_s(Runner& run, std::uint64_t seed) {
  run.add("copositive f_inf with S = {0}: solve for 50 random q", "every q solved", "PAPER", [&] {
    int maps = 0, solved = 0, tried = 0;
    Rng rng(seed);
    for (const CatalogEntry& c : example_catalog()) {
      if (!c.tensor) continue;
      const PolynomialMap F = PolynomialMap::homogeneous(*c.tensor);
      if (!holds(is_copositive(F).verdict) || !check_sol_infty_zero(F).zero_only) continue;
      ++maps;
      for (int k = 0; k < 50; ++k) {
        SolveConfig cfg;
        cfg.seed = seed + k;
        ++tried;
        if (solve(PcpInstance(F, rng.uniform_vector(F.dim(), -2, 2)), cfg).status ==
            SolveStatus::kSolved)
          ++solved;
      }
    }
    return Observed{std::to_string(maps) + " maps, " + std::to_string(solved) + "/" +
                        std::to_string(tried) + " solved",
                    maps >= 3 && solved == tried};
  });
  run.add("copositive f with S = ray(1,0): q inside int(S*) solvable", "every interior q solved",
          "PAPER", [&] {
            // f(x) = (0, x2^3) + x
            Tensor t(4, 2);
            t({1, 1, 1, 1}) = 1.0;
            const PolynomialMap f(2, {t, Tensor::from_matrix(Matrix::Identity(2, 2))});
            if (!holds(is_copositive(f).verdict)) return Observed{"f not copositive", false};
            const ConeSample s = sol_cone_sample(f);
            Rng rng(seed + 1);
            int interior = 0, solved = 0;
            for (int k = 0; k < 50; ++k) {
              const Vector q = rng.uniform_vector(2, -2, 2);
              if (dual_interior_test(q, s) != DualPosition::kInterior) continue;
              ++interior;
              SolveConfig cfg;
              cfg.seed = seed + k;
              if (solve(PcpInstance(f, q), cfg).status == SolveStatus::kSolved) ++solved;
            }
            return Observed{"S = " + str(s.generators) + "; " + std::to_string(solved) + "/" +
                                std::to_string(interior) + " interior q solved",
                            s.generators.size() == 1 && interior > 0 && solved == interior};
          });
  run.add("Example 2 is outside the theorem: q interior but f not copositive",
          "interior, f fails copositivity, f_inf copositive", "PAPER", [&] {
            const PolynomialMap f = example2_map();
            const DualPosition p = dual_interior_test(example2_q(), sol_cone_sample(f));
            const Verdict vf = is_copositive(f).verdict;
            const Verdict vinf = is_copositive(f.leading_term()).verdict;
            return Observed{std::string(to_string(p)) + ", f " + to_string(vf) + ", f_inf " +
                                to_string(vinf),
                            p == DualPosition::kInterior && vf == Verdict::kFails &&
                                holds(vinf)};
          });
}

using ScenarioFn = void (*)(Runner&, std::uint64_t);

const std::vector<std::pair<std::string, ScenarioFn>>& table() {
  static const std::vector<std::pair<std::string, ScenarioFn>> t{
      {"example1", example1},
      {"example2", example2},
      {"example3", example3},
      {"eq4-equivalence", eq4_equivalence},
      {"r-degree-one", r_degree_one},
      {"prop4-degree", prop4_degree},
      {"remark3", remark3},
      {"remark5", remark5},
      {"karamardian", karamardian},
      {"properties", properties},
      {"copositive-S", copositive_s},
  };
  return t;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [id, fn] : table()) n.push_back(id);
    return n;
  }();
  return names;
}

ScenarioReport reproduce(const std::string& id, std::uint64_t seed) {
  for (const auto& [name, fn] : table()) {
    if (name != id) continue;
    ScenarioReport rep;
    rep.id = id;
    rep.seed = seed;
    Runner run(rep);
    const auto t0 = std::chrono::steady_clock::now();
    fn(run, seed);
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
  }
  throw InvalidInput("unknown scenario: " + id);
}

nlohmann::json to_json(const ScenarioReport& r, bool with_timing) {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"expected", c.expected},
                      {"observed", c.observed},
                      {"provenance", c.provenance},
                      {"pass", c.pass}});
  nlohmann::json j{{"scenario", r.id}, {"seed", r.seed}, {"checks", checks}, {"pass", r.pass()}};
  if (with_timing) j["wall_seconds"] = r.wall_seconds;
  return j;
}

}  // namespace pcpkit
