#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcpkit/config.hpp"
#include "pcpkit/tensor.hpp"

namespace pcpkit {

struct SolveConfig {
  int multistart_count = 64;
  std::uint64_t seed = 1;
  int newton_max_iters = 100;
  double damping_factor = 0.5;  // Armijo backtracking factor
  int max_halvings = 30;
  double feasibility_tol = 1e-8;
  double complementarity_tol = 1e-8;
  double search_radius = 10.0;
  int pattern_enum_dim_cap = 4;
  int enum_grid_per_axis = 9;
  double dedup_tol = 1e-6;

  /// Throws InvalidInput on non-positive tolerances or counts.
  void validate() const;
};

enum class SolveStatus {
  kSolved,
  kAllSolutionsEnumerated,
  kNoSolutionCertified,
  kBudgetExhausted,
};

const char* to_string(SolveStatus s);

/// Violations of x >= 0, f(x)+q >= 0 and complementarity (sum |x_i y_i|).
struct ResidualReport {
  double nonnegativity = 0.0;
  double feasibility = 0.0;
  double complementarity = 0.0;
  double max_violation = 0.0;
  double natural_residual = 0.0;  // ||min{x, f(x)+q}||_inf
  bool pass = false;
};

ResidualReport verify_solution(const PcpInstance& inst, const Vector& x, double tol);

struct Solution {
  Vector x;
  ResidualReport residuals;
};

/// Per complementary pattern bookkeeping for enumerate_solutions.
struct PatternDiagnostics {
  unsigned support = 0;  // bit i set: (f(x)+q)_i = 0, x_i free
  int starts = 0;
  int converged = 0;
  int roots = 0;  // distinct roots passing the sign filter
  bool saturated = true;      // no new root in the second half of the starts
  bool singular_root = false; // a root with a singular piece Jacobian
  bool boundary_root = false; // a root near the search radius
};

struct UnsolvabilityCertificate {
  Vector box_lo;
  Vector box_hi;
  double grid_step = 0.0;
  long long grid_points = 0;
  double min_grid_residual = 0.0;
  Vector argmin;
  double lipschitz = 0.0;  // estimate of the min-map's Lipschitz constant
  double margin = 0.0;     // lipschitz / 2; certified needs min > margin * step
  bool certified = false;
};

struct SolveReport {
  SolveStatus status = SolveStatus::kBudgetExhausted;
  std::vector<Solution> solutions;
  std::optional<UnsolvabilityCertificate> certificate;
  bool complete = false;  // enumerate: every pattern saturated, no singular roots
  int starts_tried = 0;
  std::vector<PatternDiagnostics> patterns;
  std::vector<std::string> notes;
};

/// Damped semismooth Newton on x -> min{x, f(x)+q} from the origin, a
/// heuristic seed and seeded random points; returns the first verified
/// solution.
SolveReport solve(const PcpInstance& inst, const SolveConfig& cfg = {});

/// All solutions within the search radius via the 2^n complementary
/// pattern systems, each solved by multistart Newton from a grid.
SolveReport enumerate_solutions(const PcpInstance& inst, const SolveConfig& cfg = {});

/// Options for the search of nonzero roots of min{u, F(u)} = 0 with F
/// homogeneous.
struct ConeSearchOptions {
  int simplex_divisions = 8;
  int random_per_face = 32;
  std::uint64_t seed = 7;
  int lm_iters = 200;
  double root_tol = 1e-10;  // relative to 1 + max |coefficient|
};

/// Unit-norm nonzero roots of min{u, F(u)} = 0 (deduplicated). With
/// stop_at_first the search returns after the first root.
std::vector<Vector> find_cone_roots(const PolynomialMap& homogeneous,
                                    const ConeSearchOptions& opts = {},
                                    bool stop_at_first = false);

struct SolInftyVerdict {
  bool zero_only = true;
  Vector witness;  // unit norm, set when !zero_only
  double witness_residual = 0.0;
  std::string note;
};

/// Sampling check of SOL(f_inf, 0) = {0}. A "zero-only" answer is one-sided.
SolInftyVerdict check_sol_infty_zero(const PolynomialMap& f,
                                     const ConeSearchOptions& opts = {});

struct BoundednessReport {
  int problems = 0;
  int solved = 0;
  double max_norm = 0.0;          // over all solutions at the settled radius
  double max_norm_doubled = 0.0;  // same with that radius doubled
  double max_radius = 0.0;        // largest settled radius over K
  bool boundary_hit = false;      // some q never settled
  bool stable = false;
  std::vector<Vector> unsolved_q;
};

/// Enumerates SOL(f, q) for every q in K, starting at the configured radius
/// and doubling until a nonempty solution set stops changing when the radius
/// doubles again. Requires check_sol_infty_zero(f) to be zero-only.
BoundednessReport boundedness_probe(const PolynomialMap& f, const std::vector<Vector>& K,
                                    const SolveConfig& cfg = {}, int max_doublings = 6);

/// Grid evaluation of ||min{x, f(x)+q}||_inf over an axis-aligned box. The
/// caller must justify that the box holds every candidate solution.
UnsolvabilityCertificate certify_unsolvable(const PcpInstance& inst, const Vector& lo,
                                            const Vector& hi, double grid_step);

/// Real-algebraic consistency of one pattern system, for quadratic maps
/// (leading order <= 3). Looks for a combination of the active equations
/// that is a semidefinite quadratic; its zero set is then an affine
/// subspace on which the remaining equations are checked.
struct PatternConsistency {
  unsigned support = 0;
  enum class Verdict { kInconsistent, kUnknown } verdict = Verdict::kUnknown;
  Vector multipliers;    // weights of the combined equations
  Vector subspace_point; // y0, zero set is y0 + span(direction)
  Vector direction;
  std::string reason;
};

PatternConsistency analyze_pattern_system(const PcpInstance& inst, unsigned support);

}  // namespace pcpkit
