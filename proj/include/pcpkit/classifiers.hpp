#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcpkit/solver.hpp"
#include "pcpkit/tensor.hpp"

namespace pcpkit {

/// Verdict vocabulary. A universal claim checked by sampling is never
/// reported as kHolds unless a finite argument backs it; kInconclusive is
/// used when the search neither found a witness nor can support the claim.
enum class Verdict { kHolds, kFails, kHoldsUpToSampling, kInconclusive };

const char* to_string(Verdict v);

/// kHolds or kHoldsUpToSampling.
inline bool holds(Verdict v) { return v == Verdict::kHolds || v == Verdict::kHoldsUpToSampling; }

struct ClassVerdict {
  std::string property;
  Verdict verdict = Verdict::kInconclusive;
  // kFails: a concrete witness (point, pair, d, or q + solutions).
  std::vector<Vector> witnesses;
  // strong-Q: the instance with no solution or an unbounded solution set.
  std::optional<PcpInstance> witness_instance;
  long long samples = 0;
  double tolerance = 0.0;
  double value = 0.0;  // the extremal quantity found (min, max, ...)
  std::vector<std::string> evidence;
};

/// SOL(A, 0) = {0}, via the cone root search.
ClassVerdict is_R0(const Tensor& a, const ConeSearchOptions& opts = {});

struct RProbeOptions {
  int random_d = 200;
  std::uint64_t seed = 11;
  SolveConfig solve;
};

/// R0 plus SOL(A, d) = {0} for some d > 0; tries e, the candidates and
/// random positive vectors.
ClassVerdict is_R(const Tensor& a, const std::vector<Vector>& d_candidates = {},
                  const RProbeOptions& opts = {});

struct CopositiveOptions {
  int random_points = 400;
  std::uint64_t seed = 13;
  int polish_starts = 6;
  int polish_iters = 400;
  double threshold = 1e-10;
};

/// <f(x), x> >= 0 on x >= 0 (strict: > 0 for x != 0). Homogeneous maps are
/// checked on the simplex, general maps on scaled simplices.
ClassVerdict is_copositive(const PolynomialMap& f, bool strict = false,
                           const CopositiveOptions& opts = {});

ClassVerdict is_Z_tensor(const Tensor& a);
ClassVerdict is_nonneg_pos_diag(const Tensor& a);
/// Z-tensor with A d^{m-1} > 0 for some d > 0.
ClassVerdict is_strong_M(const Tensor& a, std::uint64_t seed = 17, int restarts = 50);

struct GusOptions {
  int per_family = 10;  // q draws per family: positive, negative, mixed, boundary
  std::uint64_t seed = 19;
  std::vector<Vector> extra_q;
  SolveConfig solve;
};

/// At most one solution for every sampled q.
ClassVerdict gus_probe(const PolynomialMap& f, const GusOptions& opts = {});
ClassVerdict gus_probe(const Tensor& a, const GusOptions& opts = {});

/// A fixed instance whose non-existence is checked by certify_unsolvable on
/// the given box, which the caller must justify.
struct StrongQCandidate {
  PolynomialMap f;
  Vector q;
  Vector box_lo;
  Vector box_hi;
  double grid_step = 1e-3;
};

struct StrongQOptions {
  int trials = 50;
  std::uint64_t seed = 23;
  double q_scale = 2.0;
  std::vector<StrongQCandidate> candidates;
  SolveConfig solve;
};

ClassVerdict strong_q_probe(const Tensor& a, const StrongQOptions& opts = {});

struct PProbeOptions {
  int pairs = 2000;
  std::uint64_t seed = 29;
  double radius = 3.0;
  double min_separation = 0.05;
  double threshold = 1e-12;
  int polish_starts = 5;
};

/// max_i (x-y)_i [f(x)-f(y)]_i > 0 for sampled pairs x != y >= 0.
ClassVerdict p_property_check(const PolynomialMap& f, const PProbeOptions& opts = {});

struct ConeSample {
  std::vector<Vector> generators;  // unit norm
  bool exact = false;              // sampled, never enumerated exactly
};

ConeSample sol_cone_sample(const PolynomialMap& F, const ConeSearchOptions& opts = {});

enum class DualPosition { kInterior, kBoundary, kOutside };

const char* to_string(DualPosition p);

/// Position of q relative to the dual cone of S; delta is relative to |q|.
DualPosition dual_interior_test(const Vector& q, const ConeSample& s, double delta = 1e-6);

}  // namespace pcpkit
