#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcpkit/config.hpp"
#include "pcpkit/degree_estimate.hpp"

namespace pcpkit {

/// LCP(M, q): x >= 0, Mx + q >= 0, <x, Mx + q> = 0.
struct LcpInstance {
  LcpInstance(Matrix m, Vector q);

  Matrix M;
  Vector q;

  int dim() const { return static_cast<int>(q.size()); }
};

enum class LcpStatus { kSolved, kRayTermination, kInfeasiblePatternExhausted };

const char* to_string(LcpStatus s);

struct SingularPattern {
  unsigned support = 0;  // bit i set: x_i free, (Mx+q)_i = 0
  bool consistent = false;
  bool feasible_point = false;  // min-norm point of the system passes signs
};

struct LcpResult {
  LcpStatus status = LcpStatus::kInfeasiblePatternExhausted;
  std::vector<Vector> solutions;
  int work = 0;  // pivots (Lemke) or patterns examined (enumeration)
  bool non_isolated = false;
  std::vector<SingularPattern> singular_patterns;
};

/// Lemke's method with covering vector e and lexicographic ratio test.
/// Throws BudgetExhausted after `max_pivots`.
LcpResult lemke_solve(const LcpInstance& inst, int max_pivots = 0);

/// All solutions via the 2^n complementary patterns (n <= 12).
LcpResult lcp_enumerate(const LcpInstance& inst,
                        const Tolerances& tol = default_tolerances());

/// True when lcp_enumerate(M, 0) returns only the origin.
bool lcp_is_r0(const Matrix& m, const Tolerances& tol = default_tolerances());

/// Degree of x -> min{x, Mx} at the origin by regular-value counting.
/// Requires M to be R0. Throws InvalidInput / DegenerateInput.
DegreeEstimate lcp_degree(const Matrix& m, std::uint64_t seed,
                          const Tolerances& tol = default_tolerances());

/// Max violation of x >= 0, Mx + q >= 0 and |x_i (Mx+q)_i|.
double lcp_violation(const LcpInstance& inst, const Vector& x);

}  // namespace pcpkit
