#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcpkit/degree_estimate.hpp"
#include "pcpkit/solver.hpp"
#include "pcpkit/tensor.hpp"

namespace pcpkit {

struct DegreeOptions {
  std::uint64_t seed = 1;
  int max_retries = 20;
  double tie = 1e-6;             // min-selection margin that forces a retry
  double singular_rel = 1e-10;   // |det| relative to row norms
  double initial_radius = 1.0;   // preimage search box, grown by doubling
  int max_doublings = 6;
  double min_radius = 0.0;       // keep doubling at least up to this radius
  double fixed_radius = 0.0;     // > 0: count only preimages in this box (no growth)
  int grid_per_axis = 0;         // 0: pick by dimension
};

/// Degree of x -> min{x, f(x)+q} over the box |x|_inf <= r with respect to
/// 0, by counting preimages of a small generic p. With fixed_radius unset
/// the box grows until the preimage set stops changing (local degree).
DegreeEstimate min_map_degree(const PolynomialMap& f, const Vector& q,
                              const DegreeOptions& opts = {});

/// Local degree of min{x, F(x)} at the origin for homogeneous F, n <= 4.
/// Requires SOL(F, 0) = {0} (sampling check).
DegreeEstimate local_degree_min_map(const PolynomialMap& F, const DegreeOptions& opts = {});

struct WindingOptions {
  double radius = 1.0;
  int samples = 4096;
  int max_depth = 40;  // bisection depth per interval
};

/// Winding number of min{x, F(x)+q} along the circle of the given radius.
int winding_degree_2d(const PolynomialMap& F, const WindingOptions& opts = {},
                      const std::optional<Vector>& q = std::nullopt);

/// deg(A) for an R0 tensor; for n = 2 the winding number is computed as
/// well and must agree.
DegreeEstimate tensor_degree(const Tensor& a, DegreeMethod method = DegreeMethod::kBoth,
                             const DegreeOptions& opts = {});

enum class HomotopyMode { kToLeadingTerm, kKaramardian };

struct HomotopyRequest {
  HomotopyMode mode = HomotopyMode::kToLeadingTerm;
  Vector q;                         // to-leading-term: endpoint constant
  Vector d;                         // karamardian: the positive vector
  std::optional<PolynomialMap> g;   // karamardian: g in {f, f_inf}; default f
  int t_steps = 10;
  double search_radius = 10.0;
};

struct HomotopyReport {
  bool precondition_ok = false;
  std::string precondition_note;
  std::vector<double> t_values;
  std::vector<int> roots_per_t;
  double max_root_norm = 0.0;
  bool bounded = false;       // no root near the search boundary
  bool inconclusive = false;  // boundary hit, degrees not compared
  double omega_radius = 0.0;
  std::optional<int> degree_start;
  std::optional<int> degree_end;
  bool degrees_equal = false;
  bool end_degree_one = false;  // karamardian only
  bool pass = false;
};

HomotopyReport homotopy_invariance_check(const PolynomialMap& f, const HomotopyRequest& req,
                                         const DegreeOptions& opts = {});

struct StabilityRow {
  double scale = 0.0;
  bool zero_only = false;
  std::optional<int> degree;
  bool unchanged = false;
};

struct StabilityReport {
  int base_degree = 0;
  std::vector<StabilityRow> rows;
  double largest_stable_scale = 0.0;  // 0 when no scale kept the degree
};

/// Perturbs every coefficient of the leading tensor by scale * U[-1, 1] and
/// recomputes the degree.
StabilityReport stability_radius_probe(const PolynomialMap& F, const std::vector<double>& scales,
                                       std::uint64_t seed = 1, const DegreeOptions& opts = {});

}  // namespace pcpkit
