#include "pcpkit/report_json.hpp"

#include <cmath>
#include <set>

#include "pcpkit/errors.hpp"
#include "pcpkit/io.hpp"

namespace pcpkit {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput:
      return "invalid-input";
    case ErrorKind::kDegenerateInput:
      return "degenerate-input";
    case ErrorKind::kBudgetExhausted:
      return "budget-exhausted";
    case ErrorKind::kRefinementFailure:
      return "refinement-failure";
    case ErrorKind::kParse:
      return "parse-error";
  }
  return "?";
}

namespace report {

namespace {

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json vec(const Vector& v) { return io::vector_to_json(v); }

json vecs(const std::vector<Vector>& vs) {
  json a = json::array();
  for (const Vector& v : vs) a.push_back(vec(v));
  return a;
}

json support_bits(unsigned mask, int n) {
  json a = json::array();
  for (int i = 0; i < n; ++i)
    if (mask & (1u << i)) a.push_back(i + 1);
  return a;
}

}  // namespace

json to_json(const ResidualReport& r) {
  return {{"nonnegativity", num(r.nonnegativity)},
          {"feasibility", num(r.feasibility)},
          {"complementarity", num(r.complementarity)},
          {"max_violation", num(r.max_violation)},
          {"natural_residual", num(r.natural_residual)},
          {"pass", r.pass}};
}

json to_json(const UnsolvabilityCertificate& c) {
  return {{"box_lo", vec(c.box_lo)},
          {"box_hi", vec(c.box_hi)},
          {"grid_step", c.grid_step},
          {"grid_points", c.grid_points},
          {"min_grid_residual", num(c.min_grid_residual)},
          {"argmin", vec(c.argmin)},
          {"lipschitz", num(c.lipschitz)},
          {"margin", num(c.margin)},
          {"certified", c.certified},
          {"status", c.certified ? "certified" : "inconclusive"}};
}

json to_json(const SolveReport& r) {
  json j;
  j["status"] = to_string(r.status);
  json sols = json::array();
  for (const Solution& s : r.solutions)
    sols.push_back({{"x", vec(s.x)}, {"residuals", to_json(s.residuals)}});
  j["solutions"] = sols;
  j["complete"] = r.complete;
  j["starts_tried"] = r.starts_tried;
  if (r.certificate) j["certificate"] = to_json(*r.certificate);
  if (!r.patterns.empty()) {
    json pats = json::array();
    for (const PatternDiagnostics& p : r.patterns)
      pats.push_back({{"support", support_bits(p.support, 32)},
                      {"starts", p.starts},
                      {"converged", p.converged},
                      {"roots", p.roots},
                      {"saturated", p.saturated},
                      {"singular_root", p.singular_root},
                      {"boundary_root", p.boundary_root}});
    j["patterns"] = pats;
  }
  j["notes"] = r.notes;
  return j;
}

json to_json(const PatternConsistency& p) {
  json j{{"support", support_bits(p.support, 32)},
         {"verdict", p.verdict == PatternConsistency::Verdict::kInconsistent ? "inconsistent"
                                                                              : "unknown"},
         {"reason", p.reason}};
  if (p.multipliers.size()) j["multipliers"] = vec(p.multipliers);
  if (p.subspace_point.size()) j["subspace_point"] = vec(p.subspace_point);
  if (p.direction.size()) j["direction"] = vec(p.direction);
  return j;
}

json to_json(const SolInftyVerdict& v) {
  json j{{"verdict", v.zero_only ? "zero-only" : "nonzero-solution-found"}, {"note", v.note}};
  if (!v.zero_only) {
    j["witness"] = vec(v.witness);
    j["witness_residual"] = num(v.witness_residual);
  }
  return j;
}

json to_json(const BoundednessReport& b) {
  return {{"problems", b.problems},          {"solved", b.solved},
          {"max_norm", num(b.max_norm)},     {"max_norm_doubled", num(b.max_norm_doubled)},
          {"boundary_hit", b.boundary_hit},  {"max_radius", num(b.max_radius)},  {"stable", b.stable},
          {"unsolved_q", vecs(b.unsolved_q)}};
}

json to_json(const LcpResult& r) {
  json sing = json::array();
  for (const SingularPattern& s : r.singular_patterns)
    sing.push_back({{"support", support_bits(s.support, 32)},
                    {"consistent", s.consistent},
                    {"feasible_point", s.feasible_point}});
  return {{"status", to_string(r.status)},
          {"solutions", vecs(r.solutions)},
          {"work", r.work},
          {"non_isolated", r.non_isolated},
          {"singular_patterns", sing}};
}

json to_json(const DegreeEstimate& d) {
  json pre = json::array();
  for (const Preimage& p : d.preimages)
    pre.push_back({{"x", vec(p.x)},
                   {"pattern", support_bits(p.pattern, static_cast<int>(p.x.size()))},
                   {"sign", p.sign},
                   {"margin", num(p.margin)}});
  json j{{"value", d.value},
         {"method", to_string(d.method)},
         {"preimages", pre},
         {"preimage_count", d.preimages.size()},
         {"tie_margin", num(d.tie_margin)},
         {"retries", d.retries},
         {"search_radius", num(d.search_radius)},
         {"assumptions", d.assumptions}};
  if (d.regular_value.size()) j["regular_value"] = vec(d.regular_value);
  if (d.winding_value) j["winding_value"] = *d.winding_value;
  return j;
}

json to_json(const HomotopyReport& h) {
  json j{{"precondition_ok", h.precondition_ok},
         {"precondition_note", h.precondition_note},
         {"t_values", h.t_values},
         {"roots_per_t", h.roots_per_t},
         {"max_root_norm", num(h.max_root_norm)},
         {"bounded", h.bounded},
         {"inconclusive", h.inconclusive},
         {"omega_radius", num(h.omega_radius)},
         {"degrees_equal", h.degrees_equal},
         {"end_degree_one", h.end_degree_one},
         {"pass", h.pass}};
  j["degree_start"] = h.degree_start ? json(*h.degree_start) : json(nullptr);
  j["degree_end"] = h.degree_end ? json(*h.degree_end) : json(nullptr);
  return j;
}

json to_json(const StabilityReport& s) {
  json rows = json::array();
  for (const StabilityRow& r : s.rows)
    rows.push_back({{"scale", r.scale},
                    {"zero_only", r.zero_only},
                    {"degree", r.degree ? json(*r.degree) : json(nullptr)},
                    {"unchanged", r.unchanged}});
  return {{"base_degree", s.base_degree},
          {"rows", rows},
          {"largest_stable_scale", s.largest_stable_scale}};
}

json to_json(const ClassVerdict& v) {
  json j{{"property", v.property},
         {"verdict", to_string(v.verdict)},
         {"witnesses", vecs(v.witnesses)},
         {"samples", v.samples},
         {"tolerance", num(v.tolerance)},
         {"value", num(v.value)},
         {"evidence", v.evidence}};
  if (v.witness_instance)
    j["witness_instance"] = {{"map", io::map_to_json(v.witness_instance->f)},
                             {"q", vec(v.witness_instance->q)}};
  return j;
}

json to_json(const ConeSample& s) {
  return {{"generators", vecs(s.generators)}, {"exact", s.exact}};
}

json to_json(const CatalogEntry& c, bool with_data) {
  json exp = json::array();
  for (const ExpectedProperty& e : c.expected)
    exp.push_back({{"property", e.property},
                   {"expected", e.expected},
                   {"provenance", e.provenance},
                   {"citation", e.citation}});
  json j{{"name", c.name}, {"description", c.description}, {"expected", exp}};
  if (with_data) {
    if (c.map)
      j["map"] = io::map_to_json(*c.map);
    else if (c.tensor)
      j["tensor"] = io::tensor_to_json(*c.tensor);
    if (c.q) j["q"] = vec(*c.q);
  }
  return j;
}

json envelope(const char* key, json body, std::uint64_t seed) {
  return {{"schema", kSchemaVersion}, {"seed", seed}, {key, std::move(body)}};
}

SolveConfig solve_config_from_json(const json& j, SolveConfig c) {
  if (!j.is_object()) throw ParseError("config: expected an object");
  static const std::set<std::string> known{
      "multistart_count", "seed",        "newton_max_iters",     "damping_factor",
      "max_halvings",     "feasibility_tol", "complementarity_tol", "search_radius",
      "pattern_enum_dim_cap", "enum_grid_per_axis", "dedup_tol"};
  for (const auto& [key, val] : j.items()) {
    if (!known.count(key)) throw ParseError("config: unknown field \"" + key + "\"");
    const std::string ctx = "config." + key;
    if (!val.is_number()) throw ParseError(ctx + ": expected a number");
    if (key == "seed" && !val.is_number_unsigned())
      throw ParseError(ctx + ": expected a nonnegative integer");
  }
  auto geti = [&](const char* k, int& out) {
    if (j.contains(k)) {
      if (!j[k].is_number_integer()) throw ParseError(std::string("config.") + k + ": expected an integer");
      out = j[k].get<int>();
    }
  };
  auto getd = [&](const char* k, double& out) {
    if (j.contains(k)) out = j[k].get<double>();
  };
  geti("multistart_count", c.multistart_count);
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  geti("newton_max_iters", c.newton_max_iters);
  getd("damping_factor", c.damping_factor);
  geti("max_halvings", c.max_halvings);
  getd("feasibility_tol", c.feasibility_tol);
  getd("complementarity_tol", c.complementarity_tol);
  getd("search_radius", c.search_radius);
  geti("pattern_enum_dim_cap", c.pattern_enum_dim_cap);
  geti("enum_grid_per_axis", c.enum_grid_per_axis);
  getd("dedup_tol", c.dedup_tol);
  c.validate();
  return c;
}

json to_json(const SolveConfig& c) {
  return {{"multistart_count", c.multistart_count},
          {"seed", c.seed},
          {"newton_max_iters", c.newton_max_iters},
          {"damping_factor", c.damping_factor},
          {"max_halvings", c.max_halvings},
          {"feasibility_tol", c.feasibility_tol},
          {"complementarity_tol", c.complementarity_tol},
          {"search_radius", c.search_radius},
          {"pattern_enum_dim_cap", c.pattern_enum_dim_cap},
          {"enum_grid_per_axis", c.enum_grid_per_axis},
          {"dedup_tol", c.dedup_tol}};
}

}  // namespace report
}  // namespace pcpkit
