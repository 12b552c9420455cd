#pragma once

#include <json.hpp>

#include "pcpkit/classifiers.hpp"
#include "pcpkit/constructions.hpp"
#include "pcpkit/degree.hpp"
#include "pcpkit/lcp.hpp"
#include "pcpkit/solver.hpp"

namespace pcpkit::report {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json to_json(const ResidualReport& r);
json to_json(const SolveReport& r);
json to_json(const UnsolvabilityCertificate& c);
json to_json(const PatternConsistency& p);
json to_json(const SolInftyVerdict& v);
json to_json(const BoundednessReport& b);
json to_json(const LcpResult& r);
json to_json(const DegreeEstimate& d);
json to_json(const HomotopyReport& h);
json to_json(const StabilityReport& s);
json to_json(const ClassVerdict& v);
json to_json(const ConeSample& s);
json to_json(const CatalogEntry& c, bool with_data);

/// {"schema": 1, "seed": seed, <key>: body}
json envelope(const char* key, json body, std::uint64_t seed);

/// Reads a SolveConfig from {"multistart_count": ..., ...}; unknown keys
/// are a ParseError.
SolveConfig solve_config_from_json(const json& j, SolveConfig base = {});
json to_json(const SolveConfig& c);

}  // namespace pcpkit::report
