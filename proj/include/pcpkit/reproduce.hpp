#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace pcpkit {

struct CheckResult {
  std::string name;
  std::string expected;
  std::string observed;
  std::string provenance;  // PAPER | DERIVED | TRIVIAL
  bool pass = false;
};

struct ScenarioReport {
  std::string id;
  std::uint64_t seed = 1;
  std::vector<CheckResult> checks;
  double wall_seconds = 0.0;

  bool pass() const;
};

/// Known scenario ids, in the order `reproduce all` runs them.
const std::vector<std::string>& scenario_names();

/// Runs one scenario. Throws InvalidInput for an unknown id; failures of
/// individual checks (including thrown errors) are recorded, not thrown.
ScenarioReport reproduce(const std::string& id, std::uint64_t seed = 1);

/// Wall time is left out unless requested so equal seeds give equal JSON.
nlohmann::json to_json(const ScenarioReport& r, bool with_timing = false);

}  // namespace pcpkit
