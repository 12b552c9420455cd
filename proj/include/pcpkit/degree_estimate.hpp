#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcpkit/config.hpp"

namespace pcpkit {

enum class DegreeMethod { kRegularValue, kWinding2d, kBoth };

const char* to_string(DegreeMethod m);

struct Preimage {
  Vector x;
  unsigned pattern = 0;  // bit i set: min picks x_i
  int sign = 0;          // sign(det) of the active piece's Jacobian
  double margin = 0.0;   // min distance to a tie among the min selections
};

/// Integer degree plus the evidence it was computed from.
struct DegreeEstimate {
  int value = 0;
  DegreeMethod method = DegreeMethod::kRegularValue;
  Vector regular_value;
  std::vector<Preimage> preimages;
  double tie_margin = 0.0;  // min over preimages; +inf when there are none
  int retries = 0;          // regular values discarded before this one
  double search_radius = 0.0;
  std::optional<int> winding_value;
  std::vector<std::string> assumptions;
};

}  // namespace pcpkit
