#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "pcpkit/tensor.hpp"

namespace pcpkit::io {

using nlohmann::json;

// Tensor file:
//   {"order": m, "dim": n, "entries": [{"idx": [i1, ..., im], "val": v}, ...]}
// with 1-based indices. Unlisted entries are zero; a repeated idx tuple is an
// error.
//
// Polynomial-map file:
//   {"dim": n, "terms": [tensor, ...]}
// Order-1 terms are constants and are returned separately so the caller can
// fold them into q. Terms of equal order are summed.

Tensor tensor_from_json(const json& j, const std::string& context = "tensor");
json tensor_to_json(const Tensor& t);

struct LoadedMap {
  PolynomialMap map;
  Vector constant;  // sum of order-1 terms, zero if none
};

LoadedMap map_from_json(const json& j);
json map_to_json(const PolynomialMap& f);

/// A file holding either a polynomial map ("terms") or a single tensor
/// ("order"); a tensor is read as the homogeneous map x -> A x^{m-1}.
LoadedMap map_or_tensor_from_json(const json& j);

Matrix matrix_from_json(const json& j, const std::string& context = "matrix");
json matrix_to_json(const Matrix& m);
Vector vector_from_json(const json& j, const std::string& context = "vector");
json vector_to_json(const Vector& v);

/// Parses JSON text; syntax errors become ParseError with line/column.
json parse(const std::string& text, const std::string& source);
json read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const json& j);

}  // namespace pcpkit::io
