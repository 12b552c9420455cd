#include "pcpkit/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "pcpkit/errors.hpp"

namespace pcpkit::io {

namespace {

[[noreturn]] void fail(const std::string& context, const std::string& msg) {
  throw ParseError(context + ": " + msg);
}

const json& field(const json& j, const char* key, const std::string& context) {
  if (!j.is_object()) fail(context, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(context, std::string("missing field \"") + key + "\"");
  return *it;
}

int positive_int(const json& j, const std::string& context) {
  if (!j.is_number_integer() || j.get<long long>() < 1)
    fail(context, "expected a positive integer");
  return j.get<int>();
}

double finite_number(const json& j, const std::string& context) {
  if (!j.is_number()) fail(context, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(context, "value is not finite");
  return v;
}

}  // namespace

Tensor tensor_from_json(const json& j, const std::string& context) {
  const int order = positive_int(field(j, "order", context), context + ".order");
  const int dim = positive_int(field(j, "dim", context), context + ".dim");
  const json& entries = field(j, "entries", context);
  if (!entries.is_array()) fail(context + ".entries", "expected an array");

  Tensor t(order, dim);
  std::set<std::vector<int>> seen;
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const std::string ctx = context + ".entries[" + std::to_string(e) + "]";
    const json& idx_j = field(entries[e], "idx", ctx);
    if (!idx_j.is_array() || static_cast<int>(idx_j.size()) != order)
      fail(ctx + ".idx", "expected " + std::to_string(order) + " indices");
    std::vector<int> idx;
    for (const json& i : idx_j) {
      if (!i.is_number_integer() || i.get<int>() < 1 || i.get<int>() > dim)
        fail(ctx + ".idx", "index out of range 1.." + std::to_string(dim));
      idx.push_back(i.get<int>() - 1);
    }
    if (!seen.insert(idx).second) fail(ctx + ".idx", "duplicate index tuple");
    t(idx) = finite_number(field(entries[e], "val", ctx), ctx + ".val");
  }
  return t;
}

json tensor_to_json(const Tensor& t) {
  json entries = json::array();
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    const double v = t.coeffs()[flat];
    if (v == 0.0) continue;
    std::vector<int> idx = t.multi_index(flat);
    for (int& i : idx) ++i;
    entries.push_back({{"idx", idx}, {"val", v}});
  }
  return {{"order", t.order()}, {"dim", t.dim()}, {"entries", entries}};
}

LoadedMap map_from_json(const json& j) {
  const int dim = positive_int(field(j, "dim", "map"), "map.dim");
  const json& terms_j = field(j, "terms", "map");
  if (!terms_j.is_array() || terms_j.empty())
    fail("map.terms", "expected a nonempty array");
  std::vector<Tensor> terms;
  Vector constant = Vector::Zero(dim);
  for (std::size_t k = 0; k < terms_j.size(); ++k) {
    const std::string ctx = "map.terms[" + std::to_string(k) + "]";
    Tensor t = tensor_from_json(terms_j[k], ctx);
    if (t.dim() != dim)
      fail(ctx + ".dim", "term dimension differs from map dimension");
    if (t.order() == 1)
      constant += t.apply(Vector::Zero(dim));
    else
      terms.push_back(std::move(t));
  }
  if (terms.empty()) fail("map.terms", "map has no nonconstant term");
  try {
    return {PolynomialMap(dim, std::move(terms)), constant};
  } catch (const InvalidInput& e) {
    fail("map", e.what());
  }
}

json map_to_json(const PolynomialMap& f) {
  json terms = json::array();
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it)
    terms.push_back(tensor_to_json(*it));
  return {{"dim", f.dim()}, {"terms", terms}};
}

LoadedMap map_or_tensor_from_json(const json& j) {
  if (j.is_object() && j.contains("terms")) return map_from_json(j);
  Tensor t = tensor_from_json(j);
  if (t.order() < 2) fail("tensor", "order must be >= 2 to define a map");
  const int n = t.dim();
  try {
    return {PolynomialMap::homogeneous(std::move(t)), Vector::Zero(n)};
  } catch (const InvalidInput& e) {
    fail("tensor", e.what());
  }
}

Matrix matrix_from_json(const json& j, const std::string& context) {
  if (!j.is_array() || j.empty()) fail(context, "expected a nonempty 2-D array");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) fail(context + "[0]", "expected a row array");
  const std::size_t cols = j[0].size();
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rc = context + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols)
      fail(rc, "expected a row of length " + std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = finite_number(j[r][c], rc + "[" + std::to_string(c) + "]");
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

Vector vector_from_json(const json& j, const std::string& context) {
  if (!j.is_array() || j.empty()) fail(context, "expected a nonempty array");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v[i] = finite_number(j[i], context + "[" + std::to_string(i) + "]");
  return v;
}

json vector_to_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json parse(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // byte offset -> line/column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(source + ":" + std::to_string(line) + ":" +
                     std::to_string(col) + ": " + e.what());
  }
}

json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

void write_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError(path.string() + ": cannot open for writing");
  out << j.dump(2) << '\n';
}

}  // namespace pcpkit::io
