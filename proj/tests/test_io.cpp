#include <gtest/gtest.h>

#include <filesystem>

#include "pcpkit/constructions.hpp"
#include "pcpkit/errors.hpp"
#include "pcpkit/io.hpp"
#include "test_util.hpp"

using namespace pcpkit;
using test::vec;

namespace {

std::string parse_error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Io, TensorRoundTrip) {
  const Tensor t = example1_tensor();
  const Tensor back = io::tensor_from_json(io::tensor_to_json(t));
  ASSERT_EQ(back.order(), t.order());
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_EQ(back.coeffs()[i], t.coeffs()[i]);
}

TEST(Io, IndicesAreOneBased) {
  const auto j = io::parse(R"({"order": 2, "dim": 2, "entries": [{"idx": [1, 2], "val": 3}]})",
                           "inline");
  const Tensor t = io::tensor_from_json(j);
  EXPECT_EQ(t({0, 1}), 3.0);
}

TEST(Io, MapRoundTripAndConstantFolding) {
  const PolynomialMap f = example2_map();
  auto j = io::map_to_json(f);
  j["terms"].push_back(io::tensor_to_json(Tensor::from_vector(vec({1, -1}))));
  const io::LoadedMap m = io::map_from_json(j);
  EXPECT_EQ(m.constant, vec({1, -1}));
  const Vector x = vec({0.4, 0.7});
  EXPECT_LT((m.map.eval(x) - f.eval(x)).norm(), 1e-15);
}

TEST(Io, TensorFileReadsAsHomogeneousMap) {
  const io::LoadedMap m = io::map_or_tensor_from_json(io::tensor_to_json(example1_tensor()));
  EXPECT_TRUE(m.map.is_homogeneous());
  EXPECT_TRUE(m.constant.isZero());
}

TEST(Io, FieldErrorsNameThePath) {
  const std::string dup = parse_error_of([] {
    io::tensor_from_json(io::parse(
        R"({"order": 2, "dim": 2, "entries": [{"idx": [1, 1], "val": 1}, {"idx": [1, 1], "val": 2}]})",
        "t.json"));
  });
  EXPECT_NE(dup.find("entries[1].idx"), std::string::npos) << dup;
  EXPECT_NE(dup.find("duplicate"), std::string::npos) << dup;

  const std::string range = parse_error_of([] {
    io::tensor_from_json(
        io::parse(R"({"order": 2, "dim": 2, "entries": [{"idx": [0, 1], "val": 1}]})", "t.json"));
  });
  EXPECT_NE(range.find("entries[0].idx"), std::string::npos) << range;

  const std::string missing = parse_error_of(
      [] { io::tensor_from_json(io::parse(R"({"order": 2, "entries": []})", "t.json")); });
  EXPECT_NE(missing.find("\"dim\""), std::string::npos) << missing;
}

TEST(Io, SyntaxErrorsCarryLineAndColumn) {
  const std::string msg = parse_error_of([] { io::parse("{\n  \"order\": 2,\n  oops\n}", "bad.json"); });
  EXPECT_EQ(msg.rfind("bad.json:3:", 0), 0u) << msg;
}

TEST(Io, MatrixAndVector) {
  const Matrix a = io::matrix_from_json(io::parse("[[-1, 1], [3, -2]]", "m"));
  EXPECT_EQ(a, example1_matrix());
  EXPECT_THROW(io::matrix_from_json(io::parse("[[1, 2], [3]]", "m")), ParseError);
  EXPECT_EQ(io::vector_from_json(io::parse("[1.5, -2]", "v")), vec({1.5, -2}));
  EXPECT_THROW(io::vector_from_json(io::parse("[1, \"a\"]", "v")), ParseError);
}

TEST(Io, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "pcpkit_io_test.json";
  io::write_file(path, io::tensor_to_json(diagonal_power_tensor(2, 3)));
  const Tensor t = io::tensor_from_json(io::read_file(path));
  EXPECT_EQ(t.order(), 4);
  std::filesystem::remove(path);
  EXPECT_THROW(io::read_file(path), ParseError);
}
