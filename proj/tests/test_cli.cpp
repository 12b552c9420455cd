#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "pcpkit/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "pcpkit");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome r;
  r.code = pcpkit::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string data(const std::string& name) { return std::string(PCPKIT_TEST_DATA) + "/" + name; }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "pcpkit_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Cli, SolveText) {
  const Outcome r = run({"solve", "--map", data("example3_map.json"), "--q", "[-1, -1.75]"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("status: solved"), std::string::npos) << r.out;
}

TEST(Cli, SolveJsonEnvelope) {
  const Outcome r = run({"--json", "--seed", "4", "solve", "--map", data("example1.json"), "--q", "[-1, -1]"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["seed"], 4);
}

TEST(Cli, EnumerateAndUnicodeMinus) {
  const Outcome r = run({"enumerate", "--map", data("example1.json"), "--q", "[−1, −1]"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("x = (3, 4)"), std::string::npos) << r.out;
}

TEST(Cli, DegreeMethods) {
  EXPECT_EQ(run({"degree", "--tensor", data("example1.json")}).out, "-1\n");
  EXPECT_EQ(run({"degree", "--tensor", data("example1.json"), "--method", "winding"}).out, "-1\n");
  EXPECT_EQ(run({"degree", "--tensor", data("diag3.json"), "--method", "rv"}).out, "1\n");
}

TEST(Cli, Classify) {
  const Outcome r = run({"classify", "--tensor", data("diag3.json"), "--properties", "z,nonneg-pos-diag"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("z: holds"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("nonneg-pos-diag: holds"), std::string::npos) << r.out;
}

TEST(Cli, ConstructWritesFiles) {
  const fs::path out = scratch("power.json");
  const Outcome r = run({"construct", "matrix-power", "--matrix", data("example1_matrix.json"), "--k", "3",
                     "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const pcpkit::Tensor t = pcpkit::io::tensor_from_json(pcpkit::io::read_file(out));
  EXPECT_EQ(t.order(), 4);

  const fs::path r5 = scratch("remark5.json");
  EXPECT_EQ(run({"construct", "remark5", "--out", r5.string()}).code, 0);
  EXPECT_TRUE(fs::exists(r5));
}

TEST(Cli, Catalog) {
  const Outcome list = run({"catalog", "list"});
  EXPECT_EQ(list.code, 0);
  EXPECT_NE(list.out.find("example1"), std::string::npos);
  const fs::path out = scratch("ex2.json");
  EXPECT_EQ(run({"catalog", "show", "example2", "--out", out.string()}).code, 0);
  EXPECT_TRUE(fs::exists(out));
  EXPECT_EQ(run({"catalog", "show", "nope"}).code, 2);
}

TEST(Cli, ReproduceOneScenario) {
  const Outcome r = run({"reproduce", "remark3"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.rfind("== remark3: PASS", 0), 0u) << r.out;
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"reproduce", "nope"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"degree", "--tensor", data("missing.json")}).code, 2);
}

TEST(Cli, ParseErrorsNameTheFile) {
  const fs::path bad = scratch("bad.json");
  pcpkit::io::write_file(bad, nlohmann::json::parse(
                                  R"({"order": 2, "dim": 2, "entries": [{"idx": [3, 1], "val": 1}]})"));
  const Outcome r = run({"degree", "--tensor", bad.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("bad.json"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("entries[0].idx"), std::string::npos) << r.err;
}
