#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "../tools/commands.hpp"
#include "isopart/io.hpp"

namespace isopart::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "key value" line from the summary printout.
double summary_value(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string k;
  std::string v;
  while (in >> k >> v) {
    if (k == key) return std::stod(v);
  }
  ADD_FAILURE() << "missing key " << key;
  return NAN;
}

std::vector<std::string> csv_rows(const std::string& text) {
  std::vector<std::string> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) rows.push_back(line);
  return rows;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("isopart_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string sub(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, ConstantsRows) {
  const auto r = run_cli({"constants", "--samples", "10000"});
  ASSERT_EQ(r.code, kOk) << r.err;
  std::map<std::string, std::vector<std::string>> rows;
  for (const auto& line : csv_rows(r.out)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    rows[f[0]] = f;
  }
  EXPECT_EQ(rows.at("name")[1], "closed_form");
  EXPECT_NEAR(std::stod(rows.at("defect_lens")[1]), 7.29, 0.01);
  EXPECT_NEAR(std::stod(rows.at("defect_barrel")[1]), 7.10, 0.01);
  EXPECT_NEAR(std::stod(rows.at("defect_ball")[1]), 9.53, 0.01);
  for (const char* name : {"omega_8", "lens_volume", "barrel_perimeter"}) {
    EXPECT_LT(std::stod(rows.at(name)[3]), 1e-10) << name;
  }
}

TEST_F(CliTest, ConstantsJsonMatchesCsv) {
  const auto csv = run_cli({"constants", "--samples", "10000"});
  const auto js = run_cli({"constants", "--samples", "10000", "--format", "json"});
  ASSERT_EQ(js.code, kOk) << js.err;
  const auto j = json::parse(js.out);
  for (const auto& row : j.at("rows")) {
    const std::string needle = row.at("name").get<std::string>() + ",";
    const auto pos = csv.out.find("\n" + needle);
    ASSERT_NE(pos, std::string::npos) << needle;
    const double csv_value = std::stod(csv.out.substr(pos + 1 + needle.size()));
    EXPECT_EQ(csv_value, row.at("closed_form").get<double>()) << needle;
  }
  EXPECT_EQ(j.at("monte_carlo").at("samples"), 10000);
}

TEST_F(CliTest, ConstantsWritesFileAndManifest) {
  const auto r = run_cli({"constants", "--samples", "10000", "--out", "constants.csv", "--out-dir", sub("c")});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "c" / "constants.csv"));
  const auto manifest = json::parse(slurp(dir_ / "c" / "constants_manifest.json"));
  EXPECT_EQ(manifest.at("outputs").size(), 1u);
}

TEST_F(CliTest, SolveWritesOutputsAndManifest) {
  const auto r = run_cli({"solve", "--out-dir", sub("s"), "--svg", "fig.svg"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NEAR(summary_value(r.out, "defect"), 6.82, 0.05);
  const auto report = json::parse(slurp(dir_ / "s" / "report.json"));
  EXPECT_NEAR(report.at("defect").get<double>(), 6.82, 0.05);
  const auto manifest = json::parse(slurp(dir_ / "s" / "solve_manifest.json"));
  std::vector<std::string> outputs = manifest.at("outputs");
  for (const char* name : {"report.json", "partition.json", "gamma12.csv", "gamma13.csv",
                           "gamma23.csv", "trajectory.csv", "fig.svg"}) {
    const std::string path = sub("s/" + std::string(name));
    EXPECT_TRUE(fs::exists(path)) << name;
    EXPECT_NE(std::find(outputs.begin(), outputs.end(), path), outputs.end()) << name;
  }
  EXPECT_EQ(manifest.at("command"), "solve");
  EXPECT_EQ(manifest.at("parameters").at("lambda").get<double>(), 1.0);
  EXPECT_TRUE(manifest.at("versions").contains("tool"));
  EXPECT_TRUE(manifest.contains("timestamp"));
}

TEST_F(CliTest, SolveLambdaDoubledKeepsDefect) {
  const auto a = run_cli({"solve", "--out-dir", sub("a")});
  const auto b = run_cli({"solve", "--lambda", "2", "--out-dir", sub("b")});
  ASSERT_EQ(b.code, kOk) << b.err;
  const double da = summary_value(a.out, "defect");
  const double db = summary_value(b.out, "defect");
  EXPECT_LT(std::abs(da - db) / da, 1e-6);
}

TEST_F(CliTest, SolveRerunIsByteIdentical) {
  run_cli({"solve", "--out-dir", sub("r1"), "--svg", "f.svg"});
  run_cli({"solve", "--out-dir", sub("r2"), "--svg", "f.svg"});
  for (const char* name : {"report.json", "partition.json", "gamma12.csv", "trajectory.csv", "f.svg"}) {
    EXPECT_EQ(slurp(dir_ / "r1" / name), slurp(dir_ / "r2" / name)) << name;
  }
}

TEST_F(CliTest, SolveExitCodes) {
  EXPECT_EQ(run_cli({"solve", "--a-lo", "5", "--a-hi", "6", "--out-dir", sub("x")}).code, kPrecondition);
  EXPECT_EQ(run_cli({"solve", "--lambda", "-1", "--out-dir", sub("x")}).code, kPrecondition);
  const auto r = run_cli({"solve", "--tol-root", "0.01", "--out-dir", sub("x")});
  EXPECT_EQ(r.code, kNonConvergence);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, MonotonicitySimons) {
  const auto r = run_cli({"monotonicity", "--partition", "simons", "--R", "0", "--radii", "0.5:50:64",
                          "--out-dir", sub("m")});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("verdict pass"), std::string::npos);
  const auto rows = csv_rows(slurp(dir_ / "m" / "monotonicity.csv"));
  ASSERT_EQ(rows.size(), 65u);
  EXPECT_EQ(rows[0], "rho,ratio,full_ratio");
  const double target = std::pow(M_PI, 4) / 14.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto comma = rows[i].find(',');
    EXPECT_NEAR(std::stod(rows[i].substr(comma + 1)), target, 1e-10);
  }
}

TEST_F(CliTest, MonotonicitySolvedPartitionFile) {
  ASSERT_EQ(run_cli({"solve", "--out-dir", sub("s")}).code, kOk);
  const auto r = run_cli({"monotonicity", "--partition", sub("s/partition.json"), "--out-dir", sub("m")});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("verdict pass"), std::string::npos);
  EXPECT_GE(csv_rows(slurp(dir_ / "m" / "monotonicity.csv")).size(), 51u);
}

TEST_F(CliTest, MonotonicitySingleRadiusPasses) {
  const auto r = run_cli({"monotonicity", "--partition", "barrel", "--R", "2", "--radii", "3",
                          "--out-dir", sub("m")});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("verdict pass"), std::string::npos);
}

TEST_F(CliTest, MonotonicityRegionNotEnclosed) {
  const auto r = run_cli({"monotonicity", "--partition", "barrel", "--R", "0.5", "--out-dir", sub("m")});
  EXPECT_EQ(r.code, kPrecondition);
}

TEST_F(CliTest, GlueIdenticalInputsGiveZero) {
  ASSERT_EQ(run_cli({"diagnostics", "fixture", "--seed", "4", "--resolution", "64", "--out-dir", sub("g")}).code,
            kOk);
  const std::string e = sub("g/glue_E.grid");
  const auto r = run_cli({"diagnostics", "glue", "--e", e, "--f", e, "--out-dir", sub("g")});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(summary_value(r.out, "slice_perimeter"), 0.0);
  EXPECT_EQ(summary_value(r.out, "bound"), 0.0);
}

TEST_F(CliTest, GlueBundledFixturesRespectBound) {
  ASSERT_EQ(run_cli({"diagnostics", "fixture", "--seed", "4", "--resolution", "256", "--out-dir", sub("g")}).code,
            kOk);
  const auto r = run_cli({"diagnostics", "glue", "--e", sub("g/glue_E.grid"), "--f", sub("g/glue_F.grid"),
                          "--out-dir", sub("g")});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_LE(summary_value(r.out, "slice_perimeter"), summary_value(r.out, "bound") * (1.0 + 5.0 / 256));
}

TEST_F(CliTest, GlueCoarseGridIsNonConvergence) {
  // No cell centre of the 8×8 grid falls in the annulus, so the bound is 0
  // while every crossing edge disagrees.
  for (int label : {1, 2}) {
    const GridPartition g = GridPartition::from_function({0, 0, 1, 1}, 8, 2, WeightMode::unweighted,
                                                         [label](Point) { return label; });
    auto out = io::open_output(sub("uniform" + std::to_string(label) + ".grid"));
    io::write_grid(out, g);
  }
  const auto r = run_cli({"diagnostics", "glue", "--e", sub("uniform1.grid"), "--f", sub("uniform2.grid"),
                          "--center", "0.5,0.5", "--r", "0.1", "--R", "0.15", "--out-dir", sub("g")});
  EXPECT_EQ(r.code, kNonConvergence);
  EXPECT_NE(r.err.find("resolution"), std::string::npos);
  const auto bad = run_cli({"diagnostics", "glue", "--resolution", "64", "--r", "0.4", "--R", "0.2",
                            "--out-dir", sub("g")});
  EXPECT_EQ(bad.code, kPrecondition);
}

TEST_F(CliTest, ProfileOneCube) {
  const auto r = run_cli({"diagnostics", "profile", "--fixture", "one-cube", "--out-dir", sub("p")});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto rows = csv_rows(slurp(dir_ / "p" / "profile.csv"));
  ASSERT_GE(rows.size(), 3u);
  EXPECT_EQ(rows[1], "0,1,1");
  EXPECT_EQ(rows[2], "1,0,0");
  EXPECT_TRUE(fs::exists(dir_ / "p" / "diagnostics_profile_manifest.json"));
}

TEST_F(CliTest, ProfileBadCubeSize) {
  EXPECT_EQ(run_cli({"diagnostics", "profile", "--fixture", "slab", "--cube-size", "3", "--out-dir", sub("p")}).code,
            kPrecondition);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_NE(run_cli({}).code, kOk);
  EXPECT_NE(run_cli({"bogus"}).code, kOk);
  EXPECT_EQ(run_cli({"--help"}).code, kOk);
}

TEST_F(CliTest, OutputDirFromEnvironment) {
  ::setenv("ISOPART_OUTPUT_DIR", sub("env").c_str(), 1);
  const auto r = run_cli({"diagnostics", "profile", "--fixture", "one-cube", "--resolution", "64"});
  ::unsetenv("ISOPART_OUTPUT_DIR");
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "env" / "profile.csv"));
}

TEST_F(CliTest, BinaryExitCodes) {
  const char* bin = std::getenv("ISOPART_BINARY");
  if (bin == nullptr) GTEST_SKIP() << "ISOPART_BINARY not set";
  const std::string quiet = " > " + sub("log.txt") + " 2>&1";
  auto status = [&](const std::string& args) {
    const int raw = std::system((std::string(bin) + " " + args + quiet).c_str());
    return WEXITSTATUS(raw);
  };
  EXPECT_EQ(status("constants --samples 10000"), kOk);
  EXPECT_EQ(status("solve --a-lo 5 --a-hi 6 --out-dir " + sub("b")), kPrecondition);
  EXPECT_EQ(status("solve --tol-root 0.01 --out-dir " + sub("b")), kNonConvergence);
}

}  // namespace
}  // namespace isopart::cli
