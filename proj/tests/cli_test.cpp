#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "lylab/config.hpp"
#include "lylab/tools/cli.hpp"

namespace fs = std::filesystem;
using lylab::tools::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("lylab_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write_model(double J, const std::string& name = "model.json") {
    auto m = lylab::ising_model(lylab::LatticeSpec::square(3, 3), J, 0.8, {0.3, 0});
    auto path = (dir_ / name).string();
    std::ofstream(path) << lylab::model_to_json(m).dump(2);
    return path;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, UnknownFlagIsUsageError) {
  auto r = call({"circle-check", "--no-such-flag"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.err.rfind("E_USAGE", 0), 0u) << r.err;
}

TEST_F(CliTest, MissingSubcommand) { EXPECT_EQ(call({}).code, 3); }

TEST_F(CliTest, CircleCheckReport) {
  auto r = call({"circle-check", "--model", write_model(1)});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.contains("max_deviation"));
  EXPECT_TRUE(j.contains("model_hash"));
  EXPECT_EQ(j["precision"], "extended");
  EXPECT_EQ(j["passed"], true);
}

TEST_F(CliTest, AntiferromagnetIsCheckFailure) {
  auto r = call({"circle-check", "--model", write_model(-1)});
  EXPECT_EQ(r.code, 2) << r.err;
}

TEST_F(CliTest, ScanIndependentOfJobs) {
  auto model = write_model(1);
  auto a = call({"ly-scan", "--model", model, "--grid", "0.1,1.5,5,-1,1,5", "--jobs", "1"});
  auto b = call({"ly-scan", "--model", model, "--grid", "0.1,1.5,5,-1,1,5", "--jobs", "3"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, CsvOutputToFile) {
  auto out = (dir_ / "roots.csv").string();
  auto r = call({"circle-check", "--model", write_model(1), "--roots-csv", out});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(out);
  std::string header, line;
  std::getline(in, header);
  EXPECT_EQ(header, "re,im,modulus,residual");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 9);
}

TEST_F(CliTest, BadModelKeyIsInputError) {
  auto path = (dir_ / "bad.json").string();
  auto j = lylab::model_to_json(lylab::ising_model(lylab::LatticeSpec::chain(3), 1, 1, {0.5, 0}));
  j["extra"] = 1;
  std::ofstream(path) << j.dump();
  auto r = call({"circle-check", "--model", path});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.err.rfind("E_INPUT", 0), 0u) << r.err;
}

TEST_F(CliTest, EigenvalueCrossingIsNumericalError) {
  auto r = call({"thermo", "--mode", "free-energy", "--J", "1", "--beta", "1", "--field", "0:0.5"});
  EXPECT_EQ(r.code, 4);
  EXPECT_EQ(r.err.rfind("E_EIG_CROSSING", 0), 0u) << r.err;
}

TEST_F(CliTest, UrsellBothRoutes) {
  auto r = call({"ursell", "--model", write_model(1), "--sites", "0,1,4", "--route", "both"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.contains("model_hash"));
}

TEST_F(CliTest, QuantumPartition) {
  auto r = call({"quantum", "--mode", "partition", "--sites", "2", "--spin", "0.5", "--J", "1,1,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["precision"], "double");
}

TEST_F(CliTest, ReproduceSingleCriterion) {
  auto r = call({"reproduce", "--suite", "acceptance", "--only", "6"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("[PASS] 06", 0), 0u) << r.out;
}

TEST_F(CliTest, PrecisionEnvironment) {
  auto model = write_model(1);
  ::setenv("LYLAB_PRECISION", "double", 1);
  auto r = call({"circle-check", "--model", model});
  ::setenv("LYLAB_PRECISION", "bogus", 1);
  auto bad = call({"circle-check", "--model", model});
  ::unsetenv("LYLAB_PRECISION");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["precision"], "double");
  EXPECT_EQ(bad.code, 3);
}
