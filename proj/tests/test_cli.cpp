#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mpade/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("mpade_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write_config(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  std::string out(const std::string& sub) const { return (dir_ / sub).string(); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "mpade");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return mpade::cli::run(static_cast<int>(argv.size()), argv.data());
  }

  static std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

const char* kTwoPoint = R"({
  "measure": {"interval": [-1, 1], "type": "discrete", "points": [-1, 1], "masses": [0.5, 0.5]},
  "nodes": {"list": [[0, 1], [0, 2], [0, 3]], "delta": 0.5},
  "n_max": 2,
  "grid": {"points": [[0, 2], [0.5, 0.5]]}
})";

std::string chebyshev_config(int n_max, const std::string& extra = "") {
  return R"({
  "measure": {"interval": [-1, 1], "type": "weight", "name": "chebyshev1", "quad_order": 200},
  "nodes": {"pattern": "strip", "base": 0.2, "width": 0.9},
  "n_max": )" + std::to_string(n_max) + R"(,
  "grid": {"circle": {"center": [0, 0], "radius": 1.5, "count": 12}})" + extra + "\n}";
}

}  // namespace

TEST_F(CliTest, ApproxTwoPointTerminates) {
  EXPECT_EQ(run({"approx", "--config", write_config("c.json", kTwoPoint), "--out", out("a")}), 2);
  const json j = json::parse(slurp(out("a") + "/chain.json"));
  EXPECT_TRUE(j.at("terminated").get<bool>());
  ASSERT_EQ(j.at("steps").size(), 2u);
  EXPECT_DOUBLE_EQ(j["steps"][0]["a2"].get<double>(), 2.0);
  EXPECT_DOUBLE_EQ(j["steps"][0]["b"].get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(j["steps"][1]["a2"].get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(j["steps"][1]["b"].get<double>(), 0.0);
  // P_2 = lambda^2 - 1
  const json p2 = j["polys"]["P"][2];
  EXPECT_NEAR(p2[0].get<double>(), -1.0, 1e-14);
  EXPECT_NEAR(p2[2].get<double>(), 1.0, 1e-14);
}

TEST_F(CliTest, ApproxZeroSteps) {
  EXPECT_EQ(run({"approx", "--config", write_config("c.json", chebyshev_config(0)), "--out", out("a")}), 0);
  const json j = json::parse(slurp(out("a") + "/chain.json"));
  EXPECT_TRUE(j.at("steps").empty());
  EXPECT_FALSE(j.at("terminated").get<bool>());
}

TEST_F(CliTest, MalformedConfigNamesKey) {
  ::testing::internal::CaptureStderr();
  const int code = run({"approx", "--config", write_config("c.json", chebyshev_config(0, R"(, "seed": "abc")")), "--out",
                        out("a")});
  const std::string err = ::testing::internal::GetCapturedStderr();
  EXPECT_EQ(code, 1);
  EXPECT_NE(err.find("seed"), std::string::npos) << err;

  ::testing::internal::CaptureStderr();
  std::string broken = chebyshev_config(3);
  broken.replace(broken.find("\"count\": 12"), 11, "\"count\": \"x\"");
  EXPECT_EQ(run({"approx", "--config", write_config("d.json", broken), "--out", out("a")}), 1);
  EXPECT_NE(::testing::internal::GetCapturedStderr().find("grid.circle.count"), std::string::npos);

  ::testing::internal::CaptureStderr();
  EXPECT_EQ(run({"approx", "--config", write_config("e.json", "{\"measure\": "), "--out", out("a")}), 1);
  ::testing::internal::GetCapturedStderr();

  ::testing::internal::CaptureStderr();
  EXPECT_EQ(run({"approx", "--config", out("missing.json"), "--out", out("a")}), 1);
  ::testing::internal::GetCapturedStderr();
}

TEST_F(CliTest, ProbeOnSupportRejected) {
  std::string text = kTwoPoint;
  text.replace(text.find("[0.5, 0.5]]"), 11, "[0.5, 0]]");
  ::testing::internal::CaptureStderr();
  EXPECT_EQ(run({"converge", "--config", write_config("c.json", text), "--out", out("a")}), 1);
  const std::string err = ::testing::internal::GetCapturedStderr();
  EXPECT_NE(err.find("grid"), std::string::npos) << err;
}

TEST_F(CliTest, CheckDefaultPassesAndFaultFails) {
  const std::string clean = write_config("c.json", chebyshev_config(8));
  EXPECT_EQ(run({"check", "--config", clean, "--out", out("a")}), 0);
  const json ok = json::parse(slurp(out("a") + "/check.json"));
  EXPECT_TRUE(ok.at("all_pass").get<bool>());

  const std::string faulty =
      write_config("f.json", chebyshev_config(8, R"(, "fault": {"step": 3, "field": "a1", "delta": 1e-3})"));
  EXPECT_EQ(run({"check", "--config", faulty, "--out", out("b")}), 4);
  const json bad = json::parse(slurp(out("b") + "/check.json"));
  bool identity_failed = false;
  for (const json& c : bad.at("checks"))
    if (c.at("name") == "mfunction_identity") identity_failed = !c.at("pass").get<bool>();
  EXPECT_TRUE(identity_failed);
}

TEST_F(CliTest, CheckOnlyFilter) {
  EXPECT_EQ(run({"check", "--config", write_config("c.json", chebyshev_config(6)), "--out", out("a"), "--only", "pencil"}),
            0);
  const json j = json::parse(slurp(out("a") + "/check.json"));
  ASSERT_FALSE(j.at("checks").empty());
  for (const json& c : j.at("checks")) EXPECT_EQ(c.at("module"), "pencil");
}

TEST_F(CliTest, CheckTwoPointPasses) {
  std::string text = kTwoPoint;
  text.replace(text.find("\"n_max\": 2"), 10, "\"n_max\": 1");
  EXPECT_EQ(run({"check", "--config", write_config("c.json", text), "--out", out("a")}), 0);
}

TEST_F(CliTest, PencilTwoPoint) {
  std::string text = kTwoPoint;
  text.replace(text.find("\"n_max\": 2"), 10, "\"n_max\": 1");
  EXPECT_EQ(run({"pencil", "--config", write_config("c.json", text), "--out", out("a")}), 0);
  const json j = json::parse(slurp(out("a") + "/pencil.json"));
  ASSERT_EQ(j.at("eigenvalues").size(), 2u);
  EXPECT_NEAR(j["eigenvalues"][0].get<double>(), -1.0, 1e-10);
  EXPECT_NEAR(j["eigenvalues"][1].get<double>(), 1.0, 1e-10);
  EXPECT_GT(j.at("j2_min_eigenvalue").get<double>(), 0.0);
}

TEST_F(CliTest, ConvergeDeterministicApartFromTiming) {
  const std::string cfg = write_config("c.json", chebyshev_config(10));
  ASSERT_EQ(run({"converge", "--config", cfg, "--out", out("a")}), 0);
  ASSERT_EQ(run({"converge", "--config", cfg, "--out", out("b")}), 0);
  auto strip_ms = [](const std::string& text) {
    std::stringstream in(text), keep;
    std::string line;
    while (std::getline(in, line)) keep << line.substr(0, line.rfind(',')) << '\n';
    return keep.str();
  };
  const std::string a = slurp(out("a") + "/converge.csv"), b = slurp(out("b") + "/converge.csv");
  EXPECT_EQ(a.substr(0, a.find('\n')), "n,re_lambda,im_lambda,abs_error,bound,ms");
  EXPECT_EQ(strip_ms(a), strip_ms(b));
  // every row respects the bound
  std::stringstream in(a);
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    double v[6];
    std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &v[0], &v[1], &v[2], &v[3], &v[4], &v[5]);
    EXPECT_GE(v[3], 0.0);
    ++rows;
  }
  EXPECT_EQ(rows, 10 * 12);
}

TEST_F(CliTest, BiorthAndOracleCommands) {
  const std::string cfg = write_config("c.json", chebyshev_config(8));
  EXPECT_EQ(run({"biorth", "--config", cfg, "--out", out("a")}), 0);
  EXPECT_TRUE(fs::exists(out("a") + "/biorth.json"));
  EXPECT_TRUE(fs::exists(out("a") + "/gram.csv"));
  EXPECT_EQ(run({"oracle", "--config", cfg, "--out", out("a")}), 0);
  EXPECT_TRUE(fs::exists(out("a") + "/oracle.csv"));
  for (const auto& e : fs::directory_iterator(out("a"))) EXPECT_NE(e.path().extension(), ".tmp");
}

TEST_F(CliTest, TolOverrideAndUnknownCommand) {
  std::string text = kTwoPoint;
  EXPECT_EQ(run({"approx", "--config", write_config("c.json", text), "--out", out("a"), "--tol", "1e-10"}), 2);
  const json j = json::parse(slurp(out("a") + "/chain.json"));
  EXPECT_DOUBLE_EQ(j.at("eps_degenerate").get<double>(), 1e-10);
  ::testing::internal::CaptureStderr();
  ::testing::internal::CaptureStdout();
  EXPECT_NE(run({"frobnicate"}), 0);
  ::testing::internal::GetCapturedStdout();
  ::testing::internal::GetCapturedStderr();
}
