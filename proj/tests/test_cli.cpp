#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "kpforge/cli.hpp"
#include "kpforge/test_function.hpp"

namespace fs = std::filesystem;
using namespace kpforge;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "kpforge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("kpforge-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  // Two pairs on a coarse grid so commands stay fast.
  std::string small_corpus() const {
    auto c = default_corpus();
    c.grid = make_grid(1, 128, 16.0);
    c.pairs.resize(2);
    std::ofstream(path("small.txt")) << write_manifest(c);
    return path("small.txt");
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"verify", "--bogus"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, ParameterErrorsExitTwo) {
  auto r = run({"verify", "--ineq", "thm13", "--s", "2", "--out", path("a.jsonl")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("requires s > 2n+1"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(path("a.jsonl")));

  r = run({"verify", "--ineq", "bgn-linf", "--r", "3", "--s", "1", "--t", "2", "--out", path("b.jsonl")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("r < s < t"), std::string::npos) << r.err;

  EXPECT_EQ(run({"verify", "--ineq", "nope"}).code, 2);
  EXPECT_EQ(run({"verify", "--N", "1000"}).code, 2);
  EXPECT_EQ(run({"cm-check", "--symbol", "sigma9"}).code, 2);
  EXPECT_EQ(run({"field"}).code, 2);
}

TEST_F(CliTest, MissingInputsExitOne) {
  const auto r = run({"verify", "--corpus", path("missing.txt"), "--out", path("x.jsonl")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("i/o error"), std::string::npos);
  EXPECT_EQ(run({"field", "--load", path("missing.kpf")}).code, 1);
}

TEST_F(CliTest, VerifyDefaultCorpus) {
  const auto r = run({"verify", "--ineq", "bgn-linf", "--r", "0", "--s", "1", "--t", "2", "--n", "1", "--N", "1024",
                      "--L", "16", "--corpus", "default", "--out", path("rep.jsonl")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto reports = lines(slurp(path("rep.jsonl")));
  ASSERT_EQ(reports.size(), 24u);
  for (const auto& l : reports) EXPECT_EQ(nlohmann::json::parse(l)["inequality"], "bgn-linf");
  const auto summary = lines(slurp(path("rep.summary.csv")));
  ASSERT_EQ(summary.size(), 3u);
  EXPECT_EQ(summary[0].rfind("# corpus=default n=1 N=1024 L=16 s=1 r=0 t=2", 0), 0u) << summary[0];
  EXPECT_EQ(summary[1], "inequality,max_ratio,argmax_pair,refinement_delta,errors");
  EXPECT_EQ(summary[2].rfind("bgn-linf,", 0), 0u);
}

TEST_F(CliTest, ConfigFileAndFlagPrecedence) {
  const auto corpus = small_corpus();
  std::ofstream(path("run.conf")) << "# kp run\ns = 2\nineq = kpinfty\ncorpus = " << corpus << "\n";
  auto r = run({"verify", "--config", path("run.conf"), "--out", path("c.jsonl")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(lines(slurp(path("c.summary.csv")))[0].find(" s=2 "), std::string::npos);

  r = run({"verify", "--config", path("run.conf"), "--s", "1.5", "--out", path("d.jsonl"), "--summary", path("d.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(lines(slurp(path("d.csv")))[0].find(" s=1.5 "), std::string::npos);
  EXPECT_EQ(nlohmann::json::parse(lines(slurp(path("d.jsonl")))[0])["params"]["s"], 1.5);
}

TEST_F(CliTest, Coefficients) {
  const auto r = run({"coeffs", "--s", "2", "--mmax", "128", "--out", path("c.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  int rows = 0, comments = 0;
  for (const auto& l : lines(slurp(path("c.csv")))) {
    if (l.starts_with("#"))
      ++comments;
    else if (l != "m,real,imag,abs")
      ++rows;
  }
  EXPECT_EQ(rows, 257);
  EXPECT_EQ(comments, 2);
  EXPECT_NE(r.out.find("fit slope="), std::string::npos);
}

TEST_F(CliTest, CmCheckJson) {
  const auto r = run({"cm-check", "--symbol", "sigma1", "--s", "1", "--radii", "16", "--directions", "16", "--out",
                      path("cm.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(path("cm.json")));
  EXPECT_EQ(j["symbol"], "sigma1");
  EXPECT_EQ(j["max_order"], 3);
  ASSERT_EQ(j["entries"].size(), 10u);
  for (const auto& e : j["entries"]) {
    EXPECT_TRUE(e.contains("alpha"));
    EXPECT_TRUE(e["stable"].is_boolean());
  }
}

TEST_F(CliTest, Decompose) {
  const auto r = run({"decompose", "--corpus", small_corpus(), "--s", "2", "--mmax", "32", "--out", path("d.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(path("d.json")));
  EXPECT_LT(j["pi_split_relative_residual"].get<double>(), 1e-10);
  EXPECT_LT(j["complement_relative_residual"].get<double>(), 1e-10);
  EXPECT_FALSE(j.contains("kernel"));
  EXPECT_EQ(run({"decompose", "--corpus", small_corpus(), "--pair", "nope", "--out", path("e.json")}).code, 2);
}

TEST_F(CliTest, FieldRoundTrip) {
  auto r = run({"field", "--dump", path("f.kpf"), "--spec", "a=1 c=0 w=2 k=0.5 phi=0", "--N", "64", "--L", "16"});
  ASSERT_EQ(r.code, 0) << r.err;
  r = run({"field", "--load", path("f.kpf"), "--out", path("g.kpf")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("byte-identical"), std::string::npos);
  EXPECT_EQ(slurp(path("f.kpf")), slurp(path("g.kpf")));

  r = run({"field", "--dump", path("p.kpf"), "--corpus", small_corpus(), "--which", "g"});
  ASSERT_EQ(r.code, 0) << r.err;

  auto bytes = slurp(path("f.kpf"));
  bytes.resize(bytes.size() - 3);
  std::ofstream(path("bad.kpf"), std::ios::binary) << bytes;
  EXPECT_EQ(run({"field", "--load", path("bad.kpf")}).code, 1);
}

TEST_F(CliTest, CorpusManifest) {
  const auto r = run({"corpus"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, write_manifest(default_corpus()));
  ASSERT_EQ(run({"corpus", "--out", path("m.txt")}).code, 0);
  EXPECT_EQ(slurp(path("m.txt")), r.out);
}

TEST_F(CliTest, SearchWritesResultLogAndExport) {
  const auto r = run({"search", "--pop", "6", "--iters", "4", "--N", "128", "--out", path("s.json"), "--log",
                      path("s.log"), "--export", path("best.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(path("s.json")));
  EXPECT_EQ(j["s"], 3.0);
  EXPECT_EQ(lines(slurp(path("s.log"))).size(), 4u);
  const auto best = load_manifest(path("best.txt"));
  ASSERT_EQ(best.pairs.size(), 1u);
  EXPECT_EQ(best.grid.N, 128);
  EXPECT_NE(r.out.find("not a counterexample"), std::string::npos);
  EXPECT_EQ(run({"search", "--pop", "2"}).code, 2);
}
