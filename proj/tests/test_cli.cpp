#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "nicd/cli.hpp"
#include "support.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = nicd::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t lines(const std::string& text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("nicd_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string out(const std::string& sub = "") const { return (dir_ / sub).string(); }
  fs::path dir_;
};

using nicd::fixtures::config_path;
using nicd::fixtures::data_path;

}  // namespace

TEST_F(Cli, CodWritesItsFiles) {
  const auto r = run({"cod", data_path("iris.csv"), data_path("two_blobs.csv"), "--learners", "dt;knn:k=1;nb",
                      "--folds", "3", "--out", out()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto matrix = slurp(dir_ / "cod_matrix.tsv");
  EXPECT_EQ(matrix.rfind("# nicd cod-matrix v1\n", 0), 0u);
  EXPECT_NE(matrix.find("# corpus: iris,two_blobs"), std::string::npos);
  EXPECT_EQ(lines(slurp(dir_ / "merges.csv")), 2u);
  EXPECT_NE(slurp(dir_ / "dendrogram.txt").find("linkage=average"), std::string::npos);
}

TEST_F(Cli, RerunsAreByteIdentical) {
  const std::vector<std::string> base{"--seed", "9", "select-diverse", data_path("iris.csv"), data_path("wine.csv"),
                                      "--learners", "dt;knn:k=1;nb;majority", "--folds", "3", "--clusters", "2"};
  auto a = base, b = base;
  a.insert(a.end(), {"--out", out("a")});
  b.insert(b.end(), {"--out", out("b"), "--jobs", "3"});
  ASSERT_EQ(run(a).code, 0);
  ASSERT_EQ(run(b).code, 0);
  for (const auto* f : {"cod_matrix.tsv", "dendrogram.txt", "merges.csv", "diverse.txt", "clusters.txt"})
    EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f)) << f;
  EXPECT_EQ(lines(slurp(dir_ / "a" / "diverse.txt")), 1u);
}

TEST_F(Cli, UnknownLearnerIsAUsageError) {
  const auto r = run({"cod", data_path("iris.csv"), "--learners", "dt;svm"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("usage error"), std::string::npos);
  EXPECT_NE(r.err.find("svm"), std::string::npos);
}

TEST_F(Cli, MissingFileNamesTheStage) {
  const auto r = run({"score", data_path("nope.csv")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("loading data"), std::string::npos);
}

TEST_F(Cli, ScoreHasOneRowPerInstance) {
  const auto r = run({"score", data_path("iris.csv"), "--ensemble", "dt;knn:k=3;nb", "--folds", "3", "--out", out()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(slurp(dir_ / "scores.tsv")), 151u);
  EXPECT_EQ(r.out, slurp(dir_ / "scores.tsv"));
}

TEST_F(Cli, FilterFindsPlantedFlips) {
  const auto r = run({"--seed", "3", "filter", data_path("two_blobs.csv"), "--ensemble", "dt;knn:k=5;nb",
                      "--inject-noise", "0.1", "--folds", "5", "--out", out()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::vector<std::size_t> flipped;
  {
    std::ifstream in(dir_ / "flipped.txt");
    for (std::size_t i; in >> i;) flipped.push_back(i);
  }
  ASSERT_EQ(flipped.size(), 50u);
  std::set<std::size_t> removed;
  {
    std::ifstream in(dir_ / "filter.tsv");
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      if (line.ends_with("removed")) removed.insert(std::stoul(line));
    }
  }
  std::size_t hits = 0;
  for (const auto i : flipped) hits += removed.count(i);
  EXPECT_GE(hits, 45u);
  EXPECT_LE(removed.size(), 60u);
  EXPECT_EQ(lines(slurp(dir_ / "kept.csv")), 1 + 500 - removed.size());
}

TEST_F(Cli, ThresholdOneRemovesOnlyUnanimousMisses) {
  const auto r = run({"filter", data_path("iris.csv"), "--ensemble", "dt;knn:k=3;nb", "--threshold", "1.0",
                      "--folds", "3", "--format", "records"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.ends_with("removed")) EXPECT_NE(line.find("\t0.000000\t"), std::string::npos) << line;
  }
  EXPECT_EQ(run({"filter", data_path("iris.csv"), "--threshold", "1.5"}).code, 2);
}

TEST_F(Cli, MissingConfigKeyIsNamed) {
  fs::create_directories(dir_);
  std::ofstream(dir_ / "bad.ini") << "[experiment]\ndatasets = " << data_path("iris.csv") << "\ntechniques = none\n";
  const auto r = run({"experiment", "--config", (dir_ / "bad.ini").string()});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("learners"), std::string::npos) << r.err;
}

TEST_F(Cli, ExperimentRerunsFromItsManifest) {
  const auto first = run({"--jobs", "1", "--out", out("a"), "experiment", "--config", config_path("minimal.ini")});
  ASSERT_EQ(first.code, 0) << first.err;
  const auto manifest = (dir_ / "a" / "manifest.ini").string();
  const auto second = run({"--jobs", "2", "--out", out("b"), "experiment", "--config", manifest});
  ASSERT_EQ(second.code, 0) << second.err;
  const auto records = slurp(dir_ / "a" / "records.tsv");
  EXPECT_EQ(records.rfind("# nicd records v1", 0), 0u);
  EXPECT_EQ(records, slurp(dir_ / "b" / "records.tsv"));
  const auto rep = run({"report", (dir_ / "a" / "records.tsv").string()});
  EXPECT_EQ(rep.code, 0);
  EXPECT_EQ(rep.out, slurp(dir_ / "a" / "report.txt"));
}
