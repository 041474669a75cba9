#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "nicd/config.hpp"
#include "nicd/error.hpp"
#include "nicd/experiment.hpp"
#include "support.hpp"

using namespace nicd;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.corpus = {fixtures::blobs(90, 4.0, 1, "wide"), fixtures::load("iris.csv")};
  cfg.learners = parse_learner_list("dt;knn:k=3");
  cfg.diverse = parse_learner_list("dt;knn:k=3;nb");
  cfg.techniques = parse_technique_list("none,l_filter,l_weight,biased_filter,l_ensemble");
  cfg.noise_levels = {0.0, 0.2};
  cfg.runs = 2;
  cfg.folds = 3;
  cfg.seed = 11;
  return cfg;
}

std::string records_text(const ExperimentReport& r) {
  std::ostringstream out;
  write_records(out, r);
  return out.str();
}

}  // namespace

TEST(Technique, NamesRoundTrip) {
  for (const auto t : parse_technique_list(
           "none,l_weight,l_filter,biased_weight,biased_filter,renn,classification,ensemble_filter,cvc,ipf,"
           "l_ensemble,3_ensemble,weighted_l_ensemble,filtered_l_ensemble"))
    EXPECT_EQ(parse_technique(to_string(t)), t);
  EXPECT_EQ(parse_technique("three_ensemble"), Technique::three_ensemble);
  EXPECT_TRUE(is_ensemble(Technique::l_ensemble));
  EXPECT_FALSE(is_ensemble(Technique::l_filter));
  EXPECT_THROW(parse_technique("magic"), ArgumentError);
}

TEST(Experiment, SeparableFixtureIsPerfectWithoutNoise) {
  auto cfg = small_config();
  cfg.corpus = {fixtures::blobs(60, 6.0, 2, "far")};
  cfg.noise_levels = {0.0};
  const auto report = run_experiment(cfg);
  EXPECT_EQ(report.failures(), 0u);
  for (const auto& r : report.records) EXPECT_EQ(r.accuracy, 1.0) << r.learner << " " << to_string(r.technique);
}

TEST(Experiment, ReportShape) {
  const auto cfg = small_config();
  const auto report = run_experiment(cfg);
  // 2 datasets x 2 levels x 2 runs x (4 techniques x 2 learners + 1 ensemble).
  EXPECT_EQ(report.records.size(), 2u * 2 * 2 * 9);
  EXPECT_EQ(report.learners.back(), kEnsembleLearner);
  EXPECT_EQ(report.cell("iris", "dt", Technique::l_filter, 0.2).size(), 2u);
  EXPECT_TRUE(report.cell("iris", "dt", Technique::l_ensemble, 0.2).empty());
  EXPECT_EQ(report.cell("iris", "ensemble", Technique::l_ensemble, 0.2).size(), 2u);
  const double m = report.mean_accuracy("knn:k=3", Technique::none, 0.0);
  EXPECT_GT(m, 0.85);
  EXPECT_LE(m, 1.0);
}

TEST(Experiment, DeterministicAndJobInvariant) {
  const auto cfg = small_config();
  const auto a = records_text(run_experiment(cfg, 1));
  EXPECT_EQ(a, records_text(run_experiment(cfg, 1)));
  EXPECT_EQ(a, records_text(run_experiment(cfg, 3)));
}

TEST(Experiment, RecordsRoundTrip) {
  const auto report = run_experiment(small_config());
  std::istringstream in(records_text(report));
  const auto back = read_records(in);
  EXPECT_EQ(back.datasets, report.datasets);
  EXPECT_EQ(back.learners, report.learners);
  EXPECT_EQ(back.techniques, report.techniques);
  EXPECT_EQ(back.noise_levels, report.noise_levels);
  EXPECT_EQ(back.runs, report.runs);
  ASSERT_EQ(back.records.size(), report.records.size());
  for (std::size_t i = 0; i < back.records.size(); ++i) EXPECT_EQ(back.records[i].accuracy, report.records[i].accuracy);
  EXPECT_EQ(records_text(back), records_text(report));
}

TEST(Experiment, TablesMentionEveryTechnique) {
  const auto report = run_experiment(small_config());
  std::ostringstream out;
  write_tables(out, report);
  for (const auto t : report.techniques) EXPECT_NE(out.str().find(std::string(to_string(t))), std::string::npos);
  EXPECT_NE(out.str().find("wins/ties/losses"), std::string::npos);
}

TEST(Experiment, FilteringHelpsUnderHeavyNoise) {
  ExperimentConfig cfg;
  cfg.corpus = {fixtures::blobs(240, 1.5, 3, "a"), fixtures::blobs(240, 1.5, 4, "b")};
  cfg.learners = parse_learner_list("knn:k=1");
  cfg.diverse = parse_learner_list("dt;knn:k=5;nb");
  cfg.techniques = parse_technique_list("none,l_filter");
  cfg.noise_levels = {0.4};
  cfg.runs = 3;
  cfg.folds = 5;
  const auto report = run_experiment(cfg);
  EXPECT_GT(report.mean_accuracy("knn:k=1", Technique::l_filter, 0.4),
            report.mean_accuracy("knn:k=1", Technique::none, 0.4));
  const std::vector<double> level{0.4};
  EXPECT_GT(*mean_percent_re(report, "knn:k=1", Technique::l_filter, level), 0.0);
}

TEST(Experiment, FailingCellIsRecorded) {
  auto cfg = small_config();
  cfg.learners = parse_learner_list("knn:k=500");
  cfg.techniques = parse_technique_list("none");
  cfg.noise_levels = {0.0};
  cfg.runs = 1;
  const auto report = run_experiment(cfg);
  EXPECT_EQ(report.records.size(), 2u);
  for (const auto& r : report.records) {
    if (!r.error.empty()) EXPECT_TRUE(std::isnan(r.accuracy));
  }
}

TEST(Config, ParsesAndResolvesPaths) {
  std::istringstream in(
      "[experiment]\n"
      "datasets = iris.csv, ../data/two_blobs.csv\n"
      "learners = dt; knn:k=5\n"
      "techniques = none, l_filter ; comment\n"
      "noise_levels = 0, 0.3\n"
      "runs = 4\n"
      "threshold_rule = above\n");
  const auto cfg = parse_config(in, NICD_DATA_DIR);
  ASSERT_EQ(cfg.dataset_paths.size(), 2u);
  EXPECT_EQ(cfg.dataset_paths[0], fixtures::data_path("iris.csv"));
  EXPECT_EQ(cfg.dataset_paths[1], fixtures::data_path("two_blobs.csv"));
  ASSERT_EQ(cfg.corpus.size(), 2u);
  EXPECT_EQ(cfg.corpus[1].size(), 500u);
  EXPECT_EQ(cfg.learners, parse_learner_list("dt;knn:k=5"));
  EXPECT_EQ(cfg.techniques, parse_technique_list("none,l_filter"));
  EXPECT_EQ(cfg.noise_levels, (std::vector<double>{0.0, 0.3}));
  EXPECT_EQ(cfg.runs, 4u);
  EXPECT_EQ(cfg.threshold_rule, ThresholdRule::above);
  EXPECT_EQ(cfg.diverse, default_roster());
}

TEST(Config, MissingKeyIsNamed) {
  std::istringstream in("[experiment]\ndatasets = a.csv\ntechniques = none\n");
  try {
    parse_config(in, "/tmp");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("learners"), std::string::npos);
  }
}

TEST(Config, RejectsUnknownAndInvalidKeys) {
  std::istringstream unknown("[experiment]\ndatasets = a\nlearners = dt\ntechniques = none\nrunz = 3\n");
  EXPECT_THROW(parse_config(unknown, "/tmp"), ConfigError);
  std::istringstream bad("[experiment]\ndatasets = a\nlearners = dt\ntechniques = none\nthreshold = 1.5\n");
  EXPECT_THROW(parse_config(bad, "/tmp"), ConfigError);
}

TEST(Config, WriteConfigRoundTrips) {
  const auto cfg = load_config(fixtures::config_path("minimal.ini"));
  std::ostringstream out;
  write_config(out, cfg);
  std::istringstream in(out.str());
  const auto back = parse_config(in, "/");
  EXPECT_EQ(back.dataset_paths, cfg.dataset_paths);
  EXPECT_EQ(back.learners, cfg.learners);
  EXPECT_EQ(back.techniques, cfg.techniques);
  EXPECT_EQ(back.noise_levels, cfg.noise_levels);
  EXPECT_EQ(back.seed, cfg.seed);
  EXPECT_EQ(back.train_fraction, cfg.train_fraction);
  EXPECT_EQ(back.runs, cfg.runs);
  EXPECT_EQ(back.folds, cfg.folds);
}

TEST(Config, ManifestReloadsAsConfig) {
  RunManifest m;
  m.config = load_config(fixtures::config_path("minimal.ini"));
  m.config_path = "minimal.ini";
  m.out_dir = "/tmp/out";
  m.version = std::string(version());
  m.timestamp = "2026-01-01T00:00:00Z";
  std::ostringstream out;
  write_manifest(out, m);
  EXPECT_NE(out.str().find("[manifest]"), std::string::npos);
  std::istringstream in(out.str());
  const auto back = parse_config(in, "/");
  EXPECT_EQ(back.dataset_paths, m.config.dataset_paths);
  EXPECT_EQ(back.seed, m.config.seed);
}
