#include <gtest/gtest.h>

#include <sstream>

#include "nicd/error.hpp"
#include "nicd/noise_id.hpp"
#include "nicd/sampling.hpp"
#include "support.hpp"

using namespace nicd;

namespace {

// Far-apart blobs (no overlap) with instance `flip` relabelled.
Dataset separated_blobs(std::size_t n, std::optional<std::size_t> flip, std::uint64_t seed = 4) {
  auto ds = fixtures::blobs(n, 4.0, seed);
  if (!flip) return ds;
  auto rows = ds.instances();
  rows[*flip].label = 1 - rows[*flip].label;
  return ds.with_instances(rows);
}

Dataset labelled(std::vector<ClassIndex> labels, std::size_t classes = 2) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < labels.size(); ++i) rows.push_back({static_cast<double>(i)});
  return fixtures::numeric("l", rows, labels, classes);
}

CorrectnessScores scores(std::vector<double> s, std::size_t size = 9) { return {std::move(s), size}; }

}  // namespace

TEST(Correctness, KroneckerDeltaAverage) {
  const auto ds = labelled({0, 1});
  std::vector<PredictionRecord> records;
  for (int j = 0; j < 9; ++j) {
    // Instance 0: six of nine right. Instance 1: all right.
    records.push_back({LearnerSpec::parse("nb"), "l", {static_cast<ClassIndex>(j < 6 ? 0 : 1), 1}});
  }
  const auto s = correctness_from_predictions(records, ds);
  EXPECT_EQ(s.ensemble_size, 9u);
  EXPECT_EQ(s.scores[0], 6.0 / 9.0);
  EXPECT_EQ(s.scores[1], 1.0);
  for (auto& r : records) r.predictions = {1, 0};
  EXPECT_EQ(correctness_from_predictions(records, ds).scores, (std::vector<double>{0.0, 0.0}));
}

TEST(Correctness, EstimatedScoresLieOnTheGrid) {
  const auto ds = fixtures::load("iris.csv");
  const auto set = parse_learner_list("dt;knn;nb");
  const auto s = estimate_correctness(set, ds, 5, 1);
  ASSERT_EQ(s.scores.size(), ds.size());
  for (const auto v : s.scores) {
    const double k = v * 3;
    EXPECT_EQ(k, std::round(k));
  }
  EXPECT_EQ(estimate_correctness(set, ds, 5, 1, 3).scores, s.scores);
  EXPECT_THROW(estimate_correctness({}, ds, 5, 1), ArgumentError);
}

TEST(LFilter, RuleArithmetic) {
  const auto ds = labelled({0, 0, 1, 1});
  const auto out = l_filter(ds, scores({4.0 / 9, 1.0, 1.0, 5.0 / 9}), 0.5);
  EXPECT_EQ(out.removed, (std::vector<std::size_t>{0}));
  EXPECT_EQ(out.kept, (std::vector<std::size_t>{1, 2, 3}));
  for (const double t : {0.1, 0.5, 0.9, 1.0}) {
    EXPECT_TRUE(l_filter(ds, scores({1, 1, 1, 1}), t).removed.empty());
  }
}

TEST(LFilter, ThresholdSelectsByIndex) {
  const auto ds = labelled({0, 0, 1});
  EXPECT_EQ(l_filter(ds, scores({0.2, 0.6, 0.9}), 0.7).removed, (std::vector<std::size_t>{0}));
}

TEST(LFilter, AtLeastVersusAbove) {
  const auto ds = labelled({0, 0, 1, 1});
  const auto s = scores({0.5, 1, 1, 1}, 2);
  EXPECT_EQ(l_filter(ds, s, 0.5, ThresholdRule::at_least).removed.size(), 1u);
  EXPECT_TRUE(l_filter(ds, s, 0.5, ThresholdRule::above).removed.empty());
}

TEST(LFilter, ThresholdOneRemovesOnlyZeroScores) {
  const auto ds = labelled({0, 0, 1, 1});
  EXPECT_EQ(l_filter(ds, scores({0.0, 1.0 / 9, 0.0, 1}), 1.0).removed, (std::vector<std::size_t>{0, 2}));
}

TEST(LFilter, RejectsBadThresholds) {
  const auto ds = labelled({0, 1});
  EXPECT_THROW(l_filter(ds, scores({1, 1}), 0.0), ArgumentError);
  EXPECT_THROW(l_filter(ds, scores({1, 1}), 1.5), ArgumentError);
  EXPECT_THROW(l_filter(ds, scores({1}), 0.5), ArgumentError);
}

TEST(LFilter, ClassGuardKeepsBestInstance) {
  const auto ds = labelled({0, 0, 1, 1, 1});
  const auto out = l_filter(ds, scores({1, 1, 0.2, 0.4, 0.4}), 0.5);
  EXPECT_EQ(out.removed, (std::vector<std::size_t>{2, 4}));
  ASSERT_EQ(out.warnings.size(), 1u);
  EXPECT_NE(out.warnings[0].find("c1"), std::string::npos);
}

TEST(LWeights, IdentityWithFloor) {
  EXPECT_EQ(l_weights(scores({1, 1, 1})), (WeightVector{1, 1, 1}));
  EXPECT_EQ(l_weights(scores({6.0 / 9, 3.0 / 9})), (WeightVector{6.0 / 9, 3.0 / 9}));
  EXPECT_EQ(l_weights(scores({0.0, 1.0}, 7)), (WeightVector{1.0 / 14, 1.0}));
}

TEST(Biased, WeightsFloorAtHalfTheSmallestScore) {
  EXPECT_EQ(biased_weights(scores({0.0, 0.4, 1.0}, 1)), (WeightVector{0.2, 0.4, 1.0}));
  EXPECT_EQ(biased_weights(scores({0.0, 1.0}, 1)), (WeightVector{0.5, 1.0}));
}

TEST(Biased, KnnScoresAreNeighbourAgreement) {
  const auto ds = separated_blobs(60, std::nullopt);
  const auto s = biased_scores(LearnerSpec::parse("knn:k=5"), ds, 10, 1);
  for (const auto v : s.scores) EXPECT_EQ(v, 1.0);
}

TEST(Biased, FilterRemovesOnlyMisclassified) {
  const auto ds = separated_blobs(60, 10);
  const auto out = biased_filter(LearnerSpec::parse("knn:k=5"), ds, 10, 1);
  EXPECT_EQ(out.removed, (std::vector<std::size_t>{10}));
}

TEST(Renn, CleanBlobsKeepEverything) {
  EXPECT_TRUE(renn_filter(separated_blobs(60, std::nullopt), 5).removed.empty());
}

TEST(Renn, RemovesAPlantedFlip) {
  EXPECT_EQ(renn_filter(separated_blobs(60, 17), 5).removed, (std::vector<std::size_t>{17}));
}

TEST(Renn, TooSmallWarns) {
  const auto out = renn_filter(labelled({0, 1, 0}), 5);
  EXPECT_TRUE(out.removed.empty());
  EXPECT_EQ(out.warnings.size(), 1u);
  EXPECT_THROW(renn_filter(labelled({0, 1}), 0), ArgumentError);
}

TEST(ClassificationFilter, SameFixturesOnePass) {
  const auto spec = LearnerSpec::parse("knn:k=3");
  EXPECT_TRUE(classification_filter(separated_blobs(60, std::nullopt), spec, 10, 2).removed.empty());
  EXPECT_EQ(classification_filter(separated_blobs(60, 17), spec, 10, 2).removed, (std::vector<std::size_t>{17}));
  EXPECT_TRUE(classification_filter(labelled({0, 1, 0, 1}), LearnerSpec::parse("majority"), 2, 2).kept.size() >= 2);
}

TEST(EnsembleFilter, ConsensusAndMajority) {
  fixtures::register_constant_learner();
  const auto ds = labelled({0, 0, 1, 1, 2, 2}, 3);
  const auto trio = parse_learner_list("always:label=1;always:label=1;always:label=2");
  // Class 0: all right. Class 1: two wrong. Class 2: all wrong.
  const auto consensus = ensemble_filter(ds, trio, EnsembleFilterMode::consensus, 2, 1);
  EXPECT_EQ(consensus.removed, (std::vector<std::size_t>{5}));  // guard keeps 4
  const auto majority = ensemble_filter(ds, trio, EnsembleFilterMode::majority, 2, 1);
  EXPECT_EQ(majority.removed, (std::vector<std::size_t>{3, 5}));  // guard keeps 2 and 4
  EXPECT_EQ(majority.warnings.size(), 2u);
  EXPECT_THROW(ensemble_filter(ds, std::span(trio).first(1), EnsembleFilterMode::majority, 2, 1), ArgumentError);
}

TEST(EnsembleFilter, DefaultTrio) {
  EXPECT_EQ(format_learner_list(default_filter_trio()), "dt;knn:k=1;nb");
  EXPECT_EQ(ensemble_filter(separated_blobs(60, 17), default_filter_trio(), EnsembleFilterMode::consensus, 10, 3).removed,
            (std::vector<std::size_t>{17}));
}

TEST(Cvc, ConsensusOfCommittee) {
  const auto dt = LearnerSpec::parse("dt");
  EXPECT_TRUE(cvc_filter(separated_blobs(60, std::nullopt), 3, dt, 1).removed.empty());
  EXPECT_EQ(cvc_filter(separated_blobs(60, 17), 3, dt, 1).removed, (std::vector<std::size_t>{17}));
  EXPECT_THROW(cvc_filter(separated_blobs(60, 17), 1, dt, 1), ArgumentError);
}

TEST(Ipf, StopsAfterAQuietRound) {
  EXPECT_TRUE(iterative_partitioning_filter(separated_blobs(60, std::nullopt), 3, 1).removed.empty());
  EXPECT_EQ(iterative_partitioning_filter(separated_blobs(50, 17), 3, 1).removed, (std::vector<std::size_t>{17}));
  EXPECT_THROW(iterative_partitioning_filter(separated_blobs(50, 17), 1, 1), ArgumentError);
}

TEST(Filters, OutcomePartitionsIndices) {
  const auto noisy = inject_label_noise(fixtures::load("iris.csv"), {0.2, 3});
  const auto s = estimate_correctness(parse_learner_list("dt;knn;nb"), noisy.data, 5, 2);
  for (const auto& out : {l_filter(noisy.data, s), renn_filter(noisy.data), cvc_filter(noisy.data, 3, LearnerSpec::parse("dt"), 1),
                          iterative_partitioning_filter(noisy.data, 3, 1)}) {
    std::vector<bool> seen(noisy.data.size(), false);
    for (const auto i : out.kept) seen.at(i) = true;
    for (const auto i : out.removed) {
      EXPECT_FALSE(seen.at(i));
      seen.at(i) = true;
    }
    EXPECT_EQ(std::count(seen.begin(), seen.end(), true), static_cast<long>(noisy.data.size()));
    EXPECT_EQ(apply_filter(noisy.data, out).size(), out.kept.size());
  }
}

TEST(Audit, ScoresTable) {
  const auto ds = labelled({0, 1});
  const auto s = scores({0.25, 1.0}, 4);
  const auto out = l_filter(ds, s, 0.5);
  std::ostringstream text;
  write_scores(text, ds, s, &out);
  EXPECT_EQ(text.str(), "index\tlabel\tscore\tstatus\n0\tc0\t0.250000\tkept\n1\tc1\t1.000000\tkept\n");
  std::ostringstream w;
  write_weights(w, {0.5, 1});
  EXPECT_EQ(w.str(), "index\tweight\n0\t0.500000\n1\t1.000000\n");
}
