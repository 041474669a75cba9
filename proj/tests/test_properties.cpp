// Randomised invariants, each over at least 100 generated cases.
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "nicd/diversity.hpp"
#include "nicd/ensemble.hpp"
#include "nicd/noise_id.hpp"
#include "nicd/sampling.hpp"
#include "support.hpp"

using namespace nicd;

namespace {

constexpr int kCases = 120;

std::vector<ClassIndex> random_labels(SplitMix64& rng, std::size_t n, std::size_t k) {
  std::vector<ClassIndex> out(n);
  for (auto& y : out) y = static_cast<ClassIndex>(rng.below(k));
  return out;
}

Dataset labelled(const std::vector<ClassIndex>& labels, std::size_t k) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < labels.size(); ++i) rows.push_back({static_cast<double>(i)});
  return fixtures::numeric("p", rows, labels, k);
}

}  // namespace

TEST(Property, CodMatrixIsAPseudometric) {
  SplitMix64 rng(101);
  for (int c = 0; c < kCases; ++c) {
    const std::size_t learners = 3 + rng.below(4), sets = 1 + rng.below(3), k = 2 + rng.below(3);
    CorpusPredictions preds;
    for (std::size_t l = 0; l < learners; ++l) preds.learners.push_back(LearnerSpec::make("knn", {{"k", double(l + 1)}}));
    for (std::size_t d = 0; d < sets; ++d) preds.corpus.push_back("d" + std::to_string(d));
    std::vector<std::size_t> sizes;
    for (std::size_t d = 0; d < sets; ++d) sizes.push_back(5 + rng.below(40));
    preds.records.resize(learners);
    preds.accuracy.assign(learners, std::vector<double>(sets, 0.5));
    for (std::size_t l = 0; l < learners; ++l)
      for (std::size_t d = 0; d < sets; ++d)
        preds.records[l].push_back({preds.learners[l], preds.corpus[d], random_labels(rng, sizes[d], k)});
    const auto m = cod_matrix(preds);
    for (std::size_t i = 0; i < learners; ++i) {
      EXPECT_EQ(m.at(i, i), 0.0);
      for (std::size_t j = 0; j < learners; ++j) {
        EXPECT_EQ(m.at(i, j), m.at(j, i));
        EXPECT_GE(m.at(i, j), 0.0);
        EXPECT_LE(m.at(i, j), 1.0);
        for (std::size_t h = 0; h < learners; ++h) EXPECT_LE(m.at(i, j), m.at(i, h) + m.at(h, j) + 1e-12);
      }
    }
  }
}

TEST(Property, FilterThresholdIsMonotone) {
  SplitMix64 rng(202);
  for (int c = 0; c < kCases; ++c) {
    const std::size_t size = 1 + rng.below(9), n = 10 + rng.below(50), k = 2 + rng.below(2);
    auto labels = random_labels(rng, n, k);
    for (std::size_t y = 0; y < k; ++y) labels[y] = static_cast<ClassIndex>(y);
    const auto train = labelled(labels, k);
    CorrectnessScores s{std::vector<double>(n), size};
    for (std::size_t i = 0; i < n; ++i) s.scores[i] = static_cast<double>(rng.below(size + 1)) / static_cast<double>(size);
    // One sure instance per class keeps the class guard out of the way.
    for (std::size_t y = 0; y < k; ++y) s.scores[y] = 1.0;
    const double lo = 0.05 + 0.9 * rng.uniform(), hi = lo + (1.0 - lo) * rng.uniform();
    for (const auto rule : {ThresholdRule::at_least, ThresholdRule::above}) {
      const auto a = l_filter(train, s, lo, rule), b = l_filter(train, s, std::max(hi, lo), rule);
      EXPECT_TRUE(std::includes(a.removed.begin(), a.removed.end(), b.removed.begin(), b.removed.end()));
      EXPECT_EQ(a.kept.size() + a.removed.size(), n);
    }
  }
}

TEST(Property, VoteIgnoresMemberOrder) {
  SplitMix64 rng(303);
  const Instance x{{0.0}, 0};
  for (int c = 0; c < kCases; ++c) {
    const std::size_t k = 2 + rng.below(4), m = 1 + rng.below(8);
    std::vector<double> priors(k);
    for (auto& p : priors) p = static_cast<double>(1 + rng.below(4));
    std::vector<ModelPtr> members;
    for (std::size_t i = 0; i < m; ++i)
      members.push_back(std::make_shared<fixtures::ConstantModel>(LearnerSpec::parse("majority"), priors, 1,
                                                                 static_cast<ClassIndex>(rng.below(k))));
    const auto expected = VotingEnsemble(members).vote(x);
    for (int p = 0; p < 3; ++p) {
      rng.shuffle(members);
      EXPECT_EQ(VotingEnsemble(members).vote(x), expected);
    }
  }
}

TEST(Property, StratifiedSplitWithinOne) {
  SplitMix64 rng(404);
  for (int c = 0; c < kCases; ++c) {
    const std::size_t n = 3 + rng.below(200), k = 1 + rng.below(5);
    const auto ds = labelled(random_labels(rng, n, k), k);
    const double frac = 0.05 + 0.9 * rng.uniform();
    const auto split = stratified_split(ds, frac, rng.next());
    const auto all = ds.class_counts(), tr = split.train.class_counts(), te = split.test.class_counts();
    EXPECT_EQ(split.train.size() + split.test.size(), n);
    for (std::size_t y = 0; y < k; ++y) {
      EXPECT_EQ(tr[y] + te[y], all[y]);
      EXPECT_LE(std::fabs(static_cast<double>(tr[y]) - frac * static_cast<double>(all[y])), 1.0);
      if (all[y] > 0) EXPECT_GE(tr[y], 1u);
    }
  }
}

TEST(Property, NoiseInjectionFlipsExactCount) {
  SplitMix64 rng(505);
  for (int c = 0; c < kCases; ++c) {
    const std::size_t n = 2 + rng.below(300), k = 2 + rng.below(4);
    auto labels = random_labels(rng, n, k);
    labels[0] = 0;
    labels[1] = 1;
    const auto ds = labelled(labels, k);
    const double rate = static_cast<double>(rng.below(11)) / 10.0;
    const auto noisy = inject_label_noise(ds, {rate, rng.next(), NoiseLabelRule::other_classes});
    EXPECT_EQ(noisy.flipped.size(), round_half_up(rate * static_cast<double>(n)));
    std::vector<std::size_t> changed;
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_EQ(noisy.data[i].values, ds[i].values);
      if (noisy.data[i].label != ds[i].label) changed.push_back(i);
    }
    EXPECT_EQ(changed, noisy.flipped);
  }
}

// Each score is exactly j / |L| for an integer j, over 1000 random fixtures.
TEST(Property, CorrectnessScoresLieOnTheGrid) {
  SplitMix64 rng(606);
  std::size_t checked = 0;
  for (int c = 0; c < 1000; ++c) {
    const std::size_t size = 1 + rng.below(12), n = 1 + rng.below(60), k = 2 + rng.below(4);
    const auto train = labelled(random_labels(rng, n, k), k);
    std::vector<PredictionRecord> records;
    for (std::size_t l = 0; l < size; ++l) {
      auto preds = random_labels(rng, n, k);
      // Bias towards the true label so the top of the grid is reached.
      for (std::size_t i = 0; i < n; ++i)
        if (rng.uniform() < 0.5) preds[i] = train[i].label;
      records.push_back({LearnerSpec::make("knn", {{"k", double(l + 1)}}), train.name(), preds});
    }
    const auto s = correctness_from_predictions(records, train);
    ASSERT_EQ(s.ensemble_size, size);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t votes = 0;
      for (const auto& r : records) votes += r.predictions[i] == train[i].label;
      EXPECT_EQ(s.scores[i], static_cast<double>(votes) / static_cast<double>(size));
      const double j = s.scores[i] * static_cast<double>(size);
      EXPECT_EQ(j, std::round(j));
      ++checked;
    }
  }
  EXPECT_GT(checked, 1000u);
}
