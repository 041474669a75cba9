#include <gtest/gtest.h>

#include "nicd/cross_validation.hpp"
#include "nicd/error.hpp"
#include "support.hpp"

using namespace nicd;

TEST(CrossValidation, EveryInstancePredictedOutOfFold) {
  const auto ds = fixtures::load("iris.csv");
  const auto oof = cross_validate(LearnerSpec::parse("knn:k=1"), ds, 10, 3);
  ASSERT_EQ(oof.record.predictions.size(), ds.size());
  ASSERT_EQ(oof.label_scores.size(), ds.size());
  EXPECT_EQ(oof.record.dataset, "iris");
  // Out of fold, 1-NN cannot simply memorise: some error, but not much.
  const double acc = record_accuracy(oof.record, ds);
  EXPECT_GT(acc, 0.9);
  EXPECT_LT(acc, 1.0);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    EXPECT_EQ(oof.label_scores[i], oof.record.predictions[i] == ds[i].label ? 1.0 : 0.0);
  }
}

TEST(CrossValidation, DeterministicPerSeed) {
  const auto ds = fixtures::load("wine.csv");
  const auto spec = LearnerSpec::parse("rf");
  EXPECT_EQ(cross_val_predictions(spec, ds, 5, 9).predictions, cross_val_predictions(spec, ds, 5, 9).predictions);
}

TEST(CrossValidation, RejectsBadFoldCounts) {
  const auto ds = fixtures::numeric("tiny", {{0}, {1}, {2}}, {0, 1, 0});
  EXPECT_THROW(cross_validate(LearnerSpec::parse("nb"), ds, 1, 0), ArgumentError);
  EXPECT_THROW(cross_validate(LearnerSpec::parse("nb"), ds, 4, 0), ArgumentError);
  EXPECT_NO_THROW(cross_validate(LearnerSpec::parse("nb"), ds, 3, 0));
}

TEST(CrossValidation, RecordAccuracyChecksLength) {
  const auto ds = fixtures::load("iris.csv");
  PredictionRecord r{LearnerSpec::parse("nb"), "iris", {0, 1}};
  EXPECT_THROW(record_accuracy(r, ds), ArgumentError);
}
