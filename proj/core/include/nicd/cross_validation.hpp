#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nicd/dataset.hpp"
#include "nicd/learner.hpp"

namespace nicd {

/// Out-of-fold predicted labels of one learner on one dataset, aligned to
/// the dataset's instance order.
struct PredictionRecord {
  LearnerSpec learner;
  std::string dataset;
  std::vector<ClassIndex> predictions;
};

struct OutOfFold {
  PredictionRecord record;
  /// classifier_score of the out-of-fold model at (x_i, y_i).
  std::vector<double> label_scores;
};

/// Stratified k-fold cross-validation: every instance is predicted once by a
/// model that never saw it. Fold assignment depends only on the labels and
/// `seed`, so different learners share folds. The model for fold f is
/// trained with seed mix_seed(seed, f). Throws ArgumentError unless
/// 2 <= folds <= |ds|; training failures are rethrown naming the learner
/// and dataset.
OutOfFold cross_validate(const LearnerSpec& spec, const Dataset& ds, std::size_t folds, std::uint64_t seed);

PredictionRecord cross_val_predictions(const LearnerSpec& spec, const Dataset& ds, std::size_t folds,
                                       std::uint64_t seed);

/// Fraction of correct predictions in a record against the dataset labels.
double record_accuracy(const PredictionRecord& record, const Dataset& ds);

}  // namespace nicd
