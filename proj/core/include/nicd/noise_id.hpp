#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nicd/cross_validation.hpp"
#include "nicd/dataset.hpp"
#include "nicd/learner.hpp"

namespace nicd {

/// Per-instance estimate of p(y_i | x_i), aligned to the training set.
struct CorrectnessScores {
  std::vector<double> scores;
  std::size_t ensemble_size = 0;
};

struct FilterOutcome {
  std::vector<std::size_t> kept;     ///< ascending
  std::vector<std::size_t> removed;  ///< ascending
  double threshold = 0.0;
  std::vector<std::string> warnings;
};

/// Fraction of the records that predict each instance's label. The records
/// must all be aligned to `train`.
CorrectnessScores correctness_from_predictions(std::span<const PredictionRecord> records, const Dataset& train);

/// Out-of-fold correctness scores under the learner set `ensemble`. All
/// members share the fold assignment drawn from `seed`; folds are capped at
/// the training size. Members are cross-validated on up to `jobs` threads.
CorrectnessScores estimate_correctness(std::span<const LearnerSpec> ensemble, const Dataset& train,
                                       std::size_t folds, std::uint64_t seed, std::size_t jobs = 1);

enum class ThresholdRule {
  at_least,  ///< remove when the misclassifying fraction >= threshold
  above,     ///< remove when it is strictly greater
};

/// Removes the instances misclassified by at least `threshold` of the set.
/// Throws ArgumentError unless 0 < threshold <= 1.
FilterOutcome l_filter(const Dataset& train, const CorrectnessScores& scores, double threshold = 0.5,
                       ThresholdRule rule = ThresholdRule::at_least);

/// The scores as weights; zeros become 1 / (2 |L|).
WeightVector l_weights(const CorrectnessScores& scores);

/// Scores from a single learner: its out-of-fold classifier_score for the
/// given label.
CorrectnessScores biased_scores(const LearnerSpec& spec, const Dataset& train, std::size_t folds,
                                std::uint64_t seed);

/// Removes the instances the learner misclassifies out of fold.
FilterOutcome biased_filter(const OutOfFold& oof, const Dataset& train);
FilterOutcome biased_filter(const LearnerSpec& spec, const Dataset& train, std::size_t folds, std::uint64_t seed);

/// Scores as weights; zeros become min(0.5, half the smallest positive score).
WeightVector biased_weights(const CorrectnessScores& scores);

/// Repeated edited nearest neighbour with leave-one-out k-NN until a pass
/// removes nothing.
FilterOutcome renn_filter(const Dataset& train, std::size_t k = 5);

/// One pass: removes what `spec` misclassifies under k-fold CV.
FilterOutcome classification_filter(const Dataset& train, const LearnerSpec& spec, std::size_t folds,
                                    std::uint64_t seed);

enum class EnsembleFilterMode {
  consensus,  ///< misclassified by every member
  majority,   ///< misclassified by more than half
};

/// Default trio: dt, knn with k = 1, naive Bayes.
std::vector<LearnerSpec> default_filter_trio();

FilterOutcome ensemble_filter(const Dataset& train, std::span<const LearnerSpec> trio, EnsembleFilterMode mode,
                              std::size_t folds, std::uint64_t seed);

/// Cross-validated committees: n models, each leaving out one stratified
/// part, classify every instance; those misclassified by all are removed.
FilterOutcome cvc_filter(const Dataset& train, std::size_t partitions, const LearnerSpec& spec, std::uint64_t seed);

/// Rounds of: split into n stratified parts, one model per part, remove
/// what all models misclassify. Stops after the first round that removes
/// fewer than 1% of the original size (that round's removals still apply).
FilterOutcome iterative_partitioning_filter(const Dataset& train, std::size_t partitions, std::uint64_t seed,
                                            const LearnerSpec& spec = LearnerSpec::parse("dt"));

/// The kept rows, in order.
Dataset apply_filter(const Dataset& train, const FilterOutcome& outcome);

/// Audit table: `index<TAB>label<TAB>score<TAB>status`, one row per
/// instance. `outcome` may be null, in which case status is `-`.
void write_scores(std::ostream& out, const Dataset& train, const CorrectnessScores& scores,
                  const FilterOutcome* outcome = nullptr);
void write_weights(std::ostream& out, const WeightVector& weights);

}  // namespace nicd
