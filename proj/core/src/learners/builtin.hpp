#pragma once

#include <cstdint>

#include "nicd/learner.hpp"

namespace nicd::learners {

ModelPtr train_knn(const LearnerSpec& spec, const TrainingData& data, std::uint64_t seed);
ModelPtr train_lwl(const LearnerSpec& spec, const TrainingData& data, std::uint64_t seed);
ModelPtr train_naive_bayes(const LearnerSpec& spec, const TrainingData& data, std::uint64_t seed);
ModelPtr train_decision_tree(const LearnerSpec& spec, const TrainingData& data, std::uint64_t seed);
ModelPtr train_random_forest(const LearnerSpec& spec, const TrainingData& data, std::uint64_t seed);
ModelPtr train_mlp(const LearnerSpec& spec, const TrainingData& data, std::uint64_t seed);
ModelPtr train_rule_learner(const LearnerSpec& spec, const TrainingData& data, std::uint64_t seed);
ModelPtr train_majority(const LearnerSpec& spec, const TrainingData& data, std::uint64_t seed);

}  // namespace nicd::learners
