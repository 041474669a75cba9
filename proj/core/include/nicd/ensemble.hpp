#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nicd/dataset.hpp"
#include "nicd/learner.hpp"

namespace nicd {

/// Plurality vote over trained models, one unweighted vote each. Ties go to
/// the class with the higher training prior, then the lower class index.
class VotingEnsemble {
 public:
  /// `priors` default to the mean of the members' priors.
  explicit VotingEnsemble(std::vector<ModelPtr> members, std::vector<double> priors = {});

  const std::vector<ModelPtr>& members() const noexcept { return members_; }
  const std::vector<double>& priors() const noexcept { return priors_; }

  ClassIndex vote(const Instance& x) const;
  std::vector<ClassIndex> member_predictions(const Instance& x) const;

 private:
  std::vector<ModelPtr> members_;
  std::vector<double> priors_;
};

enum class EnsembleMode {
  plain,     ///< every member on the full training set
  weighted,  ///< each member weighted by its own out-of-fold scores
  filtered,  ///< each member on what it classifies correctly out of fold
};

/// Seed a member with this spec is trained with, given the ensemble seed.
/// Depends on the spec's token, not on its position.
std::uint64_t member_seed(std::uint64_t seed, const LearnerSpec& spec);

/// Trains one member per spec (on up to `jobs` threads). Weighted and
/// filtered members score the training set with `folds`-fold CV drawn from
/// `seed`. Ties use the training set's class frequencies.
VotingEnsemble build_ensemble(std::span<const LearnerSpec> specs, const Dataset& train, EnsembleMode mode,
                              std::size_t folds, std::uint64_t seed, std::size_t jobs = 1);

/// 5-NN, MLP and random forest.
std::vector<LearnerSpec> three_ensemble();

/// Accuracy of the vote on `test`.
double ensemble_accuracy(const VotingEnsemble& ensemble, const Dataset& test);

}  // namespace nicd
