#include "nicd/ensemble.hpp"

#include <algorithm>

#include "nicd/cross_validation.hpp"
#include "nicd/error.hpp"
#include "nicd/noise_id.hpp"
#include "nicd/parallel.hpp"
#include "nicd/random.hpp"

namespace nicd {

VotingEnsemble::VotingEnsemble(std::vector<ModelPtr> members, std::vector<double> priors)
    : members_(std::move(members)), priors_(std::move(priors)) {
  if (members_.empty()) throw ArgumentError("an ensemble needs at least one member");
  const auto k = members_.front()->num_classes();
  const auto f = members_.front()->num_features();
  for (const auto& m : members_) {
    if (!m) throw ArgumentError("null ensemble member");
    if (m->num_classes() != k || m->num_features() != f) {
      throw ArgumentError("ensemble members disagree on the class set or feature schema");
    }
  }
  if (priors_.empty()) {
    priors_.assign(k, 0.0);
    for (const auto& m : members_) {
      for (std::size_t c = 0; c < k; ++c) priors_[c] += m->priors()[c] / static_cast<double>(members_.size());
    }
  }
  if (priors_.size() != k) throw ArgumentError("ensemble priors do not match the class count");
}

std::vector<ClassIndex> VotingEnsemble::member_predictions(const Instance& x) const {
  std::vector<ClassIndex> out;
  out.reserve(members_.size());
  for (const auto& m : members_) out.push_back(m->predict(x));
  return out;
}

ClassIndex VotingEnsemble::vote(const Instance& x) const {
  std::vector<double> votes(priors_.size(), 0.0);
  for (const auto& m : members_) votes[m->predict(x)] += 1.0;
  return argmax_with_ties(votes, priors_);
}

std::uint64_t member_seed(std::uint64_t seed, const LearnerSpec& spec) { return derive_seed(seed, 0, spec.token()); }

VotingEnsemble build_ensemble(std::span<const LearnerSpec> specs, const Dataset& train, EnsembleMode mode,
                              std::size_t folds, std::uint64_t seed, std::size_t jobs) {
  if (specs.empty()) throw ArgumentError("an ensemble needs at least one learner");
  if (train.empty()) throw ArgumentError("cannot build an ensemble on an empty training set");
  std::vector<ModelPtr> members(specs.size());
  parallel_for(specs.size(), jobs, [&](std::size_t j) {
    const auto& spec = specs[j];
    const auto mseed = member_seed(seed, spec);
    if (mode == EnsembleMode::plain) {
      members[j] = nicd::train(spec, train, {}, mseed);
      return;
    }
    const auto oof = cross_validate(spec, train, std::min(folds, train.size()), seed);
    if (mode == EnsembleMode::weighted) {
      members[j] = nicd::train(spec, train, biased_weights({oof.label_scores, 1}), mseed);
    } else {
      members[j] = nicd::train(spec, apply_filter(train, biased_filter(oof, train)), {}, mseed);
    }
  });
  std::vector<double> priors(train.num_classes(), 0.0);
  for (const auto c : train.labels()) priors[c] += 1.0 / static_cast<double>(train.size());
  return VotingEnsemble(std::move(members), std::move(priors));
}

std::vector<LearnerSpec> three_ensemble() {
  return {LearnerSpec::parse("knn:k=5"), LearnerSpec::parse("mlp"), LearnerSpec::parse("rf")};
}

double ensemble_accuracy(const VotingEnsemble& ensemble, const Dataset& test) {
  if (test.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& x : test.instances()) hits += ensemble.vote(x) == x.label;
  return static_cast<double>(hits) / static_cast<double>(test.size());
}

}  // namespace nicd
