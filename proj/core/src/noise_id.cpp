#include "nicd/noise_id.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "feature_space.hpp"
#include "learners/neighbors.hpp"
#include "nicd/error.hpp"
#include "nicd/parallel.hpp"
#include "nicd/random.hpp"
#include "nicd/sampling.hpp"

namespace nicd {
namespace {

std::size_t cap_folds(std::size_t folds, const Dataset& ds) {
  if (folds < 2) throw ArgumentError("folds must be at least 2");
  if (ds.size() < 2) throw ArgumentError("training set '" + ds.name() + "' has fewer than two instances");
  return std::min(folds, ds.size());
}

// Turns a removal mask into an outcome. If a class would lose every
// instance, its highest-`keep_score` member (lowest index on ties) stays.
FilterOutcome finish(const Dataset& ds, std::vector<bool> remove, std::span<const double> keep_score,
                     double threshold, std::vector<std::string> warnings = {}) {
  for (const auto& members : ds.indices_by_class()) {
    if (members.empty()) continue;
    if (!std::all_of(members.begin(), members.end(), [&](std::size_t i) { return remove[i]; })) continue;
    std::size_t best = members.front();
    for (const auto i : members) {
      if (keep_score[i] > keep_score[best]) best = i;
    }
    remove[best] = false;
    warnings.push_back("class '" + ds.classes()[ds[best].label] + "' would be emptied; kept instance " +
                       std::to_string(best));
  }
  FilterOutcome out;
  out.threshold = threshold;
  out.warnings = std::move(warnings);
  for (std::size_t i = 0; i < ds.size(); ++i) (remove[i] ? out.removed : out.kept).push_back(i);
  return out;
}

std::vector<double> hits_of(const PredictionRecord& record, const Dataset& ds) {
  std::vector<double> hit(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) hit[i] = record.predictions[i] == ds[i].label ? 1.0 : 0.0;
  return hit;
}

}  // namespace

CorrectnessScores correctness_from_predictions(std::span<const PredictionRecord> records, const Dataset& train) {
  if (records.empty()) throw ArgumentError("correctness scores need at least one learner");
  std::vector<std::size_t> votes(train.size(), 0);
  for (const auto& r : records) {
    if (r.predictions.size() != train.size()) throw ArgumentError("prediction record length mismatch");
    for (std::size_t i = 0; i < train.size(); ++i) votes[i] += r.predictions[i] == train[i].label;
  }
  CorrectnessScores out;
  out.ensemble_size = records.size();
  out.scores.resize(train.size());
  // Integer count over size: exact grid points, 1 when all agree.
  for (std::size_t i = 0; i < train.size(); ++i) {
    out.scores[i] = static_cast<double>(votes[i]) / static_cast<double>(records.size());
  }
  return out;
}

CorrectnessScores estimate_correctness(std::span<const LearnerSpec> ensemble, const Dataset& train,
                                       std::size_t folds, std::uint64_t seed, std::size_t jobs) {
  if (ensemble.empty()) throw ArgumentError("correctness scores need at least one learner");
  folds = cap_folds(folds, train);
  std::vector<PredictionRecord> records(ensemble.size());
  parallel_for(ensemble.size(), jobs,
               [&](std::size_t j) { records[j] = cross_val_predictions(ensemble[j], train, folds, seed); });
  return correctness_from_predictions(records, train);
}

FilterOutcome l_filter(const Dataset& train, const CorrectnessScores& scores, double threshold, ThresholdRule rule) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw ArgumentError("filter threshold must be in (0, 1], got " + std::to_string(threshold));
  }
  if (scores.scores.size() != train.size()) throw ArgumentError("l_filter: scores do not match the training set");
  std::vector<bool> remove(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) {
    const double wrong = 1.0 - scores.scores[i];
    remove[i] = rule == ThresholdRule::at_least ? wrong >= threshold - 1e-12 : wrong > threshold + 1e-12;
  }
  return finish(train, std::move(remove), scores.scores, threshold);
}

WeightVector l_weights(const CorrectnessScores& scores) {
  const double floor = 1.0 / (2.0 * static_cast<double>(std::max<std::size_t>(scores.ensemble_size, 1)));
  WeightVector w(scores.scores);
  for (auto& v : w) {
    if (v <= 0.0) v = floor;
  }
  return w;
}

CorrectnessScores biased_scores(const LearnerSpec& spec, const Dataset& train, std::size_t folds,
                                std::uint64_t seed) {
  auto oof = cross_validate(spec, train, cap_folds(folds, train), seed);
  return {std::move(oof.label_scores), 1};
}

FilterOutcome biased_filter(const OutOfFold& oof, const Dataset& train) {
  const auto hit = hits_of(oof.record, train);
  std::vector<bool> remove(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) remove[i] = hit[i] == 0.0;
  return finish(train, std::move(remove), oof.label_scores, 0.5);
}

FilterOutcome biased_filter(const LearnerSpec& spec, const Dataset& train, std::size_t folds, std::uint64_t seed) {
  return biased_filter(cross_validate(spec, train, cap_folds(folds, train), seed), train);
}

WeightVector biased_weights(const CorrectnessScores& scores) {
  double smallest = 1.0;
  for (const auto v : scores.scores) {
    if (v > 0.0) smallest = std::min(smallest, v);
  }
  const double floor = std::min(0.5, 0.5 * smallest);
  WeightVector w(scores.scores);
  for (auto& v : w) {
    if (v <= 0.0) v = floor;
  }
  return w;
}

FilterOutcome renn_filter(const Dataset& train, std::size_t k) {
  if (k < 1) throw ArgumentError("renn: k must be at least 1");
  std::vector<std::string> warnings;
  std::vector<bool> removed(train.size(), false);
  std::vector<double> agreement(train.size(), 0.0);
  std::vector<std::size_t> alive(train.size());
  for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;
  if (train.size() < k + 1) {
    warnings.push_back("renn: " + std::to_string(train.size()) + " instances is too few for k=" + std::to_string(k));
    return finish(train, removed, agreement, 0.5, std::move(warnings));
  }

  while (alive.size() >= k + 1) {
    const auto current = train.subset(alive);
    const FeatureSpace space(current, std::vector<double>(current.size(), 1.0));
    const auto rows = space.impute_all(current);
    std::vector<double> priors(current.num_classes(), 0.0);
    for (const auto c : current.labels()) priors[c] += 1.0;

    std::vector<std::size_t> survivors;
    for (std::size_t i = 0; i < current.size(); ++i) {
      const auto hood = learners::nearest(space, rows, current.size(), rows.data() + i * space.arity(), k, i);
      std::vector<double> votes(current.num_classes(), 0.0);
      for (const auto& n : hood) votes[current[n.index].label] += 1.0;
      agreement[alive[i]] = votes[current[i].label] / static_cast<double>(hood.size());
      if (argmax_with_ties(votes, priors) == current[i].label) {
        survivors.push_back(alive[i]);
      } else {
        removed[alive[i]] = true;
      }
    }
    if (survivors.size() == alive.size()) break;
    alive = std::move(survivors);
  }
  return finish(train, std::move(removed), agreement, 0.5, std::move(warnings));
}

FilterOutcome classification_filter(const Dataset& train, const LearnerSpec& spec, std::size_t folds,
                                    std::uint64_t seed) {
  const auto oof = cross_validate(spec, train, cap_folds(folds, train), seed);
  const auto hit = hits_of(oof.record, train);
  std::vector<bool> remove(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) remove[i] = hit[i] == 0.0;
  return finish(train, std::move(remove), oof.label_scores, 0.5);
}

std::vector<LearnerSpec> default_filter_trio() {
  return {LearnerSpec::parse("dt"), LearnerSpec::parse("knn:k=1"), LearnerSpec::parse("nb")};
}

FilterOutcome ensemble_filter(const Dataset& train, std::span<const LearnerSpec> trio, EnsembleFilterMode mode,
                              std::size_t folds, std::uint64_t seed) {
  if (trio.size() < 2) throw ArgumentError("ensemble filter needs at least two learners");
  const auto scores = estimate_correctness(trio, train, folds, seed);
  std::vector<bool> remove(train.size());
  const auto n = static_cast<double>(trio.size());
  for (std::size_t i = 0; i < train.size(); ++i) {
    const double wrong = std::round((1.0 - scores.scores[i]) * n);
    remove[i] = mode == EnsembleFilterMode::consensus ? wrong == n : 2.0 * wrong > n;
  }
  return finish(train, std::move(remove), scores.scores, mode == EnsembleFilterMode::consensus ? 1.0 : 0.5);
}

namespace {

// Number of the models that classify each instance of `ds` correctly.
std::vector<double> committee_hits(const Dataset& ds, const std::vector<ModelPtr>& models) {
  std::vector<double> hits(ds.size(), 0.0);
  for (const auto& m : models) {
    for (std::size_t i = 0; i < ds.size(); ++i) hits[i] += m->predict(ds[i]) == ds[i].label;
  }
  return hits;
}

std::vector<std::vector<std::size_t>> parts_of(const Dataset& ds, std::size_t partitions, std::uint64_t seed) {
  const auto ids = stratified_folds(ds.labels(), ds.num_classes(), partitions, seed);
  std::vector<std::vector<std::size_t>> parts(partitions);
  for (std::size_t i = 0; i < ds.size(); ++i) parts[ids[i]].push_back(i);
  return parts;
}

}  // namespace

FilterOutcome cvc_filter(const Dataset& train, std::size_t partitions, const LearnerSpec& spec, std::uint64_t seed) {
  if (partitions < 2) throw ArgumentError("cvc: partitions must be at least 2");
  if (train.size() < partitions) throw ArgumentError("cvc: fewer instances than partitions");
  const auto parts = parts_of(train, partitions, seed);
  std::vector<ModelPtr> models;
  for (std::size_t p = 0; p < partitions; ++p) {
    std::vector<std::size_t> rows;
    for (std::size_t q = 0; q < partitions; ++q) {
      if (q != p) rows.insert(rows.end(), parts[q].begin(), parts[q].end());
    }
    std::sort(rows.begin(), rows.end());
    models.push_back(nicd::train(spec, train.subset(rows), {}, mix_seed(seed, p)));
  }
  const auto hits = committee_hits(train, models);
  std::vector<bool> remove(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) remove[i] = hits[i] == 0.0;
  return finish(train, std::move(remove), hits, 1.0);
}

FilterOutcome iterative_partitioning_filter(const Dataset& train, std::size_t partitions, std::uint64_t seed,
                                            const LearnerSpec& spec) {
  if (partitions < 2) throw ArgumentError("ipf: partitions must be at least 2");
  std::vector<std::size_t> alive(train.size());
  for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;
  std::vector<bool> removed(train.size(), false);
  std::vector<double> hits_all(train.size(), 0.0);
  std::vector<std::string> warnings;
  const double stop_below = 0.01 * static_cast<double>(train.size());

  for (std::uint64_t round = 0; alive.size() >= partitions; ++round) {
    const auto current = train.subset(alive);
    const auto round_seed = mix_seed(seed, round);
    const auto parts = parts_of(current, partitions, round_seed);
    std::vector<ModelPtr> models;
    for (std::size_t p = 0; p < partitions; ++p) {
      models.push_back(nicd::train(spec, current.subset(parts[p]), {}, mix_seed(round_seed, p)));
    }
    const auto hits = committee_hits(current, models);
    std::vector<bool> remove(current.size());
    for (std::size_t i = 0; i < current.size(); ++i) remove[i] = hits[i] == 0.0;
    const auto step = finish(current, std::move(remove), hits, 1.0);
    for (const auto& w : step.warnings) warnings.push_back("round " + std::to_string(round) + ": " + w);
    for (const auto i : step.removed) removed[alive[i]] = true;
    std::vector<std::size_t> next;
    for (const auto i : step.kept) next.push_back(alive[i]);
    alive = std::move(next);
    if (static_cast<double>(step.removed.size()) < stop_below) break;
  }
  return finish(train, std::move(removed), hits_all, 1.0, std::move(warnings));
}

Dataset apply_filter(const Dataset& train, const FilterOutcome& outcome) { return train.subset(outcome.kept); }

void write_scores(std::ostream& out, const Dataset& train, const CorrectnessScores& scores,
                  const FilterOutcome* outcome) {
  if (scores.scores.size() != train.size()) throw ArgumentError("write_scores: length mismatch");
  std::vector<char> status(train.size(), '-');
  if (outcome) {
    for (const auto i : outcome->kept) status.at(i) = 'k';
    for (const auto i : outcome->removed) status.at(i) = 'r';
  }
  out << "index\tlabel\tscore\tstatus\n";
  char buf[32];
  for (std::size_t i = 0; i < train.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6f", scores.scores[i]);
    out << i << '\t' << train.classes()[train[i].label] << '\t' << buf << '\t'
        << (status[i] == 'k' ? "kept" : status[i] == 'r' ? "removed" : "-") << '\n';
  }
}

void write_weights(std::ostream& out, const WeightVector& weights) {
  out << "index\tweight\n";
  char buf[32];
  for (std::size_t i = 0; i < weights.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6f", weights[i]);
    out << i << '\t' << buf << '\n';
  }
}

}  // namespace nicd
