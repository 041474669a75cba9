#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nicd/dataset.hpp"

namespace nicd {

/// Returns a permutation of `ds`; the same seed always gives the same order.
Dataset shuffle(const Dataset& ds, std::uint64_t seed);

struct Split {
  Dataset train;
  Dataset test;
};

/// Per class c, round-half-up(train_fraction * |c|) instances go to train,
/// at least one when the class is non-empty. Which members go where is
/// drawn with `seed`; both halves keep the original relative order.
/// Throws ArgumentError unless 0 < train_fraction < 1.
Split stratified_split(const Dataset& ds, double train_fraction, std::uint64_t seed);

enum class NoiseLabelRule {
  other_classes,  ///< replacement drawn uniformly from the other classes
  any_class,      ///< replacement drawn from all classes, may keep the label
};

struct NoiseSpec {
  double rate = 0.0;
  std::uint64_t seed = 0;
  NoiseLabelRule rule = NoiseLabelRule::other_classes;
};

struct NoisyDataset {
  Dataset data;
  /// Ascending indices whose label actually changed.
  std::vector<std::size_t> flipped;
};

/// Picks round-half-up(rate * M) distinct instances and relabels them per
/// `spec.rule`. Features are never touched. Throws ArgumentError for a rate
/// outside [0, 1] or a positive rate on a single-class dataset.
NoisyDataset inject_label_noise(const Dataset& ds, const NoiseSpec& spec);

/// Stratified fold ids: each class is shuffled with `seed`, the per-class
/// lists are concatenated in class order and dealt round-robin.
/// Throws ArgumentError unless 2 <= folds <= labels.size().
std::vector<std::size_t> stratified_folds(const std::vector<ClassIndex>& labels,
                                          std::size_t num_classes, std::size_t folds,
                                          std::uint64_t seed);

/// round(x) with halves going up; tolerant of 0.1 * 5 style representation error.
std::size_t round_half_up(double x) noexcept;

}  // namespace nicd
