#include "nicd/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nicd/error.hpp"
#include "nicd/random.hpp"

namespace nicd {

std::size_t round_half_up(double x) noexcept {
  if (!(x > 0.0)) return 0;
  return static_cast<std::size_t>(std::floor(x + 0.5 + 1e-9));
}

Dataset shuffle(const Dataset& ds, std::uint64_t seed) {
  std::vector<std::size_t> order(ds.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  SplitMix64 rng(seed);
  rng.shuffle(order);
  return ds.subset(order);
}

Split stratified_split(const Dataset& ds, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ArgumentError("stratified_split: train_fraction must lie in (0, 1)");
  }
  SplitMix64 rng(seed);
  std::vector<char> to_train(ds.size(), 0);
  for (auto& members : ds.indices_by_class()) {
    if (members.empty()) continue;
    rng.shuffle(members);
    std::size_t n_train = round_half_up(train_fraction * static_cast<double>(members.size()));
    n_train = std::clamp<std::size_t>(n_train, 1, members.size());
    for (std::size_t i = 0; i < n_train; ++i) to_train[members[i]] = 1;
  }
  std::vector<std::size_t> train_rows, test_rows;
  for (std::size_t i = 0; i < ds.size(); ++i) (to_train[i] ? train_rows : test_rows).push_back(i);
  return {ds.subset(train_rows), ds.subset(test_rows)};
}

NoisyDataset inject_label_noise(const Dataset& ds, const NoiseSpec& spec) {
  if (!(spec.rate >= 0.0 && spec.rate <= 1.0)) {
    throw ArgumentError("inject_label_noise: rate must lie in [0, 1]");
  }
  if (spec.rate > 0.0 && ds.num_classes() < 2) {
    throw ArgumentError("inject_label_noise: need at least two classes to flip labels");
  }
  const std::size_t count = std::min(round_half_up(spec.rate * static_cast<double>(ds.size())), ds.size());
  NoisyDataset out{ds, {}};
  if (count == 0) return out;

  SplitMix64 rng(spec.seed);
  std::vector<std::size_t> order(ds.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Partial Fisher-Yates: the first `count` slots become a uniform sample.
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(ds.size() - i));
    std::swap(order[i], order[j]);
  }
  std::vector<std::size_t> chosen(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count));
  std::sort(chosen.begin(), chosen.end());

  auto rows = ds.instances();
  const std::size_t k = ds.num_classes();
  for (const auto idx : chosen) {
    const ClassIndex old_label = rows[idx].label;
    ClassIndex next;
    if (spec.rule == NoiseLabelRule::other_classes) {
      next = static_cast<ClassIndex>(rng.below(k - 1));
      if (next >= old_label) ++next;
    } else {
      next = static_cast<ClassIndex>(rng.below(k));
    }
    rows[idx].label = next;
    if (next != old_label) out.flipped.push_back(idx);
  }
  out.data = ds.with_instances(std::move(rows));
  return out;
}

std::vector<std::size_t> stratified_folds(const std::vector<ClassIndex>& labels,
                                          std::size_t num_classes, std::size_t folds,
                                          std::uint64_t seed) {
  if (folds < 2) throw ArgumentError("cross-validation needs at least 2 folds");
  if (folds > labels.size()) {
    throw ArgumentError("cross-validation: " + std::to_string(folds) + " folds exceed " +
                        std::to_string(labels.size()) + " instances");
  }
  std::vector<std::vector<std::size_t>> groups(num_classes);
  for (std::size_t i = 0; i < labels.size(); ++i) groups.at(labels[i]).push_back(i);
  SplitMix64 rng(seed);
  std::vector<std::size_t> assignment(labels.size(), 0);
  std::size_t position = 0;
  for (auto& group : groups) {
    rng.shuffle(group);
    for (const auto idx : group) assignment[idx] = position++ % folds;
  }
  return assignment;
}

}  // namespace nicd
