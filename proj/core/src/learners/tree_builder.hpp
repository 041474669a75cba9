#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "feature_space.hpp"
#include "nicd/random.hpp"

namespace nicd::learners {

struct TreeOptions {
  enum class Criterion { gain_ratio, info_gain };
  Criterion criterion = Criterion::gain_ratio;
  /// Minimum weight in at least two branches of a split.
  double min_leaf = 2.0;
  /// Features examined per node; 0 means all (random subset otherwise).
  std::size_t features_per_split = 0;
  bool prune = true;
  double confidence = 0.25;
  std::size_t max_depth = 64;
};

struct TreeNode {
  static constexpr std::uint32_t kNone = 0xFFFFFFFFu;

  int feature = -1;  ///< -1 marks a leaf
  double threshold = 0.0;  ///< numeric split: value <= threshold takes child 0
  std::vector<std::uint32_t> children;
  std::uint32_t parent = kNone;
  std::vector<double> class_weight;  ///< training weight per class reaching the node
  double total = 0.0;

  bool is_leaf() const noexcept { return feature < 0; }
};

class Tree {
 public:
  /// The leaf reached by an imputed row. Empty leaves defer to the nearest
  /// ancestor holding training weight.
  const TreeNode& leaf_for(const double* row) const;

  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  std::size_t leaf_count() const;

 private:
  friend class TreeGrower;
  std::vector<TreeNode> nodes_;
  std::vector<bool> numeric_;
};

/// Grows (and optionally prunes) a tree over imputed row-major `rows`.
/// `sample` lists the participating row indices with their weights.
Tree grow_tree(const FeatureSpace& space, const std::vector<double>& rows,
               const std::vector<ClassIndex>& labels, std::size_t num_classes,
               std::span<const std::size_t> sample, std::span<const double> weights,
               const TreeOptions& options, SplitMix64* rng = nullptr);

/// Upper-confidence extra errors for a leaf with `n` weight and `e`
/// errors at confidence `cf` (the C4.5 pessimistic estimate).
double pessimistic_extra_errors(double n, double e, double cf);

/// Sums per-tree leaf class counts and normalises them to [0, 1].
std::vector<double> forest_vote(std::span<const std::vector<double>> leaf_counts, std::span<const double> fallback);

}  // namespace nicd::learners
