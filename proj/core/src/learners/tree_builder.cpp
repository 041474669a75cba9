#include "learners/tree_builder.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numeric>

namespace nicd::learners {
namespace {

double entropy(std::span<const double> w, double total) {
  if (total <= 0) return 0.0;
  double h = 0.0;
  for (const double x : w) {
    if (x > 0) {
      const double p = x / total;
      h -= p * std::log2(p);
    }
  }
  return h;
}

struct Candidate {
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
  double ratio = 0.0;
};

}  // namespace

class TreeGrower {
 public:
  TreeGrower(const FeatureSpace& space, const std::vector<double>& rows, const std::vector<ClassIndex>& labels,
             std::size_t num_classes, const TreeOptions& options, SplitMix64* rng)
      : space_(space), rows_(rows), labels_(labels), nc_(num_classes), nf_(space.arity()), opt_(options), rng_(rng) {
    tree_.numeric_.resize(nf_);
    for (std::size_t f = 0; f < nf_; ++f) tree_.numeric_[f] = space.is_numeric(f);
  }

  Tree run(std::vector<std::size_t> sample, std::vector<double> weights) {
    grow(std::move(sample), std::move(weights), TreeNode::kNone, 0);
    if (opt_.prune) prune(0);
    return std::move(tree_);
  }

 private:
  double value(std::size_t row, std::size_t f) const { return rows_[row * nf_ + f]; }

  std::uint32_t grow(std::vector<std::size_t> sample, std::vector<double> weights, std::uint32_t parent,
                     std::size_t depth) {
    const auto id = static_cast<std::uint32_t>(tree_.nodes_.size());
    tree_.nodes_.emplace_back();
    {
      auto& node = tree_.nodes_.back();
      node.parent = parent;
      node.class_weight.assign(nc_, 0.0);
      for (std::size_t i = 0; i < sample.size(); ++i) node.class_weight[labels_[sample[i]]] += weights[i];
      node.total = std::accumulate(node.class_weight.begin(), node.class_weight.end(), 0.0);
    }
    const auto class_weight = tree_.nodes_[id].class_weight;
    const double total = tree_.nodes_[id].total;
    const double majority = *std::max_element(class_weight.begin(), class_weight.end());
    if (sample.empty() || majority >= total - 1e-12 || total < 2 * opt_.min_leaf || depth >= opt_.max_depth) {
      return id;
    }

    const auto best = choose_split(sample, weights, class_weight, total);
    if (best.feature < 0) return id;

    const auto f = static_cast<std::size_t>(best.feature);
    const std::size_t branches = space_.is_numeric(f) ? 2 : space_.category_slots(f);
    std::vector<std::vector<std::size_t>> part(branches);
    std::vector<std::vector<double>> part_w(branches);
    for (std::size_t i = 0; i < sample.size(); ++i) {
      const double v = value(sample[i], f);
      const std::size_t b = space_.is_numeric(f) ? (v <= best.threshold ? 0 : 1) : static_cast<std::size_t>(v);
      part[b].push_back(sample[i]);
      part_w[b].push_back(weights[i]);
    }
    sample.clear();
    sample.shrink_to_fit();
    weights.clear();
    weights.shrink_to_fit();

    tree_.nodes_[id].feature = best.feature;
    tree_.nodes_[id].threshold = best.threshold;
    std::vector<std::uint32_t> children;
    children.reserve(branches);
    for (std::size_t b = 0; b < branches; ++b) {
      children.push_back(grow(std::move(part[b]), std::move(part_w[b]), id, depth + 1));
    }
    tree_.nodes_[id].children = std::move(children);
    return id;
  }

  std::vector<std::size_t> features_to_try() {
    std::vector<std::size_t> features(nf_);
    std::iota(features.begin(), features.end(), std::size_t{0});
    if (opt_.features_per_split == 0 || opt_.features_per_split >= nf_ || rng_ == nullptr) return features;
    const std::size_t m = opt_.features_per_split;
    for (std::size_t i = 0; i < m; ++i) {
      const auto j = i + static_cast<std::size_t>(rng_->below(nf_ - i));
      std::swap(features[i], features[j]);
    }
    features.resize(m);
    std::sort(features.begin(), features.end());
    return features;
  }

  Candidate choose_split(const std::vector<std::size_t>& sample, const std::vector<double>& weights,
                         const std::vector<double>& class_weight, double total) {
    const double parent_h = entropy(class_weight, total);
    std::vector<Candidate> candidates;
    for (const auto f : features_to_try()) {
      const auto c = space_.is_numeric(f) ? numeric_split(f, sample, weights, class_weight, total, parent_h)
                                          : categorical_split(f, sample, weights, total, parent_h);
      if (c.feature >= 0 && c.gain > 1e-12) candidates.push_back(c);
    }
    if (candidates.empty()) return {};
    Candidate best;
    if (opt_.criterion == TreeOptions::Criterion::info_gain) {
      for (const auto& c : candidates) {
        if (best.feature < 0 || c.gain > best.gain + 1e-12) best = c;
      }
      return best;
    }
    // Gain ratio among candidates whose gain is at least average.
    double mean_gain = 0.0;
    for (const auto& c : candidates) mean_gain += c.gain;
    mean_gain /= static_cast<double>(candidates.size());
    for (const auto& c : candidates) {
      if (c.gain < mean_gain - 1e-9) continue;
      if (best.feature < 0 || c.ratio > best.ratio + 1e-12) best = c;
    }
    return best;
  }

  Candidate categorical_split(std::size_t f, const std::vector<std::size_t>& sample,
                              const std::vector<double>& weights, double total, double parent_h) const {
    const std::size_t slots = space_.category_slots(f);
    std::vector<double> counts(slots * nc_, 0.0), branch(slots, 0.0);
    for (std::size_t i = 0; i < sample.size(); ++i) {
      const auto v = static_cast<std::size_t>(value(sample[i], f));
      counts[v * nc_ + labels_[sample[i]]] += weights[i];
      branch[v] += weights[i];
    }
    std::size_t big_branches = 0;
    double child_h = 0.0, split_info = 0.0;
    for (std::size_t v = 0; v < slots; ++v) {
      if (branch[v] >= opt_.min_leaf) ++big_branches;
      if (branch[v] <= 0) continue;
      child_h += branch[v] / total * entropy(std::span<const double>(counts.data() + v * nc_, nc_), branch[v]);
      const double p = branch[v] / total;
      split_info -= p * std::log2(p);
    }
    if (big_branches < 2) return {};
    Candidate c;
    c.feature = static_cast<int>(f);
    c.gain = parent_h - child_h;
    c.ratio = split_info > 0 ? c.gain / split_info : 0.0;
    return c;
  }

  Candidate numeric_split(std::size_t f, const std::vector<std::size_t>& sample, const std::vector<double>& weights,
                          const std::vector<double>& class_weight, double total, double parent_h) const {
    std::vector<std::size_t> order(sample.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double va = value(sample[a], f), vb = value(sample[b], f);
      return va < vb || (va == vb && a < b);
    });
    std::vector<double> left(nc_, 0.0), right = class_weight;
    double left_total = 0.0;
    std::size_t thresholds = 0;
    Candidate best;
    double best_child_h = 0.0, best_left = 0.0;
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
      const std::size_t i = order[k];
      const double w = weights[i];
      const auto y = labels_[sample[i]];
      left[y] += w;
      right[y] -= w;
      left_total += w;
      const double v = value(sample[i], f);
      const double next = value(sample[order[k + 1]], f);
      if (!(v < next)) continue;
      ++thresholds;
      const double right_total = total - left_total;
      if (left_total < opt_.min_leaf || right_total < opt_.min_leaf) continue;
      const double child_h = (left_total * entropy(left, left_total) + right_total * entropy(right, right_total)) / total;
      if (best.feature < 0 || child_h < best_child_h - 1e-12) {
        best.feature = static_cast<int>(f);
        best.threshold = v + (next - v) / 2;
        best_child_h = child_h;
        best_left = left_total;
      }
    }
    if (best.feature < 0) return {};
    best.gain = parent_h - best_child_h;
    if (opt_.criterion == TreeOptions::Criterion::gain_ratio && thresholds > 1) {
      // MDL charge for having searched many thresholds (C4.5 release 8).
      best.gain -= std::log2(static_cast<double>(thresholds)) / total;
    }
    const double p = best_left / total;
    const double split_info = -(p * std::log2(p) + (1 - p) * std::log2(1 - p));
    best.ratio = split_info > 0 ? best.gain / split_info : 0.0;
    return best;
  }

  double leaf_error(const TreeNode& node) const {
    if (node.total <= 0) return 0.0;
    const double e = node.total - *std::max_element(node.class_weight.begin(), node.class_weight.end());
    return e + pessimistic_extra_errors(node.total, e, opt_.confidence);
  }

  // Subtree replacement, bottom-up; returns the estimated errors.
  double prune(std::uint32_t id) {
    if (tree_.nodes_[id].is_leaf()) return leaf_error(tree_.nodes_[id]);
    double subtree = 0.0;
    const auto children = tree_.nodes_[id].children;
    for (const auto child : children) subtree += prune(child);
    const double as_leaf = leaf_error(tree_.nodes_[id]);
    if (as_leaf <= subtree + 0.1) {
      tree_.nodes_[id].feature = -1;
      tree_.nodes_[id].children.clear();
      return as_leaf;
    }
    return subtree;
  }

  const FeatureSpace& space_;
  const std::vector<double>& rows_;
  const std::vector<ClassIndex>& labels_;
  std::size_t nc_, nf_;
  TreeOptions opt_;
  SplitMix64* rng_;
  Tree tree_;
};

const TreeNode& Tree::leaf_for(const double* row) const {
  std::uint32_t id = 0;
  while (!nodes_[id].is_leaf()) {
    const auto& node = nodes_[id];
    const auto f = static_cast<std::size_t>(node.feature);
    const double v = row[f];
    std::size_t branch;
    if (numeric_[f]) {
      branch = v <= node.threshold ? 0 : 1;
    } else {
      branch = std::min(static_cast<std::size_t>(v), node.children.size() - 1);
    }
    id = node.children[branch];
  }
  while (nodes_[id].total <= 0 && nodes_[id].parent != TreeNode::kNone) id = nodes_[id].parent;
  return nodes_[id];
}

std::size_t Tree::leaf_count() const {
  // Pruned subtrees stay in the node array but are unreachable.
  std::size_t count = 0;
  std::vector<std::uint32_t> stack{0};
  while (!stack.empty()) {
    const auto id = stack.back();
    stack.pop_back();
    if (nodes_[id].is_leaf()) {
      ++count;
    } else {
      stack.insert(stack.end(), nodes_[id].children.begin(), nodes_[id].children.end());
    }
  }
  return count;
}

Tree grow_tree(const FeatureSpace& space, const std::vector<double>& rows, const std::vector<ClassIndex>& labels,
               std::size_t num_classes, std::span<const std::size_t> sample, std::span<const double> weights,
               const TreeOptions& options, SplitMix64* rng) {
  TreeGrower grower(space, rows, labels, num_classes, options, rng);
  return grower.run({sample.begin(), sample.end()}, {weights.begin(), weights.end()});
}

double pessimistic_extra_errors(double n, double e, double cf) {
  if (n <= 0) return 0.0;
  if (e < 1) {
    const double base = n * (1 - std::pow(cf, 1 / n));
    if (e == 0) return base;
    return base + e * (pessimistic_extra_errors(n, 1, cf) - base);
  }
  if (e + 0.5 >= n) return std::max(n - e, 0.0);
  const double z = boost::math::quantile(boost::math::normal(), 1 - cf);
  const double f = (e + 0.5) / n;
  const double r =
      (f + z * z / (2 * n) + z * std::sqrt(f / n - f * f / n + z * z / (4 * n * n))) / (1 + z * z / n);
  return r * n - e;
}

std::vector<double> forest_vote(std::span<const std::vector<double>> leaf_counts, std::span<const double> fallback) {
  std::vector<double> sum;
  for (const auto& counts : leaf_counts) {
    if (sum.empty()) sum.assign(counts.size(), 0.0);
    for (std::size_t c = 0; c < counts.size(); ++c) sum[c] += counts[c];
  }
  const double total = std::accumulate(sum.begin(), sum.end(), 0.0);
  if (!(total > 0)) return {fallback.begin(), fallback.end()};
  for (auto& s : sum) s /= total;
  return sum;
}

}  // namespace nicd::learners
