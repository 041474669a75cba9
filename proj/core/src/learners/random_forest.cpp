#include <algorithm>
#include <cmath>
#include <numeric>

#include "learners/builtin.hpp"
#include "learners/tree_builder.hpp"

namespace nicd::learners {
namespace {

class RandomForestModel final : public Model {
 public:
  RandomForestModel(const LearnerSpec& spec, const TrainingData& td, std::uint64_t seed)
      : Model(spec, td.priors, td.data.num_features()), space_(td.data, td.weights) {
    const auto& ds = td.data;
    const auto rows = space_.impute_all(ds);
    const auto labels = ds.labels();
    const std::size_t n = ds.size();
    const auto trees = static_cast<std::size_t>(spec.param("trees"));
    auto mtry = static_cast<std::size_t>(spec.param("mtry"));
    if (mtry == 0) mtry = static_cast<std::size_t>(std::log2(static_cast<double>(ds.num_features())) + 1);
    mtry = std::clamp<std::size_t>(mtry, 1, std::max<std::size_t>(ds.num_features(), 1));

    TreeOptions opt;
    opt.criterion = TreeOptions::Criterion::info_gain;
    opt.min_leaf = 1.0;
    opt.prune = false;
    opt.features_per_split = mtry;

    // Bootstrap draws follow the normalised instance weights.
    std::vector<double> cumulative(n);
    std::partial_sum(td.weights.begin(), td.weights.end(), cumulative.begin());
    const double mass = cumulative.back();

    forest_.reserve(trees);
    std::vector<double> multiplicity(n);
    for (std::size_t t = 0; t < trees; ++t) {
      SplitMix64 rng(mix_seed(seed, t));
      std::fill(multiplicity.begin(), multiplicity.end(), 0.0);
      for (std::size_t draw = 0; draw < n; ++draw) {
        const double u = rng.uniform() * mass;
        auto idx = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
        multiplicity[std::min(idx, n - 1)] += 1.0;
      }
      std::vector<std::size_t> sample;
      std::vector<double> counts;
      for (std::size_t i = 0; i < n; ++i) {
        if (multiplicity[i] > 0) {
          sample.push_back(i);
          counts.push_back(multiplicity[i]);
        }
      }
      forest_.push_back(grow_tree(space_, rows, labels, ds.num_classes(), sample, counts, opt, &rng));
    }
  }

 protected:
  // Leaf class counts summed over the trees, then normalised.
  std::vector<double> distribution_impl(const Instance& x) const override {
    const auto row = space_.impute(x.values);
    std::vector<std::vector<double>> leaves;
    leaves.reserve(forest_.size());
    for (const auto& tree : forest_) leaves.push_back(tree.leaf_for(row.data()).class_weight);
    return forest_vote(leaves, priors());
  }

 private:
  FeatureSpace space_;
  std::vector<Tree> forest_;
};

}  // namespace

ModelPtr train_random_forest(const LearnerSpec& spec, const TrainingData& data, std::uint64_t seed) {
  return std::make_shared<RandomForestModel>(spec, data, seed);
}

}  // namespace nicd::learners
