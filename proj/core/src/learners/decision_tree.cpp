#include <numeric>

#include "learners/builtin.hpp"
#include "learners/tree_builder.hpp"

namespace nicd::learners {
namespace {

// C4.5-style tree: gain-ratio splits, binary numeric thresholds, multiway
// categorical splits, pessimistic-error subtree replacement. The score of
// (x, y) is the weight of class y in x's leaf over the leaf's total weight.
class DecisionTreeModel final : public Model {
 public:
  DecisionTreeModel(const LearnerSpec& spec, const TrainingData& td)
      : Model(spec, td.priors, td.data.num_features()), space_(td.data, td.weights) {
    const auto rows = space_.impute_all(td.data);
    std::vector<std::size_t> sample(td.data.size());
    std::iota(sample.begin(), sample.end(), std::size_t{0});
    TreeOptions opt;
    opt.confidence = spec.param("cf");
    opt.min_leaf = spec.param("minleaf");
    tree_ = grow_tree(space_, rows, td.data.labels(), td.data.num_classes(), sample, td.weights, opt);
  }

  const Tree& tree() const noexcept { return tree_; }

 protected:
  std::vector<double> distribution_impl(const Instance& x) const override {
    const auto row = space_.impute(x.values);
    const auto& leaf = tree_.leaf_for(row.data());
    std::vector<double> dist = leaf.class_weight;
    for (auto& d : dist) d /= leaf.total;
    return dist;
  }

 private:
  FeatureSpace space_;
  Tree tree_;
};

}  // namespace

ModelPtr train_decision_tree(const LearnerSpec& spec, const TrainingData& data, std::uint64_t) {
  return std::make_shared<DecisionTreeModel>(spec, data);
}

}  // namespace nicd::learners
