#include "learners/builtin.hpp"
#include "learners/neighbors.hpp"

namespace nicd::learners {
namespace {

class KnnModel final : public Model {
 public:
  KnnModel(const LearnerSpec& spec, const TrainingData& td)
      : Model(spec, td.priors, td.data.num_features()),
        space_(td.data, td.weights),
        rows_(space_.impute_all(td.data)),
        labels_(td.data.labels()),
        weights_(td.weights),
        k_(static_cast<std::size_t>(spec.param("k"))) {}

 protected:
  // Weighted share of the k nearest neighbours per class; with uniform
  // weights this is the fraction of neighbours agreeing with each label.
  std::vector<double> distribution_impl(const Instance& x) const override {
    const auto query = space_.impute(x.values);
    const auto hood = nearest(space_, rows_, labels_.size(), query.data(), k_);
    std::vector<double> votes(num_classes(), 0.0);
    double total = 0.0;
    for (const auto& n : hood) {
      votes[labels_[n.index]] += weights_[n.index];
      total += weights_[n.index];
    }
    for (auto& v : votes) v /= total;
    return votes;
  }

 private:
  FeatureSpace space_;
  std::vector<double> rows_;
  std::vector<ClassIndex> labels_;
  std::vector<double> weights_;
  std::size_t k_;
};

}  // namespace

ModelPtr train_knn(const LearnerSpec& spec, const TrainingData& data, std::uint64_t) {
  return std::make_shared<KnnModel>(spec, data);
}

}  // namespace nicd::learners
