#include <cmath>

#include "learners/builtin.hpp"
#include "learners/neighbors.hpp"

namespace nicd::learners {
namespace {

// Locally weighted majority vote: the k nearest neighbours vote with a
// linear kernel weight 1 - d / bandwidth, bandwidth = distance of the k-th
// neighbour (slightly inflated so it still gets a small vote).
class LwlModel final : public Model {
 public:
  LwlModel(const LearnerSpec& spec, const TrainingData& td)
      : Model(spec, td.priors, td.data.num_features()),
        space_(td.data, td.weights),
        rows_(space_.impute_all(td.data)),
        labels_(td.data.labels()),
        weights_(td.weights),
        k_(static_cast<std::size_t>(spec.param("k"))) {}

 protected:
  std::vector<double> distribution_impl(const Instance& x) const override {
    const auto query = space_.impute(x.values);
    const auto hood = nearest(space_, rows_, labels_.size(), query.data(), k_);
    const double bandwidth = std::sqrt(hood.back().distance2) * (1.0 + 1e-3);
    std::vector<double> votes(num_classes(), 0.0);
    double total = 0.0;
    for (const auto& n : hood) {
      const double kernel = bandwidth > 0 ? 1.0 - std::sqrt(n.distance2) / bandwidth : 1.0;
      const double mass = kernel * weights_[n.index];
      votes[labels_[n.index]] += mass;
      total += mass;
    }
    if (!(total > 0)) return priors();
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

ModelPtr train_lwl(const LearnerSpec& spec, const TrainingData& data, std::uint64_t) {
  return std::make_shared<LwlModel>(spec, data);
}

}  // namespace nicd::learners
