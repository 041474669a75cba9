#include "learners/builtin.hpp"

namespace nicd::learners {
namespace {

class MajorityModel final : public Model {
 public:
  MajorityModel(const LearnerSpec& spec, const TrainingData& td)
      : Model(spec, td.priors, td.data.num_features()) {}

 protected:
  std::vector<double> distribution_impl(const Instance&) const override { return priors(); }
};

}  // namespace

ModelPtr train_majority(const LearnerSpec& spec, const TrainingData& data, std::uint64_t) {
  return std::make_shared<MajorityModel>(spec, data);
}

}  // namespace nicd::learners
