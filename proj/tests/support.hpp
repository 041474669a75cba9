#pragma once

#include <string>
#include <vector>

#include "nicd/dataset.hpp"
#include "nicd/dataset_io.hpp"
#include "nicd/random.hpp"

namespace nicd::fixtures {

inline std::string data_path(const std::string& file) { return std::string(NICD_DATA_DIR) + "/" + file; }
inline std::string config_path(const std::string& file) { return std::string(NICD_CONFIG_DIR) + "/" + file; }

inline Dataset load(const std::string& file) { return load_dataset(data_path(file)); }

// Numeric table from rows; the label of row i is labels[i].
inline Dataset numeric(const std::string& name, const std::vector<std::vector<double>>& rows,
                       const std::vector<ClassIndex>& labels, std::size_t num_classes = 2) {
  std::vector<FeatureDescriptor> features;
  for (std::size_t f = 0; f < rows.front().size(); ++f) features.push_back(FeatureDescriptor::numeric("x" + std::to_string(f)));
  std::vector<std::string> classes;
  for (std::size_t c = 0; c < num_classes; ++c) classes.push_back("c" + std::to_string(c));
  std::vector<Instance> instances;
  for (std::size_t i = 0; i < rows.size(); ++i) instances.push_back({rows[i], labels[i]});
  return Dataset(name, features, classes, instances);
}

// Two Gaussian blobs centred at -gap and +gap on both axes, alternating labels.
inline Dataset blobs(std::size_t n, double gap, std::uint64_t seed, const std::string& name = "blobs") {
  SplitMix64 rng(seed);
  std::vector<std::vector<double>> rows;
  std::vector<ClassIndex> labels;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = i % 2 ? gap : -gap;
    rows.push_back({c + rng.normal(), c + rng.normal()});
    labels.push_back(i % 2);
  }
  return numeric(name, rows, labels);
}

// Random mixed-type table with `k` classes; labels are random, so learners
// disagree a lot.
inline Dataset random_table(std::size_t n, std::size_t k, std::uint64_t seed, const std::string& name = "random") {
  SplitMix64 rng(seed);
  std::vector<FeatureDescriptor> features{FeatureDescriptor::numeric("a"), FeatureDescriptor::numeric("b"),
                                          FeatureDescriptor::categorical("c", {"p", "q", "r"})};
  std::vector<std::string> classes;
  for (std::size_t c = 0; c < k; ++c) classes.push_back("k" + std::to_string(c));
  std::vector<Instance> rows;
  for (std::size_t i = 0; i < n; ++i) {
    const auto label = static_cast<ClassIndex>(i % k);
    const double a = rng.normal() + static_cast<double>(label);
    const double b = rng.uniform(-1, 1);
    const double c = static_cast<double>(rng.below(3));
    rows.push_back({{a, b, c}, label});
  }
  return Dataset(name, features, classes, rows);
}

}  // namespace nicd::fixtures

#include <memory>

#include "nicd/learner.hpp"

namespace nicd::fixtures {

// Predicts the class given by its `label` parameter, whatever the input.
class ConstantModel final : public Model {
 public:
  ConstantModel(const LearnerSpec& s, std::vector<double> priors, std::size_t features, ClassIndex c)
      : Model(s, std::move(priors), features), c_(c) {}

 protected:
  std::vector<double> distribution_impl(const Instance&) const override {
    std::vector<double> d(num_classes(), 0.0);
    d[c_] = 1.0;
    return d;
  }

 private:
  ClassIndex c_;
};

// Registers kind `always`; param `label` is the class number counted from 1.
inline void register_constant_learner() {
  register_learner({"always", {}, {{"label", 1}}, [](const LearnerSpec& s, const TrainingData& td, std::uint64_t) {
                      return std::make_shared<ConstantModel>(s, td.priors, td.data.num_features(),
                                                             static_cast<ClassIndex>(s.param("label") - 1));
                    }});
}

}  // namespace nicd::fixtures
