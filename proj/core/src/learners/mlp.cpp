#include <algorithm>
#include <cmath>
#include <numeric>

#include "feature_space.hpp"
#include "learners/builtin.hpp"
#include "nicd/random.hpp"

namespace nicd::learners {
namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// One hidden layer of sigmoid units trained by per-instance backpropagation
// with momentum. The output error term of instance i is scaled by its
// weight: w_i * (t - o) * f'(net).
class MlpModel final : public Model {
 public:
  MlpModel(const LearnerSpec& spec, const TrainingData& td, std::uint64_t seed)
      : Model(spec, td.priors, td.data.num_features()), space_(td.data, td.weights) {
    const auto& ds = td.data;
    inputs_ = 0;
    for (std::size_t f = 0; f < space_.arity(); ++f) inputs_ += space_.is_numeric(f) ? 1 : space_.category_slots(f);
    outputs_ = ds.num_classes();
    hidden_ = static_cast<std::size_t>(spec.param("hidden"));
    if (hidden_ == 0) hidden_ = std::max<std::size_t>(4, (inputs_ + outputs_) / 2);
    const auto epochs = static_cast<std::size_t>(spec.param("epochs"));
    const double lr = spec.param("lr");
    const double momentum = spec.param("momentum");

    SplitMix64 rng(seed);
    w1_.resize(hidden_ * (inputs_ + 1));
    w2_.resize(outputs_ * (hidden_ + 1));
    for (auto& w : w1_) w = rng.uniform(-0.5, 0.5);
    for (auto& w : w2_) w = rng.uniform(-0.5, 0.5);
    std::vector<double> m1(w1_.size(), 0.0), m2(w2_.size(), 0.0);

    const std::size_t n = ds.size();
    std::vector<double> encoded(n * inputs_);
    for (std::size_t i = 0; i < n; ++i) encode(ds[i].values, encoded.data() + i * inputs_);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> h(hidden_), o(outputs_), delta_o(outputs_), delta_h(hidden_);
    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
      rng.shuffle(order);
      for (const auto i : order) {
        const double* x = encoded.data() + i * inputs_;
        forward(x, h, o);
        const auto y = ds[i].label;
        const double wi = td.weights[i];
        for (std::size_t c = 0; c < outputs_; ++c) {
          const double t = c == y ? 1.0 : 0.0;
          delta_o[c] = wi * (t - o[c]) * o[c] * (1.0 - o[c]);
        }
        for (std::size_t j = 0; j < hidden_; ++j) {
          double back = 0.0;
          for (std::size_t c = 0; c < outputs_; ++c) back += delta_o[c] * w2_[c * (hidden_ + 1) + j];
          delta_h[j] = h[j] * (1.0 - h[j]) * back;
        }
        for (std::size_t c = 0; c < outputs_; ++c) {
          double* row = w2_.data() + c * (hidden_ + 1);
          double* mom = m2.data() + c * (hidden_ + 1);
          for (std::size_t j = 0; j <= hidden_; ++j) {
            const double input = j < hidden_ ? h[j] : 1.0;
            mom[j] = lr * delta_o[c] * input + momentum * mom[j];
            row[j] += mom[j];
          }
        }
        for (std::size_t j = 0; j < hidden_; ++j) {
          double* row = w1_.data() + j * (inputs_ + 1);
          double* mom = m1.data() + j * (inputs_ + 1);
          const double d = delta_h[j];
          for (std::size_t k = 0; k <= inputs_; ++k) {
            const double input = k < inputs_ ? x[k] : 1.0;
            mom[k] = lr * d * input + momentum * mom[k];
            row[k] += mom[k];
          }
        }
      }
    }
  }

 protected:
  std::vector<double> distribution_impl(const Instance& x) const override {
    std::vector<double> in(inputs_), h(hidden_), o(outputs_);
    encode(x.values, in.data());
    forward(in.data(), h, o);
    const double total = std::accumulate(o.begin(), o.end(), 0.0);
    if (!(total > 0)) return priors();
    for (auto& v : o) v /= total;
    return o;
  }

 private:
  void encode(std::span<const double> values, double* out) const {
    const auto row = space_.impute(values);
    std::size_t k = 0;
    for (std::size_t f = 0; f < space_.arity(); ++f) {
      if (space_.is_numeric(f)) {
        const double range = space_.max(f) - space_.min(f);
        out[k++] = range > 0 ? 2.0 * (row[f] - space_.min(f)) / range - 1.0 : 0.0;
      } else {
        const std::size_t slots = space_.category_slots(f);
        for (std::size_t s = 0; s < slots; ++s) out[k + s] = 0.0;
        out[k + static_cast<std::size_t>(row[f])] = 1.0;
        k += slots;
      }
    }
  }

  void forward(const double* x, std::vector<double>& h, std::vector<double>& o) const {
    for (std::size_t j = 0; j < hidden_; ++j) {
      const double* row = w1_.data() + j * (inputs_ + 1);
      double net = row[inputs_];
      for (std::size_t k = 0; k < inputs_; ++k) net += row[k] * x[k];
      h[j] = sigmoid(net);
    }
    for (std::size_t c = 0; c < outputs_; ++c) {
      const double* row = w2_.data() + c * (hidden_ + 1);
      double net = row[hidden_];
      for (std::size_t j = 0; j < hidden_; ++j) net += row[j] * h[j];
      o[c] = sigmoid(net);
    }
  }

  FeatureSpace space_;
  std::size_t inputs_ = 0, hidden_ = 0, outputs_ = 0;
  std::vector<double> w1_, w2_;  // row-major, bias in the last column
};

}  // namespace

ModelPtr train_mlp(const LearnerSpec& spec, const TrainingData& data, std::uint64_t seed) {
  return std::make_shared<MlpModel>(spec, data, seed);
}

}  // namespace nicd::learners
