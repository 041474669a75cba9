#include <cmath>
#include <limits>
#include <numbers>

#include "feature_space.hpp"
#include "learners/builtin.hpp"

namespace nicd::learners {
namespace {

// Gaussian likelihoods for numerics, Laplace-smoothed frequencies for
// categoricals; all counts are weight sums.
class NaiveBayesModel final : public Model {
 public:
  NaiveBayesModel(const LearnerSpec& spec, const TrainingData& td)
      : Model(spec, td.priors, td.data.num_features()), space_(td.data, td.weights) {
    const auto& ds = td.data;
    const std::size_t nc = ds.num_classes();
    const std::size_t nf = ds.num_features();
    const auto rows = space_.impute_all(ds);

    std::vector<double> class_mass(nc, 0.0);
    mean_.assign(nc * nf, 0.0);
    sd_.assign(nc * nf, 0.0);
    freq_.resize(nc * nf);
    for (std::size_t f = 0; f < nf; ++f) {
      if (!space_.is_numeric(f)) {
        for (std::size_t c = 0; c < nc; ++c) freq_[c * nf + f].assign(space_.category_slots(f), 0.0);
      }
    }
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const auto c = ds[i].label;
      const double w = td.weights[i];
      class_mass[c] += w;
      for (std::size_t f = 0; f < nf; ++f) {
        const double v = rows[i * nf + f];
        if (space_.is_numeric(f)) {
          mean_[c * nf + f] += w * v;
        } else {
          freq_[c * nf + f][static_cast<std::size_t>(v)] += w;
        }
      }
    }
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t f = 0; f < nf; ++f) {
        if (space_.is_numeric(f) && class_mass[c] > 0) mean_[c * nf + f] /= class_mass[c];
      }
    }
    std::vector<double> global_mean(nf, 0.0), global_var(nf, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const auto c = ds[i].label;
      const double w = td.weights[i];
      total += w;
      for (std::size_t f = 0; f < nf; ++f) {
        if (!space_.is_numeric(f)) continue;
        const double v = rows[i * nf + f];
        const double d = v - mean_[c * nf + f];
        sd_[c * nf + f] += w * d * d;
        global_mean[f] += w * v;
      }
    }
    for (std::size_t f = 0; f < nf; ++f) global_mean[f] /= total;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      for (std::size_t f = 0; f < nf; ++f) {
        if (!space_.is_numeric(f)) continue;
        const double d = rows[i * nf + f] - global_mean[f];
        global_var[f] += td.weights[i] * d * d;
      }
    }
    for (std::size_t f = 0; f < nf; ++f) {
      if (!space_.is_numeric(f)) continue;
      const double floor = std::max(1e-9, 1e-2 * std::sqrt(global_var[f] / total));
      for (std::size_t c = 0; c < nc; ++c) {
        const double var = class_mass[c] > 0 ? sd_[c * nf + f] / class_mass[c] : 0.0;
        sd_[c * nf + f] = std::max(std::sqrt(var), floor);
      }
    }
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t f = 0; f < nf; ++f) {
        if (space_.is_numeric(f)) continue;
        auto& counts = freq_[c * nf + f];
        const double denom = class_mass[c] + static_cast<double>(counts.size());
        for (auto& v : counts) v = std::log((v + 1.0) / denom);
      }
    }
  }

 protected:
  std::vector<double> distribution_impl(const Instance& x) const override {
    const auto v = space_.impute(x.values);
    const std::size_t nc = num_classes();
    const std::size_t nf = num_features();
    std::vector<double> logp(nc, -std::numeric_limits<double>::infinity());
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < nc; ++c) {
      if (priors()[c] <= 0) continue;
      double lp = std::log(priors()[c]);
      for (std::size_t f = 0; f < nf; ++f) {
        if (space_.is_numeric(f)) {
          const double sd = sd_[c * nf + f];
          const double z = (v[f] - mean_[c * nf + f]) / sd;
          lp += -0.5 * z * z - std::log(sd) - 0.5 * std::log(2.0 * std::numbers::pi);
        } else {
          lp += freq_[c * nf + f][static_cast<std::size_t>(v[f])];
        }
      }
      logp[c] = lp;
      best = std::max(best, lp);
    }
    double norm = 0.0;
    for (auto& lp : logp) {
      lp = std::isinf(lp) ? 0.0 : std::exp(lp - best);
      norm += lp;
    }
    for (auto& p : logp) p /= norm;
    return logp;
  }

 private:
  FeatureSpace space_;
  std::vector<double> mean_, sd_;
  std::vector<std::vector<double>> freq_;  // log P(value | class), [class * nf + feature]
};

}  // namespace

ModelPtr train_naive_bayes(const LearnerSpec& spec, const TrainingData& data, std::uint64_t) {
  return std::make_shared<NaiveBayesModel>(spec, data);
}

}  // namespace nicd::learners
