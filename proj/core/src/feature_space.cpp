#include "feature_space.hpp"

#include <limits>

namespace nicd {

FeatureSpace::FeatureSpace(const Dataset& train, std::span<const double> weights) {
  const auto& features = train.features();
  const std::size_t n = features.size();
  kinds_.resize(n);
  slots_.assign(n, 0);
  min_.assign(n, std::numeric_limits<double>::infinity());
  max_.assign(n, -std::numeric_limits<double>::infinity());
  mean_.assign(n, 0.0);
  inv_range_.assign(n, 0.0);
  std::vector<double> mass(n, 0.0);
  for (std::size_t f = 0; f < n; ++f) {
    kinds_[f] = features[f].kind;
    if (!features[f].is_numeric()) slots_[f] = features[f].categories.size() + 1;
  }
  for (std::size_t i = 0; i < train.size(); ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    const auto& values = train[i].values;
    for (std::size_t f = 0; f < n; ++f) {
      const double v = values[f];
      if (!is_numeric(f) || is_missing(v)) continue;
      min_[f] = std::min(min_[f], v);
      max_[f] = std::max(max_[f], v);
      mean_[f] += w * v;
      mass[f] += w;
    }
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (!is_numeric(f)) continue;
    if (mass[f] > 0) {
      mean_[f] /= mass[f];
    } else {
      min_[f] = max_[f] = mean_[f] = 0.0;
    }
    const double range = max_[f] - min_[f];
    inv_range_[f] = range > 0 ? 1.0 / range : 0.0;
  }
}

void FeatureSpace::impute_into(std::span<const double> values, std::span<double> out) const {
  for (std::size_t f = 0; f < kinds_.size(); ++f) {
    const double v = values[f];
    if (!is_missing(v)) {
      out[f] = v;
    } else {
      out[f] = is_numeric(f) ? mean_[f] : static_cast<double>(slots_[f] - 1);
    }
  }
}

std::vector<double> FeatureSpace::impute(std::span<const double> values) const {
  std::vector<double> out(kinds_.size());
  impute_into(values, out);
  return out;
}

std::vector<double> FeatureSpace::impute_all(const Dataset& ds) const {
  const std::size_t n = kinds_.size();
  std::vector<double> out(ds.size() * n);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    impute_into(ds[i].values, std::span<double>(out.data() + i * n, n));
  }
  return out;
}

double FeatureSpace::squared_distance(const double* a, const double* b) const noexcept {
  double sum = 0.0;
  for (std::size_t f = 0; f < kinds_.size(); ++f) {
    if (kinds_[f] == FeatureKind::numeric) {
      const double d = (a[f] - b[f]) * inv_range_[f];
      sum += d * d;
    } else if (a[f] != b[f]) {
      sum += 1.0;
    }
  }
  return sum;
}

}  // namespace nicd
