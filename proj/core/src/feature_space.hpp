#pragma once

#include <span>
#include <vector>

#include "nicd/dataset.hpp"

namespace nicd {

/// Training-set statistics shared by the distance- and encoding-based
/// learners. Missing numerics are imputed with the weighted training mean;
/// a missing categorical becomes an extra category (index = #categories).
class FeatureSpace {
 public:
  FeatureSpace(const Dataset& train, std::span<const double> weights);

  std::size_t arity() const noexcept { return kinds_.size(); }
  bool is_numeric(std::size_t f) const noexcept { return kinds_[f] == FeatureKind::numeric; }
  /// Categories including the trailing missing slot.
  std::size_t category_slots(std::size_t f) const noexcept { return slots_[f]; }
  double min(std::size_t f) const noexcept { return min_[f]; }
  double max(std::size_t f) const noexcept { return max_[f]; }
  double mean(std::size_t f) const noexcept { return mean_[f]; }

  void impute_into(std::span<const double> values, std::span<double> out) const;
  std::vector<double> impute(std::span<const double> values) const;
  /// Imputed rows, row-major.
  std::vector<double> impute_all(const Dataset& ds) const;

  /// HEOM: range-normalised difference on numerics, 0/1 overlap on categoricals.
  double squared_distance(const double* a, const double* b) const noexcept;

 private:
  std::vector<FeatureKind> kinds_;
  std::vector<std::size_t> slots_;
  std::vector<double> min_, max_, mean_, inv_range_;
};

}  // namespace nicd
