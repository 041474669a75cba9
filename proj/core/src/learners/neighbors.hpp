#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "feature_space.hpp"

namespace nicd::learners {

struct Neighbor {
  double distance2;
  std::size_t index;
  friend bool operator<(const Neighbor& a, const Neighbor& b) {
    return a.distance2 < b.distance2 || (a.distance2 == b.distance2 && a.index < b.index);
  }
};

/// The k nearest rows to `query` by (distance, lower index), ascending.
/// `skip` excludes one row (leave-one-out); pass rows.size()/arity for none.
inline std::vector<Neighbor> nearest(const FeatureSpace& space, const std::vector<double>& rows,
                                     std::size_t num_rows, const double* query, std::size_t k,
                                     std::size_t skip = static_cast<std::size_t>(-1)) {
  const std::size_t arity = space.arity();
  std::vector<Neighbor> all;
  all.reserve(num_rows);
  for (std::size_t i = 0; i < num_rows; ++i) {
    if (i == skip) continue;
    all.push_back({space.squared_distance(rows.data() + i * arity, query), i});
  }
  k = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end());
  all.resize(k);
  return all;
}

}  // namespace nicd::learners
