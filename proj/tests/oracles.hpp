#pragma once

// Slow reference implementations used to check the library.

#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <utility>
#include <vector>

#include "nicd/diversity.hpp"
#include "nicd/random.hpp"

namespace nicd::oracle {

// Rescans every pair of live clusters each step, recomputing the linkage
// from the leaf-level matrix.
inline std::vector<Merge> brute_force_agglomerate(const std::vector<double>& d, std::size_t n, Linkage linkage) {
  struct Cluster {
    std::size_t id;
    std::vector<std::size_t> leaves;
  };
  std::vector<Cluster> live;
  for (std::size_t i = 0; i < n; ++i) live.push_back({i, {i}});
  auto distance = [&](const Cluster& a, const Cluster& b) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
    for (const auto i : a.leaves) {
      for (const auto j : b.leaves) {
        lo = std::min(lo, d[i * n + j]);
        hi = std::max(hi, d[i * n + j]);
        sum += d[i * n + j];
      }
    }
    if (linkage == Linkage::single) return lo;
    if (linkage == Linkage::complete) return hi;
    return sum / static_cast<double>(a.leaves.size() * b.leaves.size());
  };
  auto min_leaf = [](const Cluster& c) { return *std::min_element(c.leaves.begin(), c.leaves.end()); };

  std::vector<Merge> merges;
  for (std::size_t step = 0; step + 1 < n; ++step) {
    double best = std::numeric_limits<double>::infinity();
    std::pair<std::size_t, std::size_t> key{n, n}, pick{0, 0};
    for (std::size_t x = 0; x < live.size(); ++x) {
      for (std::size_t y = 0; y < live.size(); ++y) {
        if (x == y) continue;
        const auto kx = min_leaf(live[x]), ky = min_leaf(live[y]);
        if (kx > ky) continue;
        const double v = distance(live[x], live[y]);
        if (v < best || (v == best && std::make_pair(kx, ky) < key)) {
          best = v;
          key = {kx, ky};
          pick = {x, y};
        }
      }
    }
    auto a = live[pick.first], b = live[pick.second];
    merges.push_back({a.id, b.id, best, a.leaves.size() + b.leaves.size()});
    Cluster merged{n + step, a.leaves};
    merged.leaves.insert(merged.leaves.end(), b.leaves.begin(), b.leaves.end());
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(std::max(pick.first, pick.second)));
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(std::min(pick.first, pick.second)));
    live.push_back(merged);
  }
  return merges;
}

// Symmetric matrix with zero diagonal and entries on the 1/256 grid, so
// sums are exact and ties are common.
inline std::vector<double> dyadic_matrix(std::size_t n, SplitMix64& rng, std::uint64_t levels = 256) {
  std::vector<double> m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      m[i * n + j] = m[j * n + i] = static_cast<double>(1 + rng.below(levels - 1)) / 256.0;
    }
  }
  return m;
}

struct SignedRankTail {
  double p_greater;
  double p_less;
};

// Enumerates all 2^n sign assignments of the non-zero differences.
inline SignedRankTail signed_rank_enumeration(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> mag;
  std::vector<bool> pos;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (std::fabs(d) <= 1e-12) continue;
    mag.push_back(std::fabs(d));
    pos.push_back(d > 0);
  }
  const std::size_t n = mag.size();
  if (n == 0) return {1.0, 1.0};
  std::vector<double> rank(n);
  for (std::size_t i = 0; i < n; ++i) {
    double below = 0, equal = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::fabs(mag[j] - mag[i]) <= 1e-12) {
        ++equal;
      } else if (mag[j] < mag[i]) {
        ++below;
      }
    }
    rank[i] = below + (equal + 1) / 2;
  }
  double observed = 0;
  for (std::size_t i = 0; i < n; ++i) observed += pos[i] ? rank[i] : 0.0;
  std::uint64_t ge = 0, le = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double w = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) w += rank[i];
    }
    ge += w >= observed - 1e-9;
    le += w <= observed + 1e-9;
  }
  const double all = std::ldexp(1.0, static_cast<int>(n));
  return {static_cast<double>(ge) / all, static_cast<double>(le) / all};
}

}  // namespace nicd::oracle
