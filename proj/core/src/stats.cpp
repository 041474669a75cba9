#include "nicd/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "nicd/error.hpp"

namespace nicd {

double accuracy(std::span<const ClassIndex> predictions, std::span<const ClassIndex> truth) {
  if (predictions.size() != truth.size()) throw ArgumentError("accuracy: length mismatch");
  if (truth.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += predictions[i] == truth[i];
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

std::optional<double> percent_reduction_in_error(double noise_acc, double orig_acc) {
  if (orig_acc >= 100.0) return std::nullopt;
  return (noise_acc - orig_acc) / (100.0 - orig_acc);
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::greater: return "greater";
    case Direction::less: return "less";
    default: return "none";
  }
}

namespace {

// Doubled average ranks of |d| (integers), ascending |d|, plus the tie
// correction term sum(t^3 - t).
struct Ranked {
  std::vector<std::uint32_t> doubled;
  std::vector<bool> positive;
  double tie_term = 0.0;
};

Ranked rank(std::vector<double> diffs) {
  std::sort(diffs.begin(), diffs.end(), [](double x, double y) { return std::fabs(x) < std::fabs(y); });
  Ranked r;
  const std::size_t n = diffs.size();
  r.doubled.resize(n);
  r.positive.resize(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && std::fabs(diffs[j]) - std::fabs(diffs[i]) <= 1e-12) ++j;
    // Ranks i+1..j averaged, doubled: (i+1+j).
    for (std::size_t k = i; k < j; ++k) {
      r.doubled[k] = static_cast<std::uint32_t>(i + 1 + j);
      r.positive[k] = diffs[k] > 0;
    }
    const auto t = static_cast<double>(j - i);
    r.tie_term += t * t * t - t;
    i = j;
  }
  return r;
}

}  // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b, WilcoxonMethod method) {
  if (a.size() != b.size()) throw ArgumentError("wilcoxon: samples have different lengths");
  std::vector<double> diffs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (std::fabs(d) > 1e-12) diffs.push_back(d);
  }
  WilcoxonResult res;
  res.n = diffs.size();
  if (res.n == 0) {
    res.method = method == WilcoxonMethod::normal ? WilcoxonMethod::normal : WilcoxonMethod::exact;
    return res;
  }
  const auto r = rank(std::move(diffs));
  std::uint64_t plus2 = 0, total2 = 0;
  for (std::size_t i = 0; i < res.n; ++i) {
    total2 += r.doubled[i];
    if (r.positive[i]) plus2 += r.doubled[i];
  }
  res.w_plus = static_cast<double>(plus2) / 2.0;
  res.w_minus = static_cast<double>(total2 - plus2) / 2.0;
  if (method == WilcoxonMethod::automatic) method = res.n < 25 ? WilcoxonMethod::exact : WilcoxonMethod::normal;
  res.method = method;

  if (method == WilcoxonMethod::exact) {
    if (res.n > 62) throw ArgumentError("wilcoxon: exact mode supports at most 62 non-zero pairs");
    // counts[s] = number of sign assignments whose doubled positive sum is s.
    std::vector<double> counts(total2 + 1, 0.0);
    counts[0] = 1.0;
    std::uint64_t reach = 0;
    for (const auto d : r.doubled) {
      reach += d;
      for (std::uint64_t s = reach; s >= d; --s) counts[s] += counts[s - d];
    }
    const double all = std::ldexp(1.0, static_cast<int>(res.n));
    double ge = 0.0, le = 0.0;
    for (std::uint64_t s = 0; s <= total2; ++s) {
      if (s >= plus2) ge += counts[s];
      if (s <= plus2) le += counts[s];
    }
    res.p_greater = ge / all;
    res.p_less = le / all;
  } else {
    const double n = static_cast<double>(res.n);
    const double mean = n * (n + 1) / 4.0;
    const double var = n * (n + 1) * (2 * n + 1) / 24.0 - r.tie_term / 48.0;
    const boost::math::normal_distribution<double> z;
    if (var <= 0) {
      res.p_greater = res.p_less = 1.0;
    } else {
      const double sd = std::sqrt(var);
      res.p_greater = std::min(1.0, boost::math::cdf(boost::math::complement(z, (res.w_plus - mean - 0.5) / sd)));
      res.p_less = std::min(1.0, boost::math::cdf(z, (res.w_plus - mean + 0.5) / sd));
    }
  }

  if (res.w_plus > res.w_minus) {
    res.direction = Direction::greater;
    res.one_sided_p = res.p_greater;
  } else if (res.w_plus < res.w_minus) {
    res.direction = Direction::less;
    res.one_sided_p = res.p_less;
  } else {
    res.one_sided_p = std::min(res.p_greater, res.p_less);
  }
  return res;
}

WinTieLoss win_tie_loss(std::span<const double> a, std::span<const double> b, double tol) {
  if (a.size() != b.size()) throw ArgumentError("win_tie_loss: samples have different lengths");
  WinTieLoss out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d > tol) {
      ++out.wins;
    } else if (d < -tol) {
      ++out.losses;
    } else {
      ++out.ties;
    }
  }
  return out;
}

}  // namespace nicd
