#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "nicd/dataset.hpp"

namespace nicd {

/// Fraction of positions where the labels match. Throws ArgumentError on a
/// length mismatch; 0 for empty input.
double accuracy(std::span<const ClassIndex> predictions, std::span<const ClassIndex> truth);

/// (noise - orig) / (100 - orig) for accuracies in percent. Positive means
/// the handled run made fewer errors. Absent when orig is 100.
std::optional<double> percent_reduction_in_error(double noise_acc, double orig_acc);

enum class WilcoxonMethod {
  automatic,  ///< exact below 25 non-zero pairs, normal otherwise
  exact,
  normal,
};

enum class Direction { none, greater, less };
std::string_view to_string(Direction d);

struct WilcoxonResult {
  std::size_t n = 0;      ///< pairs with a non-zero difference
  double w_plus = 0.0;    ///< rank sum of a > b
  double w_minus = 0.0;   ///< rank sum of a < b
  double p_greater = 1.0; ///< P(W+ >= observed) under the null: evidence a > b
  double p_less = 1.0;    ///< P(W+ <= observed): evidence a < b
  Direction direction = Direction::none;
  double one_sided_p = 1.0;  ///< p on the side of `direction`
  WilcoxonMethod method = WilcoxonMethod::exact;

  /// min(W+, W-).
  double statistic() const noexcept { return w_plus < w_minus ? w_plus : w_minus; }
};

/// Paired signed-rank test. Differences within 1e-12 of zero are dropped
/// and tied absolute differences share their average rank. The exact null
/// distribution is enumerated over doubled (integer) ranks; the normal
/// approximation uses the tie-corrected variance and a 0.5 continuity
/// correction. If every difference is zero, both p-values are 1.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                    WilcoxonMethod method = WilcoxonMethod::automatic);

struct WinTieLoss {
  std::size_t wins = 0;
  std::size_t ties = 0;
  std::size_t losses = 0;
  friend bool operator==(const WinTieLoss&, const WinTieLoss&) = default;
};

/// Counts a[i] > b[i] + tol, |a[i] - b[i]| <= tol and a[i] < b[i] - tol.
WinTieLoss win_tie_loss(std::span<const double> a, std::span<const double> b, double tol = 1e-9);

}  // namespace nicd
