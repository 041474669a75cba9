#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace nicd {

/// SplitMix64 (Steele, Lea & Flood 2014). This is the single PRNG used by
/// every stochastic operation in the library. Integer draws use rejection
/// sampling on the raw 64-bit output, real draws use the top 53 bits, so
/// sequences are reproducible across compilers and platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Uniform real in [0, 1).
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller; no cached second value.
  double normal() noexcept;

  /// Fisher-Yates, walking from the back: swap(i, below(i + 1)).
  template <class T>
  void shuffle(std::vector<T>& items) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t state_;
};

/// Finalizer-quality mix of two 64-bit words.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept;

/// FNV-1a of a string; stable across platforms.
std::uint64_t hash_text(std::string_view text) noexcept;

/// Seed for a named sub-stream, e.g. derive_seed(master, run, "iris").
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index,
                                 std::string_view name) noexcept {
  return mix_seed(mix_seed(base, index), hash_text(name));
}

}  // namespace nicd
