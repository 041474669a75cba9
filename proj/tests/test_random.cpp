#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "nicd/random.hpp"

using nicd::SplitMix64;

TEST(SplitMix64, MatchesReferenceSequence) {
  // Published reference outputs for seed 0.
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(rng.next(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(rng.next(), 0x06C45D188009454FULL);
}

TEST(SplitMix64, BelowStaysInRangeAndCoversIt) {
  SplitMix64 rng(42);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = rng.below(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(SplitMix64, UniformIsHalfOpen) {
  SplitMix64 rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(SplitMix64, NormalHasUnitMoments) {
  SplitMix64 rng(11);
  double sum = 0, sq = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.05);
  EXPECT_NEAR(sq / n, 1.0, 0.05);
}

TEST(SplitMix64, ShuffleIsAPermutationAndReproducible) {
  std::vector<int> a(50), b;
  std::iota(a.begin(), a.end(), 0);
  b = a;
  SplitMix64 r1(9), r2(9);
  r1.shuffle(a);
  r2.shuffle(b);
  EXPECT_EQ(a, b);
  auto sorted = a;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) EXPECT_EQ(sorted[i], i);
  EXPECT_NE(a, sorted);
}

TEST(Seeds, HashTextIsFnv1a) {
  EXPECT_EQ(nicd::hash_text(""), 0xCBF29CE484222325ULL);
  EXPECT_EQ(nicd::hash_text("a"), 0xAF63DC4C8601EC8CULL);
}

TEST(Seeds, DeriveSeedSeparatesStreams) {
  EXPECT_EQ(nicd::derive_seed(1, 2, "iris"), nicd::derive_seed(1, 2, "iris"));
  EXPECT_NE(nicd::derive_seed(1, 2, "iris"), nicd::derive_seed(1, 2, "wine"));
  EXPECT_NE(nicd::derive_seed(1, 2, "iris"), nicd::derive_seed(1, 3, "iris"));
  EXPECT_NE(nicd::derive_seed(1, 2, "iris"), nicd::derive_seed(2, 2, "iris"));
  EXPECT_NE(nicd::mix_seed(1, 2), nicd::mix_seed(2, 1));
}
