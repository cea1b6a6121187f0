#include <gtest/gtest.h>

#include <string>

#include "para/smnist.hpp"
#include "support/oracles.hpp"
#include "support/reference_values.hpp"

using namespace para;
using namespace para::smnist;

namespace {

std::string listing_line(std::uint64_t p) {
  const Pattern pat = pattern_of(p);
  std::string out = "n: " + std::to_string(pat.side() * pat.side()) + " k: " + std::to_string(pat.dots().size()) +
                    " p: " + std::to_string(p) + ", c:";
  for (std::size_t i = 0; i < pat.dots().size(); ++i) {
    const auto& d = pat.dots()[i];
    out += " " + std::to_string(i + 1) + ". (" + std::to_string(d.x) + "," + std::to_string(d.y) + ")";
  }
  return out;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> coords(const Pattern& p) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (const auto& d : p.dots()) out.emplace_back(d.x, d.y);
  return out;
}

}  // namespace

TEST(Listing, FirstFifteenCodes) {
  for (std::uint64_t p = 1; p <= 15; ++p) EXPECT_EQ(listing_line(p), para_test::kEnumerationListing[p - 1]);
}

TEST(Patterns, TableValues) {
  using C = std::vector<std::pair<std::uint32_t, std::uint32_t>>;
  EXPECT_EQ(coords(pattern_of(10)), (C{{0, 1}, {1, 1}}));
  EXPECT_EQ(pattern_of(10).side(), 2u);
  EXPECT_EQ(coords(pattern_of(14)), (C{{1, 0}, {0, 1}, {1, 1}}));
  EXPECT_EQ(coords(pattern_of(15)), (C{{0, 0}}));
  EXPECT_EQ(pattern_of(15).side(), 3u);
  EXPECT_EQ(coords(pattern_of(32)), (C{{1, 0}, {2, 0}}));
  EXPECT_EQ(coords(pattern_of(96)), (C{{1, 0}, {0, 1}, {0, 2}}));
  EXPECT_EQ(pattern_of(96).side(), 3u);
}

TEST(Blocks, Starts) {
  EXPECT_EQ(block_start(2, 1), 1);
  EXPECT_EQ(block_start(2, 2), 5);
  EXPECT_EQ(block_start(2, 3), 11);
  EXPECT_EQ(block_start(3, 1), 15);
  EXPECT_EQ(block_start(3, 3), 15 + 9 + 36);
  EXPECT_EQ(side_block_size(2), 14);
  EXPECT_EQ(side_block_size(3), 510);
}

TEST(Blocks, SideBoundary) {
  EXPECT_EQ(pattern_of(524).side(), 3u);
  EXPECT_EQ(pattern_of(524).dots().size(), 8u);
  EXPECT_EQ(pattern_of(525).side(), 4u);
  EXPECT_EQ(coords(pattern_of(525)), (std::vector<std::pair<std::uint32_t, std::uint32_t>>{{0, 0}}));
}

TEST(Blocks, SizeIsAllProperSubsets) {
  for (std::uint32_t l = 2; l <= 12; ++l) {
    const BigInt expected = (BigInt(1) << (l * l)) - 2;
    EXPECT_EQ(side_block_size(l), expected) << l;
  }
}

TEST(Enumeration, MatchesBruteForce) {
  const auto expected = para_test::enumerate_patterns(524);
  ASSERT_EQ(expected.size(), 524u);
  for (std::uint64_t p = 1; p <= 524; ++p) {
    const Pattern pat = pattern_of(p);
    ASSERT_EQ(pat.side(), expected[p - 1].first) << p;
    ASSERT_EQ(pat.indices(), expected[p - 1].second) << p;
  }
}

TEST(Enumeration, RoundTrip) {
  for (std::uint64_t p = 1; p <= 100000; ++p) ASSERT_EQ(code_of_pattern(pattern_of(p)), p);
}

TEST(Enumeration, RoundTripLargeCodes) {
  BigInt p = 1;
  for (int i = 0; i < 200; ++i) {
    p = p * 3 + 7;
    ASSERT_EQ(code_of_pattern(pattern_of(p)), p);
  }
}

TEST(Enumeration, LexicographicWithinBlocks) {
  for (std::uint64_t p = 1; p < 5000; ++p) {
    const Pattern a = pattern_of(p), b = pattern_of(p + 1);
    if (a.side() == b.side() && a.dots().size() == b.dots().size()) {
      ASSERT_LT(a.indices(), b.indices()) << p;
    } else {
      ASSERT_TRUE(b.side() > a.side() || b.dots().size() == a.dots().size() + 1) << p;
    }
  }
}

TEST(Combinations, BinomialAgreesWithSlowPath) {
  for (std::uint32_t n = 0; n <= 80; ++n)
    for (std::uint32_t k = 0; k <= n; ++k) ASSERT_EQ(binomial(n, k), detail::binomial_slow(n, k)) << n << " " << k;
  EXPECT_EQ(binomial(3, 5), 0);
}

TEST(Errors, Rejected) {
  EXPECT_THROW(pattern_of(0), Error);
  std::vector<Dot> all;
  for (std::uint32_t y = 0; y < 2; ++y)
    for (std::uint32_t x = 0; x < 2; ++x) all.push_back({x, y});
  EXPECT_THROW(Pattern(2, all), Error);
  EXPECT_THROW(Pattern(2, {}), Error);
  EXPECT_THROW(Pattern(2, {{2, 0}}), Error);
  EXPECT_THROW(Pattern(3, {{1, 1}, {1, 1}}), Error);
  EXPECT_THROW(Pattern(1, {{0, 0}}), Error);
  EXPECT_THROW(block_start(2, 4), Error);
}
