#pragma once

// SMNIST dot patterns. Positive integers are enumerated over grid sides
// l = 2, 3, ... ; inside a side over dot counts k = 1 .. l^2 - 1 ; inside a
// (l, k) block over the k-combinations of the l^2 pixel indices in
// lexicographic order. Pixel index i sits at (i mod l, i div l).

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "para/error.hpp"

namespace para::smnist {

using BigInt = boost::multiprecision::cpp_int;

struct Dot {
  std::uint32_t x = 0;
  std::uint32_t y = 0;

  friend constexpr auto operator<=>(const Dot&, const Dot&) = default;
};

// Dots are kept sorted by pixel index so that equal sets compare equal.
class Pattern {
 public:
  Pattern(std::uint32_t side, std::vector<Dot> dots) : side_(side), dots_(std::move(dots)) {
    if (side_ < 2) throw Error(Error::Kind::Range, "SMNIST grids have side >= 2");
    for (const auto& d : dots_) {
      if (d.x >= side_ || d.y >= side_) throw Error(Error::Kind::Range, "dot outside the grid");
    }
    std::sort(dots_.begin(), dots_.end(), [&](const Dot& a, const Dot& b) { return index(a) < index(b); });
    if (std::adjacent_find(dots_.begin(), dots_.end()) != dots_.end()) {
      throw Error(Error::Kind::Invalid, "duplicate dot");
    }
    if (dots_.empty() || dots_.size() >= static_cast<std::size_t>(side_) * side_) {
      throw Error(Error::Kind::Range, "a pattern has between 1 and side^2 - 1 dots");
    }
  }

  std::uint32_t side() const { return side_; }
  const std::vector<Dot>& dots() const { return dots_; }
  std::uint32_t index(const Dot& d) const { return d.y * side_ + d.x; }

  std::vector<std::uint32_t> indices() const {
    std::vector<std::uint32_t> out;
    out.reserve(dots_.size());
    for (const auto& d : dots_) out.push_back(index(d));
    return out;
  }

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  std::uint32_t side_;
  std::vector<Dot> dots_;
};

namespace detail {

inline BigInt binomial_slow(std::uint32_t n, std::uint32_t k) {
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::uint32_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

constexpr std::uint32_t kPascalRows = 145;  // covers grids up to 12x12

inline const std::vector<std::vector<BigInt>>& pascal() {
  static const std::vector<std::vector<BigInt>> rows = [] {
    std::vector<std::vector<BigInt>> t(kPascalRows);
    for (std::uint32_t n = 0; n < kPascalRows; ++n) {
      t[n].resize(n + 1);
      t[n][0] = t[n][n] = 1;
      for (std::uint32_t k = 1; k < n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
    }
    return t;
  }();
  return rows;
}

}  // namespace detail

inline BigInt binomial(std::uint32_t n, std::uint32_t k) {
  if (k > n) return 0;
  if (n < detail::kPascalRows) return detail::pascal()[n][k];
  return detail::binomial_slow(n, k);
}

// Number of codes with grid side l: every non-empty, non-full subset.
inline BigInt side_block_size(std::uint32_t l) {
  BigInt b = 1;
  b <<= l * l;
  return b - 2;
}

inline BigInt block_start(std::uint32_t l, std::uint32_t k) {
  if (l < 2) throw Error(Error::Kind::Range, "grid side must be >= 2");
  if (k < 1 || k >= l * l) throw Error(Error::Kind::Range, "dot count must be in 1 .. side^2 - 1");
  BigInt start = 1;
  for (std::uint32_t s = 2; s < l; ++s) start += side_block_size(s);
  for (std::uint32_t j = 1; j < k; ++j) start += binomial(l * l, j);
  return start;
}

// Lexicographic rank of a strictly increasing k-subset of {0..n-1}.
inline BigInt rank_combination(const std::vector<std::uint32_t>& combo, std::uint32_t n) {
  BigInt rank = 0;
  const auto k = static_cast<std::uint32_t>(combo.size());
  std::uint32_t prev = 0;
  for (std::uint32_t i = 0; i < k; ++i) {
    const std::uint32_t first = i == 0 ? 0 : prev + 1;
    for (std::uint32_t c = first; c < combo[i]; ++c) rank += binomial(n - c - 1, k - i - 1);
    prev = combo[i];
  }
  return rank;
}

inline std::vector<std::uint32_t> unrank_combination(BigInt rank, std::uint32_t n, std::uint32_t k) {
  std::vector<std::uint32_t> out;
  out.reserve(k);
  std::uint32_t c = 0;
  for (std::uint32_t i = 0; i < k; ++i) {
    for (;; ++c) {
      const BigInt count = binomial(n - c - 1, k - i - 1);
      if (rank < count) break;
      rank -= count;
    }
    out.push_back(c++);
  }
  return out;
}

inline Pattern pattern_of(const BigInt& p) {
  if (p < 1) throw Error(Error::Kind::Range, "SMNIST codes start at 1");
  BigInt start = 1;
  std::uint32_t l = 2;
  for (;; ++l) {
    const BigInt size = side_block_size(l);
    if (p < start + size) break;
    start += size;
  }
  const std::uint32_t n = l * l;
  std::uint32_t k = 1;
  for (;; ++k) {
    const BigInt size = binomial(n, k);
    if (p < start + size) break;
    start += size;
  }
  std::vector<Dot> dots;
  for (auto i : unrank_combination(p - start, n, k)) dots.push_back(Dot{i % l, i / l});
  return Pattern(l, std::move(dots));
}

inline Pattern pattern_of(std::uint64_t p) { return pattern_of(BigInt(p)); }

inline BigInt code_of_pattern(const Pattern& pat) {
  const auto idx = pat.indices();
  const std::uint32_t n = pat.side() * pat.side();
  return block_start(pat.side(), static_cast<std::uint32_t>(idx.size())) + rank_combination(idx, n);
}

}  // namespace para::smnist
