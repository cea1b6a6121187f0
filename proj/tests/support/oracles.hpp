#pragma once

// Independent reference implementations. They share no code with the
// library and trade speed for obviousness.

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace para_test {

// Class key of a code by repeated halving: "T" terminal, "S" sentence,
// otherwise the 2-adic valuation.
struct CodeClass {
  char kind;         // 'T', 'S', 'V'
  unsigned valuation;
  friend auto operator<=>(const CodeClass&, const CodeClass&) = default;
};

inline CodeClass code_class(std::uint64_t m) {
  if (m <= 6) return {'T', 0};
  if (m % 2 == 1) return {'S', 0};
  unsigned v = 0;
  while (m % 2 == 0) {
    m /= 2;
    ++v;
  }
  return {'V', v};
}

// For each class, the codes 1..limit belonging to it in increasing order.
inline std::map<CodeClass, std::vector<std::uint64_t>> enumerate_classes(std::uint64_t limit) {
  std::map<CodeClass, std::vector<std::uint64_t>> out;
  for (std::uint64_t m = 1; m <= limit; ++m) out[code_class(m)].push_back(m);
  return out;
}

// All dot patterns in enumeration order up to `count` entries, as
// (side, pixel indices).
inline std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> enumerate_patterns(std::size_t count) {
  std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> out;
  for (std::uint32_t l = 2; out.size() < count; ++l) {
    const std::uint32_t n = l * l;
    for (std::uint32_t k = 1; k < n && out.size() < count; ++k) {
      std::vector<std::uint32_t> combo;
      std::function<void(std::uint32_t)> rec = [&](std::uint32_t from) {
        if (out.size() >= count) return;
        if (combo.size() == k) {
          out.emplace_back(l, combo);
          return;
        }
        for (std::uint32_t i = from; i < n; ++i) {
          combo.push_back(i);
          rec(i + 1);
          combo.pop_back();
        }
      };
      rec(0);
    }
  }
  return out;
}

}  // namespace para_test
