#pragma once

// Random vocabularies and formulas for the property tests.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "para/dictionary.hpp"
#include "para/fol.hpp"

namespace para_test {

struct VocabSpec {
  std::uint32_t sorts = 2;
  std::uint32_t predicates = 3;
  std::uint32_t max_arity = 2;
  std::uint32_t functions = 1;
  std::uint32_t constants = 2;       // in total, spread over the sorts
  std::uint32_t variables_per_sort = 3;
};

struct Vocab {
  para::SymbolDictionary dict;
  std::vector<std::uint32_t> pred_arity;  // index ordinal - 1
  std::vector<std::uint32_t> fn_arity;
  std::vector<para::Constant> constants;
  std::map<std::uint32_t, std::vector<para::Variable>> variables;
};

inline Vocab make_vocab(std::mt19937& rng, const VocabSpec& spec) {
  Vocab v;
  using para::Category;
  for (std::uint32_t s = 1; s <= spec.sorts; ++s) v.dict.add(Category::sort(), "S" + std::to_string(s));
  std::uniform_int_distribution<std::uint32_t> arity(0, spec.max_arity);
  for (std::uint32_t i = 1; i <= spec.predicates; ++i) {
    const auto a = arity(rng);
    v.dict.add(Category::predicate(), "P" + std::to_string(i), a);
    v.pred_arity.push_back(a);
  }
  std::uniform_int_distribution<std::uint32_t> fn_arity(1, 2);
  for (std::uint32_t i = 1; i <= spec.functions; ++i) {
    const auto a = fn_arity(rng);
    v.dict.add(Category::function(), "f" + std::to_string(i), a);
    v.fn_arity.push_back(a);
  }
  for (std::uint32_t i = 0; i < spec.constants; ++i) {
    const std::uint32_t s = 1 + i % spec.sorts;
    v.dict.add(Category::constant(s), "c" + std::to_string(i + 1));
    v.constants.push_back({s, static_cast<std::uint32_t>(v.dict.size(Category::constant(s)))});
  }
  for (std::uint32_t s = 1; s <= spec.sorts; ++s) {
    for (std::uint32_t i = 1; i <= spec.variables_per_sort; ++i) {
      v.dict.add(Category::variable(s), "v" + std::to_string(s) + "_" + std::to_string(i));
      v.variables[s].push_back({s, i});
    }
  }
  return v;
}

struct GenSpec {
  int max_depth = 4;
  bool iff = true;
  bool closed = true;
};

class FormulaGen {
 public:
  FormulaGen(std::mt19937& rng, const Vocab& vocab, GenSpec spec) : rng_(rng), vocab_(vocab), spec_(spec) {}

  para::Formula formula() {
    std::vector<para::Variable> scope;
    return formula(spec_.max_depth, scope);
  }

  para::Formula formula(int depth, std::vector<para::Variable>& scope) {
    const int pick = depth <= 0 ? 0 : roll(100);
    if (pick < 25) return atom(scope);
    if (pick < 40) return para::negation(formula(depth - 1, scope));
    if (pick < 75) {
      const int ops = spec_.iff ? 4 : 3;
      const auto op = static_cast<para::Connective>(roll(ops));
      auto l = formula(depth - 1, scope);
      auto r = formula(depth - 1, scope);
      return para::binary(op, std::move(l), std::move(r));
    }
    const auto& sorted = vocab_.variables.at(1 + static_cast<std::uint32_t>(roll(static_cast<int>(vocab_.variables.size()))));
    const auto var = sorted[static_cast<std::size_t>(roll(static_cast<int>(sorted.size())))];
    scope.push_back(var);
    auto body = formula(depth - 1, scope);
    scope.pop_back();
    return para::quantified(roll(2) ? para::Quantifier::Forall : para::Quantifier::Exists, var, std::move(body));
  }

  para::Term term(const std::vector<para::Variable>& scope, int depth = 1) {
    const int pick = roll(100);
    if (!scope.empty() && pick < 55) return scope[static_cast<std::size_t>(roll(static_cast<int>(scope.size())))];
    if (!spec_.closed && pick < 65) {
      const auto& vars = vocab_.variables.at(1);
      return vars[static_cast<std::size_t>(roll(static_cast<int>(vars.size())))];
    }
    if (depth > 0 && !vocab_.fn_arity.empty() && pick > 85) {
      const auto fn = static_cast<std::uint32_t>(roll(static_cast<int>(vocab_.fn_arity.size())));
      std::vector<para::Term> args;
      for (std::uint32_t i = 0; i < vocab_.fn_arity[fn]; ++i) args.push_back(term(scope, depth - 1));
      return para::fn(fn + 1, std::move(args));
    }
    return vocab_.constants[static_cast<std::size_t>(roll(static_cast<int>(vocab_.constants.size())))];
  }

 private:
  int roll(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  para::Formula atom(const std::vector<para::Variable>& scope) {
    const auto p = static_cast<std::uint32_t>(roll(static_cast<int>(vocab_.pred_arity.size())));
    std::vector<para::Term> args;
    for (std::uint32_t i = 0; i < vocab_.pred_arity[p]; ++i) args.push_back(term(scope));
    return para::atom(p + 1, std::move(args));
  }

  std::mt19937& rng_;
  const Vocab& vocab_;
  GenSpec spec_;
};

}  // namespace para_test
