#pragma once

// Symbol tables and the 2-adic numeration that maps every symbol class onto
// its own residue class of the positive integers:
//
//   1..6               terminals  (exists forall not and or implies)
//   odd >= 7           formalized sentences
//   2-adic valuation 1 predicates   {10, 14, 18, ...}
//   2-adic valuation 2 functions    {12, 20, 28, ...}
//   2-adic valuation 3 sorts        {8, 24, 40, ...}
//   valuation 2n+2     constants of sort n
//   valuation 2n+3     variables of sort n

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "para/error.hpp"

namespace para {

using Code = std::uint64_t;

enum class Terminal : std::uint8_t { Exists = 1, Forall = 2, Not = 3, And = 4, Or = 5, Implies = 6 };

enum class CategoryKind : std::uint8_t { Terminal, SentenceText, Predicate, Function, Sort, Constant, Variable };

struct Category {
  CategoryKind kind = CategoryKind::Predicate;
  // Terminal code for Terminal, sort index for Constant/Variable, unused otherwise.
  std::uint32_t type = 0;

  static constexpr Category terminal(Terminal t) { return {CategoryKind::Terminal, static_cast<std::uint32_t>(t)}; }
  static constexpr Category sentence() { return {CategoryKind::SentenceText, 0}; }
  static constexpr Category predicate() { return {CategoryKind::Predicate, 0}; }
  static constexpr Category function() { return {CategoryKind::Function, 0}; }
  static constexpr Category sort() { return {CategoryKind::Sort, 0}; }
  static constexpr Category constant(std::uint32_t sort) { return {CategoryKind::Constant, sort}; }
  static constexpr Category variable(std::uint32_t sort) { return {CategoryKind::Variable, sort}; }

  friend constexpr bool operator==(const Category&, const Category&) = default;
};

struct Classified {
  Category category;
  std::uint64_t ordinal = 0;

  friend constexpr bool operator==(const Classified&, const Classified&) = default;
};

inline Classified classify_code(Code m) {
  if (m == 0) throw Error(Error::Kind::Range, "PaRa code 0 is not used");
  if (m <= 6) return {Category::terminal(static_cast<Terminal>(m)), m};
  if (m % 2 == 1) return {Category::sentence(), (m - 1) / 2 - 2};
  const int v = std::countr_zero(m);
  const std::uint64_t odd = m >> v;
  switch (v) {
    case 1: return {Category::predicate(), (m - 10) / 4 + 1};
    case 2: return {Category::function(), (m - 12) / 8 + 1};
    case 3: return {Category::sort(), (odd - 1) / 2 + 1};
    default: break;
  }
  const std::uint64_t ordinal = (odd - 1) / 2 + 1;
  if (v % 2 == 0) return {Category::constant(static_cast<std::uint32_t>((v - 2) / 2)), ordinal};
  return {Category::variable(static_cast<std::uint32_t>((v - 3) / 2)), ordinal};
}

namespace detail {

// 2^shift * odd, or a Range error when it does not fit into 64 bits.
inline Code shifted_odd(unsigned shift, std::uint64_t odd) {
  if (shift >= 64 || std::bit_width(odd) + shift > 64) {
    throw Error(Error::Kind::Range, "PaRa code exceeds the 64-bit range");
  }
  return odd << shift;
}

}  // namespace detail

inline Code code_for(Category cat, std::uint64_t ordinal) {
  if (ordinal == 0) throw Error(Error::Kind::Range, "ordinals start at 1");
  const std::uint64_t odd = 2 * ordinal - 1;
  switch (cat.kind) {
    case CategoryKind::Terminal:
      throw Error(Error::Kind::Invalid, "terminal symbols have fixed codes");
    case CategoryKind::SentenceText: return 2 * ordinal + 5;
    case CategoryKind::Predicate: return 10 + 4 * (ordinal - 1);
    case CategoryKind::Function: return 12 + 8 * (ordinal - 1);
    case CategoryKind::Sort: return detail::shifted_odd(3, odd);
    case CategoryKind::Constant:
    case CategoryKind::Variable:
      if (cat.type == 0) throw Error(Error::Kind::Range, "sort indices start at 1");
      return detail::shifted_odd(2 * cat.type + (cat.kind == CategoryKind::Constant ? 2 : 3), odd);
  }
  throw Error(Error::Kind::Invalid, "unknown category");
}

inline Code code_of(Terminal t) { return static_cast<Code>(t); }

// Name registry for one PaRa implementation. Ordinals inside a category are
// contiguous from 1 and never change once assigned; arity is fixed at
// registration. The class is a plain value: owners that share it across
// threads serialize mutation themselves.
class SymbolDictionary {
 public:
  static constexpr int kFormatVersion = 1;

  struct Symbol {
    std::string name;
    std::uint32_t arity = 0;
    // Result sort of a function, known for Skolem functions only.
    std::optional<std::uint32_t> result_sort;

    friend bool operator==(const Symbol&, const Symbol&) = default;
  };

  Code add(Category cat, std::string name, std::optional<std::uint32_t> arity = std::nullopt,
           std::optional<std::uint32_t> result_sort = std::nullopt) {
    const bool takes_arity = cat.kind == CategoryKind::Predicate || cat.kind == CategoryKind::Function;
    if (cat.kind == CategoryKind::Terminal || cat.kind == CategoryKind::SentenceText) {
      throw Error(Error::Kind::Invalid, "cannot register names for this category");
    }
    if (arity && !takes_arity) throw Error(Error::Kind::Invalid, "arity is only meaningful for predicates and functions");
    if (result_sort && cat.kind != CategoryKind::Function) {
      throw Error(Error::Kind::Invalid, "result sorts are only meaningful for functions");
    }
    if (name.empty()) throw Error(Error::Kind::Invalid, "symbol names must be non-empty");
    if ((cat.kind == CategoryKind::Constant || cat.kind == CategoryKind::Variable) &&
        (cat.type == 0 || cat.type > sorts_.size())) {
      throw Error(Error::Kind::UnknownSymbol, "sort " + std::to_string(cat.type) + " is not registered");
    }
    if (find(cat, name)) throw Error(Error::Kind::Duplicate, "'" + name + "' is already registered");

    auto& table = table_for(cat);
    const std::uint64_t ordinal = table.size() + 1;
    const Code code = code_for(cat, ordinal);
    table.push_back(Symbol{std::move(name), arity.value_or(0), result_sort});
    index_for(cat).emplace(table.back().name, static_cast<std::uint32_t>(ordinal));
    return code;
  }

  std::optional<std::uint32_t> find(Category cat, std::string_view name) const {
    const auto* idx = lookup_index(cat);
    if (!idx) return std::nullopt;
    auto it = idx->find(std::string(name));
    if (it == idx->end()) return std::nullopt;
    return it->second;
  }

  bool contains(Category cat, std::uint64_t ordinal) const {
    const auto* t = lookup_table(cat);
    return t && ordinal >= 1 && ordinal <= t->size();
  }

  const Symbol& symbol(Category cat, std::uint64_t ordinal) const {
    const auto* t = lookup_table(cat);
    if (!t || ordinal == 0 || ordinal > t->size()) {
      throw Error(Error::Kind::UnknownSymbol, "no symbol with ordinal " + std::to_string(ordinal) + " in category");
    }
    return (*t)[ordinal - 1];
  }

  const std::string& name(Category cat, std::uint64_t ordinal) const { return symbol(cat, ordinal).name; }

  std::size_t size(Category cat) const {
    const auto* t = lookup_table(cat);
    return t ? t->size() : 0;
  }

  std::size_t sort_count() const { return sorts_.size(); }

  bool empty() const {
    if (!sorts_.empty() || !predicates_.empty() || !functions_.empty()) return false;
    for (const auto& [s, t] : constants_) if (!t.empty()) return false;
    for (const auto& [s, t] : variables_) if (!t.empty()) return false;
    return true;
  }

  friend bool operator==(const SymbolDictionary& a, const SymbolDictionary& b) {
    auto nonempty = [](const std::map<std::uint32_t, std::vector<Symbol>>& m) {
      std::map<std::uint32_t, std::vector<Symbol>> out;
      for (const auto& [k, v] : m) if (!v.empty()) out.emplace(k, v);
      return out;
    };
    return a.sorts_ == b.sorts_ && a.predicates_ == b.predicates_ && a.functions_ == b.functions_ &&
           nonempty(a.constants_) == nonempty(b.constants_) && nonempty(a.variables_) == nonempty(b.variables_);
  }

  nlohmann::json to_json() const {
    using nlohmann::json;
    json doc;
    doc["version"] = kFormatVersion;
    doc["sorts"] = json::array();
    for (const auto& s : sorts_) doc["sorts"].push_back(s.name);
    doc["predicates"] = json::array();
    for (const auto& p : predicates_) doc["predicates"].push_back({{"name", p.name}, {"arity", p.arity}});
    doc["functions"] = json::array();
    for (const auto& f : functions_) {
      json e = {{"name", f.name}, {"arity", f.arity}};
      if (f.result_sort) e["sort"] = sorts_.at(*f.result_sort - 1).name;
      doc["functions"].push_back(std::move(e));
    }
    auto typed = [&](const std::map<std::uint32_t, std::vector<Symbol>>& m) {
      json arr = json::array();
      for (const auto& [sort, table] : m) {
        for (const auto& sym : table) arr.push_back({{"name", sym.name}, {"sort", sorts_.at(sort - 1).name}});
      }
      return arr;
    };
    doc["constants"] = typed(constants_);
    doc["variables"] = typed(variables_);
    return doc;
  }

  static SymbolDictionary from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw Error(Error::Kind::Format, "dictionary document must be a JSON object");
    if (!doc.contains("version") || !doc["version"].is_number_integer()) {
      throw Error(Error::Kind::Format, "dictionary document lacks an integer 'version'");
    }
    if (doc["version"].get<int>() != kFormatVersion) {
      throw Error(Error::Kind::Version, "unsupported dictionary version " + doc["version"].dump());
    }
    SymbolDictionary d;
    try {
      for (const auto& s : doc.value("sorts", nlohmann::json::array())) d.add(Category::sort(), s.get<std::string>());
      auto sort_of = [&](const nlohmann::json& e) {
        auto ord = d.find(Category::sort(), e.at("sort").get<std::string>());
        if (!ord) throw Error(Error::Kind::UnknownSymbol, "unknown sort " + e.at("sort").dump());
        return *ord;
      };
      for (const auto& p : doc.value("predicates", nlohmann::json::array())) {
        d.add(Category::predicate(), p.at("name").get<std::string>(), p.at("arity").get<std::uint32_t>());
      }
      for (const auto& f : doc.value("functions", nlohmann::json::array())) {
        std::optional<std::uint32_t> rs;
        if (f.contains("sort")) rs = sort_of(f);
        d.add(Category::function(), f.at("name").get<std::string>(), f.at("arity").get<std::uint32_t>(), rs);
      }
      for (const auto& c : doc.value("constants", nlohmann::json::array())) {
        d.add(Category::constant(sort_of(c)), c.at("name").get<std::string>());
      }
      for (const auto& v : doc.value("variables", nlohmann::json::array())) {
        d.add(Category::variable(sort_of(v)), v.at("name").get<std::string>());
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(Error::Kind::Format, std::string("malformed dictionary document: ") + e.what());
    }
    return d;
  }

 private:
  using Table = std::vector<Symbol>;
  using Index = std::unordered_map<std::string, std::uint32_t>;

  Table& table_for(Category cat) {
    switch (cat.kind) {
      case CategoryKind::Predicate: return predicates_;
      case CategoryKind::Function: return functions_;
      case CategoryKind::Sort: return sorts_;
      case CategoryKind::Constant: return constants_[cat.type];
      case CategoryKind::Variable: return variables_[cat.type];
      default: throw Error(Error::Kind::Invalid, "category has no table");
    }
  }
  Index& index_for(Category cat) {
    switch (cat.kind) {
      case CategoryKind::Predicate: return predicate_index_;
      case CategoryKind::Function: return function_index_;
      case CategoryKind::Sort: return sort_index_;
      case CategoryKind::Constant: return constant_index_[cat.type];
      case CategoryKind::Variable: return variable_index_[cat.type];
      default: throw Error(Error::Kind::Invalid, "category has no table");
    }
  }
  const Table* lookup_table(Category cat) const {
    switch (cat.kind) {
      case CategoryKind::Predicate: return &predicates_;
      case CategoryKind::Function: return &functions_;
      case CategoryKind::Sort: return &sorts_;
      case CategoryKind::Constant: { auto it = constants_.find(cat.type); return it == constants_.end() ? nullptr : &it->second; }
      case CategoryKind::Variable: { auto it = variables_.find(cat.type); return it == variables_.end() ? nullptr : &it->second; }
      default: return nullptr;
    }
  }
  const Index* lookup_index(Category cat) const {
    switch (cat.kind) {
      case CategoryKind::Predicate: return &predicate_index_;
      case CategoryKind::Function: return &function_index_;
      case CategoryKind::Sort: return &sort_index_;
      case CategoryKind::Constant: { auto it = constant_index_.find(cat.type); return it == constant_index_.end() ? nullptr : &it->second; }
      case CategoryKind::Variable: { auto it = variable_index_.find(cat.type); return it == variable_index_.end() ? nullptr : &it->second; }
      default: return nullptr;
    }
  }

  Table sorts_, predicates_, functions_;
  std::map<std::uint32_t, Table> constants_, variables_;
  Index sort_index_, predicate_index_, function_index_;
  std::map<std::uint32_t, Index> constant_index_, variable_index_;
};

inline nlohmann::json export_dict(const SymbolDictionary& d) { return d.to_json(); }
inline SymbolDictionary import_dict(const nlohmann::json& doc) { return SymbolDictionary::from_json(doc); }

}  // namespace para
