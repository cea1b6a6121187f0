#pragma once

// Text exports: Horn clauses for Prolog and theorem-statement skeletons in
// Lean 3 syntax. Neither output is executed here.

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "para/dictionary.hpp"
#include "para/error.hpp"
#include "para/fol.hpp"

namespace para {

namespace detail {

inline std::string sanitize_identifier(const std::string& name) {
  std::string out;
  for (char c : name) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
  return out.empty() ? std::string("_") : out;
}

inline const char* connective_name(Connective c) {
  switch (c) {
    case Connective::And: return "conjunction";
    case Connective::Or: return "disjunction";
    case Connective::Implies: return "implication";
    case Connective::Iff: return "biconditional";
  }
  return "connective";
}

// Injective renaming of dictionary names into a target namespace. Names are
// taken in a fixed order; a later symbol whose mangled form is taken gets a
// numeric suffix.
class Mangler {
 public:
  const std::string& get(const std::string& key) const { return names_.at(key); }

  void add(const std::string& key, std::string mangled) {
    if (names_.count(key)) return;
    std::string candidate = mangled;
    for (int n = 2; used_.count(candidate); ++n) candidate = mangled + "_" + std::to_string(n);
    used_.insert(candidate);
    names_.emplace(key, candidate);
    order_.push_back(key);
  }

  const std::vector<std::string>& order() const { return order_; }

 private:
  std::map<std::string, std::string> names_;
  std::set<std::string> used_;
  std::vector<std::string> order_;
};

inline std::string pred_key(std::uint32_t i) { return "P" + std::to_string(i); }
inline std::string fn_key(std::uint32_t i) { return "F" + std::to_string(i); }
inline std::string const_key(const Constant& c) { return "C" + std::to_string(c.sort) + "." + std::to_string(c.index); }
inline std::string var_key(const Variable& v) { return "V" + std::to_string(v.sort) + "." + std::to_string(v.index); }
inline std::string sort_key(std::uint32_t s) { return "S" + std::to_string(s); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Prolog

class PrologNames {
 public:
  explicit PrologNames(const SymbolDictionary& dict) : dict_(dict) {
    auto lower = [](std::string s) {
      s = detail::sanitize_identifier(s);
      if (!std::islower(static_cast<unsigned char>(s[0]))) {
        if (std::isupper(static_cast<unsigned char>(s[0]))) s[0] = static_cast<char>(std::tolower(s[0]));
        else s = "a" + s;
      }
      return s;
    };
    auto upper = [](std::string s) {
      s = detail::sanitize_identifier(s);
      if (std::islower(static_cast<unsigned char>(s[0]))) s[0] = static_cast<char>(std::toupper(s[0]));
      else if (!std::isupper(static_cast<unsigned char>(s[0]))) s = "V" + s;
      return s;
    };
    for (std::uint32_t i = 1; i <= dict.size(Category::predicate()); ++i)
      atoms_.add(detail::pred_key(i), lower(dict.name(Category::predicate(), i)));
    for (std::uint32_t i = 1; i <= dict.size(Category::function()); ++i)
      atoms_.add(detail::fn_key(i), lower(dict.name(Category::function(), i)));
    for (std::uint32_t s = 1; s <= dict.sort_count(); ++s) {
      for (std::uint32_t i = 1; i <= dict.size(Category::constant(s)); ++i)
        atoms_.add(detail::const_key({s, i}), lower(dict.name(Category::constant(s), i)));
      for (std::uint32_t i = 1; i <= dict.size(Category::variable(s)); ++i)
        vars_.add(detail::var_key({s, i}), upper(dict.name(Category::variable(s), i)));
    }
  }

  const std::string& predicate(std::uint32_t i) const { return atoms_.get(detail::pred_key(i)); }
  const std::string& function(std::uint32_t i) const { return atoms_.get(detail::fn_key(i)); }
  const std::string& constant(const Constant& c) const { return atoms_.get(detail::const_key(c)); }
  const std::string& variable(const Variable& v) const { return vars_.get(detail::var_key(v)); }

  // "Name -> mangled" for every symbol in the dictionary.
  std::vector<std::pair<std::string, std::string>> mapping() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (std::uint32_t i = 1; i <= dict_.size(Category::predicate()); ++i)
      out.emplace_back(dict_.name(Category::predicate(), i), predicate(i));
    for (std::uint32_t i = 1; i <= dict_.size(Category::function()); ++i)
      out.emplace_back(dict_.name(Category::function(), i), function(i));
    for (std::uint32_t s = 1; s <= dict_.sort_count(); ++s) {
      for (std::uint32_t i = 1; i <= dict_.size(Category::constant(s)); ++i)
        out.emplace_back(dict_.name(Category::constant(s), i), constant({s, i}));
      for (std::uint32_t i = 1; i <= dict_.size(Category::variable(s)); ++i)
        out.emplace_back(dict_.name(Category::variable(s), i), variable({s, i}));
    }
    return out;
  }

 private:
  const SymbolDictionary& dict_;
  detail::Mangler atoms_, vars_;
};

struct PrologOptions {
  bool header = true;
};

namespace detail {

class PrologWriter {
 public:
  PrologWriter(const SymbolDictionary& dict) : names_(dict) {}

  std::string clause(const Formula& sentence) {
    const Formula* f = &sentence;
    while (f->is<Quantified>()) {
      const auto& q = f->as<Quantified>();
      if (q.q == Quantifier::Exists) throw Error(Error::Kind::NotHorn, "existential quantifier has no Horn clause form");
      f = &q.body;
    }
    if (f->is<Atom>()) return atom(f->as<Atom>()) + ".";
    if (f->is<Binary>() && f->as<Binary>().op == Connective::Implies) {
      const auto& b = f->as<Binary>();
      if (!b.right.is<Atom>()) reject(b.right);
      std::vector<std::string> body;
      collect_body(b.left, body);
      std::string out = atom(b.right.as<Atom>()) + " :- ";
      for (std::size_t i = 0; i < body.size(); ++i) out += (i ? ", " : "") + body[i];
      return out + ".";
    }
    reject(*f);
  }

  const PrologNames& names() const { return names_; }

 private:
  [[noreturn]] static void reject(const Formula& f) {
    if (f.is<Not>()) throw Error(Error::Kind::NotHorn, "negation is not expressible as a Horn clause");
    if (f.is<Quantified>()) {
      throw Error(Error::Kind::NotHorn, f.as<Quantified>().q == Quantifier::Exists
                                            ? "existential quantifier has no Horn clause form"
                                            : "nested universal quantifier inside a clause");
    }
    if (f.is<Binary>()) {
      throw Error(Error::Kind::NotHorn,
                  std::string("offending ") + connective_name(f.as<Binary>().op) + " in Horn clause position");
    }
    throw Error(Error::Kind::NotHorn, "not a Horn clause");
  }

  void collect_body(const Formula& f, std::vector<std::string>& out) {
    if (f.is<Atom>()) {
      out.push_back(atom(f.as<Atom>()));
    } else if (f.is<Binary>() && f.as<Binary>().op == Connective::And) {
      collect_body(f.as<Binary>().left, out);
      collect_body(f.as<Binary>().right, out);
    } else {
      reject(f);
    }
  }

  std::string atom(const Atom& a) {
    std::string s = names_.predicate(a.pred);
    if (a.args.empty()) return s;
    return s + args(a.args);
  }

  std::string args(const std::vector<Term>& ts) {
    std::string s = "(";
    for (std::size_t i = 0; i < ts.size(); ++i) s += (i ? ", " : "") + term(ts[i]);
    return s + ")";
  }

  std::string term(const Term& t) {
    if (auto* v = std::get_if<Variable>(&t.node)) return names_.variable(*v);
    if (auto* c = std::get_if<Constant>(&t.node)) return names_.constant(*c);
    const auto& f = t.as<FunctionApp>();
    if (f.args.empty()) return names_.function(f.fn);
    return names_.function(f.fn) + args(f.args);
  }

  PrologNames names_;
};

}  // namespace detail

inline std::string to_prolog(const std::vector<Formula>& sentences, const SymbolDictionary& dict,
                             PrologOptions opts = {}) {
  detail::PrologWriter w(dict);
  std::string clauses;
  for (const auto& s : sentences) clauses += w.clause(s) + "\n";
  if (!opts.header) return clauses;
  std::string header = "% name mapping:";
  for (const auto& [from, to] : w.names().mapping()) header += " " + from + "->" + to;
  return header + "\n" + clauses;
}

// ---------------------------------------------------------------------------
// Lean

struct LeanOptions {
  std::string theorem_name = "Goal";
  std::string proof_placeholder = "sorry";
};

namespace detail {

class LeanWriter {
 public:
  explicit LeanWriter(const SymbolDictionary& dict) : dict_(dict) {
    auto clean = [](const std::string& s) { return sanitize_identifier(s); };
    auto lower = [&](const std::string& s) {
      std::string out = clean(s);
      out[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(out[0])));
      return out;
    };
    for (std::uint32_t s = 1; s <= dict.sort_count(); ++s) names_.add(sort_key(s), clean(dict.name(Category::sort(), s)));
    for (std::uint32_t i = 1; i <= dict.size(Category::predicate()); ++i)
      names_.add(pred_key(i), lower(dict.name(Category::predicate(), i)));
    for (std::uint32_t i = 1; i <= dict.size(Category::function()); ++i)
      names_.add(fn_key(i), lower(dict.name(Category::function(), i)));
    for (std::uint32_t s = 1; s <= dict.sort_count(); ++s) {
      for (std::uint32_t i = 1; i <= dict.size(Category::constant(s)); ++i)
        names_.add(const_key({s, i}), clean(dict.name(Category::constant(s), i)));
    }
    // Bound variables live in their own scope; they only need to avoid the
    // global names.
    for (std::uint32_t s = 1; s <= dict.sort_count(); ++s) {
      for (std::uint32_t i = 1; i <= dict.size(Category::variable(s)); ++i)
        names_.add(var_key({s, i}), clean(dict.name(Category::variable(s), i)));
    }
  }

  void scan(const Formula& f) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Atom>) {
            auto& sorts = pred_sorts_[n.pred];
            sorts.resize(n.args.size());
            for (std::size_t i = 0; i < n.args.size(); ++i) {
              scan(n.args[i]);
              if (!sorts[i]) sorts[i] = sort_of(n.args[i], &dict_);
            }
            preds_.insert(n.pred);
          } else if constexpr (std::is_same_v<T, Not>) {
            scan(n.operand);
          } else if constexpr (std::is_same_v<T, Binary>) {
            scan(n.left);
            scan(n.right);
          } else {
            sorts_used_.insert(n.var.sort);
            scan(n.body);
          }
        },
        f.node().v);
  }

  std::string write(const std::vector<Formula>& premises, const std::optional<Formula>& goal, const LeanOptions& opts) {
    for (const auto& p : premises) scan(p);
    if (goal) scan(*goal);

    auto fallback_sort = [&]() -> std::uint32_t {
      if (!sorts_used_.empty()) return *sorts_used_.begin();
      if (dict_.sort_count() > 0) return 1;
      throw Error(Error::Kind::UnknownSymbol, "cannot type predicate arguments without any registered sort");
    };
    for (auto& [p, sorts] : pred_sorts_) {
      for (auto& s : sorts) if (!s) s = fallback_sort();
      for (auto s : sorts) sorts_used_.insert(*s);
    }
    for (auto& [f, arity] : fns_) {
      for (std::uint32_t a = 0; a < arity; ++a) sorts_used_.insert(fallback_sort());
      sorts_used_.insert(result_sort(f, fallback_sort));
    }

    std::string out = "variables";
    for (auto s : sorts_used_) out += " (" + names_.get(sort_key(s)) + " : Type)";
    for (const auto& [f, arity] : fns_) {
      out += " (" + names_.get(fn_key(f)) + " :";
      for (std::uint32_t a = 0; a < arity; ++a) out += " " + names_.get(sort_key(fallback_sort())) + " →";
      out += " " + names_.get(sort_key(result_sort(f, fallback_sort))) + ")";
    }
    for (const auto& [p, sorts] : pred_sorts_) {
      out += " (" + names_.get(pred_key(p)) + " :";
      for (const auto& s : sorts) out += " " + names_.get(sort_key(*s)) + " →";
      out += " Prop)";
    }
    out += "\n\ntheorem " + opts.theorem_name;
    for (const auto& c : constants_) {
      out += " (" + names_.get(const_key(c)) + " : " + names_.get(sort_key(c.sort)) + ")";
    }
    for (std::size_t i = 0; i < premises.size(); ++i) {
      const std::string h = premises.size() == 1 ? "h" : "h" + std::to_string(i + 1);
      out += " (" + h + ": (" + formula(premises[i]) + "))";
    }
    out += " : " + (goal ? "(" + formula(*goal) + ")" : std::string("false")) + " :=\n";
    out += opts.proof_placeholder + "\n";
    return out;
  }

 private:
  std::uint32_t result_sort(std::uint32_t f, const auto& fallback) const {
    if (auto rs = dict_.symbol(Category::function(), f).result_sort) return *rs;
    return fallback();
  }

  void scan(const Term& t) {
    if (auto* c = std::get_if<Constant>(&t.node)) {
      if (std::find(constants_.begin(), constants_.end(), *c) == constants_.end()) constants_.push_back(*c);
      sorts_used_.insert(c->sort);
    } else if (auto* v = std::get_if<Variable>(&t.node)) {
      sorts_used_.insert(v->sort);
    } else {
      const auto& f = t.as<FunctionApp>();
      fns_.emplace(f.fn, static_cast<std::uint32_t>(f.args.size()));
      for (const auto& a : f.args) scan(a);
    }
  }

  static int lean_precedence(Connective c) {
    switch (c) {
      case Connective::And: return 35;
      case Connective::Or: return 30;
      case Connective::Implies: return 25;
      case Connective::Iff: return 20;
    }
    return 0;
  }
  static const char* lean_op(Connective c) {
    switch (c) {
      case Connective::And: return "∧";
      case Connective::Or: return "∨";
      case Connective::Implies: return "→";
      case Connective::Iff: return "↔";
    }
    return "?";
  }

  std::string operand(const Formula& f, Connective parent, bool is_left) {
    std::string s = formula(f);
    if (f.is<Quantified>()) return "(" + s + ")";
    if (f.is<Binary>()) {
      const int pc = lean_precedence(parent), cc = lean_precedence(f.as<Binary>().op);
      const bool same_ok = parent != Connective::Iff && !is_left;
      if (cc < pc || (cc == pc && !same_ok)) return "(" + s + ")";
    }
    return s;
  }

  std::string formula(const Formula& f) {
    return std::visit(
        [&](const auto& n) -> std::string {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Atom>) {
            std::string s = names_.get(pred_key(n.pred));
            for (const auto& a : n.args) s += " " + term(a);
            return s;
          } else if constexpr (std::is_same_v<T, Not>) {
            const bool simple = n.operand.template is<Atom>() || n.operand.template is<Not>();
            return "¬ " + (simple ? formula(n.operand) : "(" + formula(n.operand) + ")");
          } else if constexpr (std::is_same_v<T, Binary>) {
            return operand(n.left, n.op, true) + " " + lean_op(n.op) + " " + operand(n.right, n.op, false);
          } else {
            return std::string(n.q == Quantifier::Forall ? "∀ " : "∃ ") + names_.get(var_key(n.var)) + " : " +
                   names_.get(sort_key(n.var.sort)) + ", " + formula(n.body);
          }
        },
        f.node().v);
  }

  std::string term(const Term& t) {
    if (auto* v = std::get_if<Variable>(&t.node)) return names_.get(var_key(*v));
    if (auto* c = std::get_if<Constant>(&t.node)) return names_.get(const_key(*c));
    const auto& f = t.as<FunctionApp>();
    if (f.args.empty()) return names_.get(fn_key(f.fn));
    std::string s = "(" + names_.get(fn_key(f.fn));
    for (const auto& a : f.args) s += " " + term(a);
    return s + ")";
  }

  const SymbolDictionary& dict_;
  Mangler names_;
  std::map<std::uint32_t, std::vector<std::optional<std::uint32_t>>> pred_sorts_;
  std::set<std::uint32_t> preds_;
  std::map<std::uint32_t, std::uint32_t> fns_;
  std::vector<Constant> constants_;
  std::set<std::uint32_t> sorts_used_;
};

}  // namespace detail

// Theorem statement with the premises as hypotheses; no goal means the
// target is `false` (a refutation).
inline std::string to_lean_skeleton(const std::vector<Formula>& premises, const std::optional<Formula>& goal,
                                    const SymbolDictionary& dict, const LeanOptions& opts = {}) {
  return detail::LeanWriter(dict).write(premises, goal, opts);
}

}  // namespace para
