#pragma once

// Sorted first-order syntax: terms, formulas and the structural operations on
// them. Formulas are immutable and share subtrees.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "para/dictionary.hpp"
#include "para/error.hpp"

namespace para {

struct Variable {
  std::uint32_t sort = 1;
  std::uint32_t index = 1;  // ordinal among the variable names of `sort`

  friend constexpr auto operator<=>(const Variable&, const Variable&) = default;
};

struct Constant {
  std::uint32_t sort = 1;
  std::uint32_t index = 1;

  friend constexpr auto operator<=>(const Constant&, const Constant&) = default;
};

struct Term;

struct FunctionApp {
  std::uint32_t fn = 1;
  std::vector<Term> args;

  friend bool operator==(const FunctionApp&, const FunctionApp&);
};

struct Term {
  std::variant<Variable, Constant, FunctionApp> node;

  Term(Variable v) : node(v) {}                  // NOLINT(google-explicit-constructor)
  Term(Constant c) : node(c) {}                  // NOLINT(google-explicit-constructor)
  Term(FunctionApp f) : node(std::move(f)) {}    // NOLINT(google-explicit-constructor)

  template <typename T> bool is() const { return std::holds_alternative<T>(node); }
  template <typename T> const T& as() const { return std::get<T>(node); }

  friend bool operator==(const Term& a, const Term& b) { return a.node == b.node; }
};

inline bool operator==(const FunctionApp& a, const FunctionApp& b) { return a.fn == b.fn && a.args == b.args; }

inline Term fn(std::uint32_t index, std::vector<Term> args) { return FunctionApp{index, std::move(args)}; }

// Total order on terms, used for canonical sorting in the prover.
inline int compare(const Term& a, const Term& b) {
  if (a.node.index() != b.node.index()) return a.node.index() < b.node.index() ? -1 : 1;
  if (auto* v = std::get_if<Variable>(&a.node)) {
    auto c = *v <=> b.as<Variable>();
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  if (auto* k = std::get_if<Constant>(&a.node)) {
    auto c = *k <=> b.as<Constant>();
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  const auto& fa = a.as<FunctionApp>();
  const auto& fb = b.as<FunctionApp>();
  if (fa.fn != fb.fn) return fa.fn < fb.fn ? -1 : 1;
  if (fa.args.size() != fb.args.size()) return fa.args.size() < fb.args.size() ? -1 : 1;
  for (std::size_t i = 0; i < fa.args.size(); ++i) {
    if (int c = compare(fa.args[i], fb.args[i]); c != 0) return c;
  }
  return 0;
}

enum class Connective : std::uint8_t { And, Or, Implies, Iff };
enum class Quantifier : std::uint8_t { Exists, Forall };

struct FormulaNode;

class Formula {
 public:
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}

  template <typename T> bool is() const;
  template <typename T> const T& as() const;
  const FormulaNode& node() const { return *node_; }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  std::shared_ptr<const FormulaNode> node_;
};

struct Atom {
  std::uint32_t pred = 1;
  std::vector<Term> args;
};
struct Not {
  Formula operand;
};
struct Binary {
  Connective op;
  Formula left;
  Formula right;
};
struct Quantified {
  Quantifier q;
  Variable var;
  Formula body;
};

struct FormulaNode {
  std::variant<Atom, Not, Binary, Quantified> v;
};

template <typename T> bool Formula::is() const { return std::holds_alternative<T>(node_->v); }
template <typename T> const T& Formula::as() const { return std::get<T>(node_->v); }

inline bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = a.node_->v;
  const auto& y = b.node_->v;
  if (x.index() != y.index()) return false;
  return std::visit(
      [&](const auto& l) -> bool {
        using T = std::decay_t<decltype(l)>;
        const auto& r = std::get<T>(y);
        if constexpr (std::is_same_v<T, Atom>) return l.pred == r.pred && l.args == r.args;
        else if constexpr (std::is_same_v<T, Not>) return l.operand == r.operand;
        else if constexpr (std::is_same_v<T, Binary>) return l.op == r.op && l.left == r.left && l.right == r.right;
        else return l.q == r.q && l.var == r.var && l.body == r.body;
      },
      x);
}

inline Formula atom(std::uint32_t pred, std::vector<Term> args = {}) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{Atom{pred, std::move(args)}}));
}
inline Formula negation(Formula f) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{Not{std::move(f)}}));
}
inline Formula binary(Connective op, Formula l, Formula r) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{Binary{op, std::move(l), std::move(r)}}));
}
inline Formula conj(Formula l, Formula r) { return binary(Connective::And, std::move(l), std::move(r)); }
inline Formula disj(Formula l, Formula r) { return binary(Connective::Or, std::move(l), std::move(r)); }
inline Formula implies(Formula l, Formula r) { return binary(Connective::Implies, std::move(l), std::move(r)); }
inline Formula iff(Formula l, Formula r) { return binary(Connective::Iff, std::move(l), std::move(r)); }
inline Formula quantified(Quantifier q, Variable v, Formula body) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{Quantified{q, v, std::move(body)}}));
}
inline Formula forall(Variable v, Formula body) { return quantified(Quantifier::Forall, v, std::move(body)); }
inline Formula exists(Variable v, Formula body) { return quantified(Quantifier::Exists, v, std::move(body)); }

inline int precedence(Connective c) {
  switch (c) {
    case Connective::And: return 4;
    case Connective::Or: return 3;
    case Connective::Implies: return 2;
    case Connective::Iff: return 1;
  }
  return 0;
}
inline bool right_associative(Connective c) { return c == Connective::Implies || c == Connective::Iff; }

// Whether `child` needs parentheses as the left/right operand of `parent`.
inline bool needs_parens(Connective parent, const Formula& child, bool is_left) {
  if (!child.is<Binary>()) return false;
  const int pc = precedence(parent);
  const int cc = precedence(child.as<Binary>().op);
  if (cc != pc) return cc < pc;
  return right_associative(parent) ? is_left : !is_left;
}

// ---------------------------------------------------------------------------
// Structural queries

namespace detail {

inline void term_vars(const Term& t, std::set<Variable>& out) {
  if (auto* v = std::get_if<Variable>(&t.node)) out.insert(*v);
  else if (auto* f = std::get_if<FunctionApp>(&t.node)) for (const auto& a : f->args) term_vars(a, out);
}

inline void free_vars_into(const Formula& f, std::set<Variable>& bound, std::set<Variable>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Atom>) {
          std::set<Variable> vs;
          for (const auto& a : n.args) term_vars(a, vs);
          for (const auto& v : vs) if (!bound.count(v)) out.insert(v);
        } else if constexpr (std::is_same_v<T, Not>) {
          free_vars_into(n.operand, bound, out);
        } else if constexpr (std::is_same_v<T, Binary>) {
          free_vars_into(n.left, bound, out);
          free_vars_into(n.right, bound, out);
        } else {
          const bool fresh = bound.insert(n.var).second;
          free_vars_into(n.body, bound, out);
          if (fresh) bound.erase(n.var);
        }
      },
      f.node().v);
}

inline void all_vars_into(const Formula& f, std::set<Variable>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Atom>) {
          for (const auto& a : n.args) term_vars(a, out);
        } else if constexpr (std::is_same_v<T, Not>) {
          all_vars_into(n.operand, out);
        } else if constexpr (std::is_same_v<T, Binary>) {
          all_vars_into(n.left, out);
          all_vars_into(n.right, out);
        } else {
          out.insert(n.var);
          all_vars_into(n.body, out);
        }
      },
      f.node().v);
}

}  // namespace detail

inline std::set<Variable> term_vars(const Term& t) {
  std::set<Variable> out;
  detail::term_vars(t, out);
  return out;
}

inline std::set<Variable> free_vars(const Formula& f) {
  std::set<Variable> bound, out;
  detail::free_vars_into(f, bound, out);
  return out;
}

// Every variable occurring in f, bound or free.
inline std::set<Variable> all_vars(const Formula& f) {
  std::set<Variable> out;
  detail::all_vars_into(f, out);
  return out;
}

inline bool contains_iff(const Formula& f) {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Atom>) return false;
        else if constexpr (std::is_same_v<T, Not>) return contains_iff(n.operand);
        else if constexpr (std::is_same_v<T, Binary>)
          return n.op == Connective::Iff || contains_iff(n.left) || contains_iff(n.right);
        else return contains_iff(n.body);
      },
      f.node().v);
}

inline Formula expand_iff(const Formula& f) {
  return std::visit(
      [&](const auto& n) -> Formula {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Atom>) {
          return f;
        } else if constexpr (std::is_same_v<T, Not>) {
          return negation(expand_iff(n.operand));
        } else if constexpr (std::is_same_v<T, Binary>) {
          Formula l = expand_iff(n.left);
          Formula r = expand_iff(n.right);
          if (n.op == Connective::Iff) return conj(implies(l, r), implies(r, l));
          return binary(n.op, std::move(l), std::move(r));
        } else {
          return quantified(n.q, n.var, expand_iff(n.body));
        }
      },
      f.node().v);
}

// Sort of a term when it is determined by the syntax (variables, constants,
// Skolem functions registered with a result sort).
inline std::optional<std::uint32_t> sort_of(const Term& t, const SymbolDictionary* dict = nullptr) {
  if (auto* v = std::get_if<Variable>(&t.node)) return v->sort;
  if (auto* c = std::get_if<Constant>(&t.node)) return c->sort;
  if (dict) {
    const auto& f = t.as<FunctionApp>();
    if (dict->contains(Category::function(), f.fn)) return dict->symbol(Category::function(), f.fn).result_sort;
  }
  return std::nullopt;
}

inline Term substitute(const Term& t, const Variable& var, const Term& by) {
  if (auto* v = std::get_if<Variable>(&t.node)) return *v == var ? by : t;
  if (auto* f = std::get_if<FunctionApp>(&t.node)) {
    FunctionApp out{f->fn, {}};
    out.args.reserve(f->args.size());
    for (const auto& a : f->args) out.args.push_back(substitute(a, var, by));
    return out;
  }
  return t;
}

namespace detail {

inline Variable fresh_variable(std::uint32_t sort, const std::set<Variable>& avoid, SymbolDictionary* dict,
                               const std::string& base) {
  if (dict) {
    std::string name = base;
    for (int n = 1;; ++n) {
      name = base + std::to_string(n);
      if (!dict->find(Category::variable(sort), name)) break;
    }
    dict->add(Category::variable(sort), name);
    return Variable{sort, static_cast<std::uint32_t>(dict->size(Category::variable(sort)))};
  }
  std::uint32_t idx = 0;
  for (const auto& v : avoid) if (v.sort == sort) idx = std::max(idx, v.index);
  return Variable{sort, idx + 1};
}

inline Formula substitute_impl(const Formula& f, const Variable& var, const Term& by,
                               const std::set<Variable>& by_vars, SymbolDictionary* dict) {
  return std::visit(
      [&](const auto& n) -> Formula {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Atom>) {
          std::vector<Term> args;
          args.reserve(n.args.size());
          for (const auto& a : n.args) args.push_back(substitute(a, var, by));
          return atom(n.pred, std::move(args));
        } else if constexpr (std::is_same_v<T, Not>) {
          return negation(substitute_impl(n.operand, var, by, by_vars, dict));
        } else if constexpr (std::is_same_v<T, Binary>) {
          return binary(n.op, substitute_impl(n.left, var, by, by_vars, dict),
                        substitute_impl(n.right, var, by, by_vars, dict));
        } else {
          if (n.var == var) return f;
          if (!free_vars(n.body).count(var)) return f;
          if (!by_vars.count(n.var)) {
            return quantified(n.q, n.var, substitute_impl(n.body, var, by, by_vars, dict));
          }
          // The binder would capture a variable of `by`: rename it first.
          std::set<Variable> avoid = all_vars(n.body);
          avoid.insert(by_vars.begin(), by_vars.end());
          avoid.insert(var);
          std::string base = "v";
          if (dict && dict->contains(Category::variable(n.var.sort), n.var.index)) {
            base = dict->name(Category::variable(n.var.sort), n.var.index);
          }
          const Variable renamed = fresh_variable(n.var.sort, avoid, dict, base);
          Formula body = substitute_impl(n.body, n.var, Term(renamed), {renamed}, dict);
          return quantified(n.q, renamed, substitute_impl(body, var, by, by_vars, dict));
        }
      },
      f.node().v);
}

}  // namespace detail

// Capture-avoiding substitution of `by` for the free occurrences of `var`.
// Bound variables that would capture are renamed; when `dict` is given the
// fresh names are registered there, otherwise the next unused index of the
// sort is taken.
inline Formula substitute(const Formula& f, const Variable& var, const Term& by, SymbolDictionary* dict = nullptr) {
  if (auto s = sort_of(by, dict); s && *s != var.sort) {
    throw Error(Error::Kind::Sort, "substituted term has sort " + std::to_string(*s) + ", variable has sort " +
                                       std::to_string(var.sort));
  }
  return detail::substitute_impl(f, var, by, term_vars(by), dict);
}

// ---------------------------------------------------------------------------
// Index notations: "P.1(1.1)" style, with decimal numbers or tally marks.

struct NotationStyle {
  bool unicode = true;
};

namespace detail {

struct IndexPrinter {
  std::function<std::string(std::uint64_t)> number;
  NotationStyle style;
  bool tally = false;

  std::string forall() const { return style.unicode ? "∀" : "A"; }
  std::string exists() const { return style.unicode ? "∃" : "E"; }
  std::string neg() const { return style.unicode ? "¬" : "~"; }
  std::string op(Connective c) const {
    if (style.unicode) {
      switch (c) {
        case Connective::And: return "∧";
        case Connective::Or: return "∨";
        case Connective::Implies: return "⊃";
        case Connective::Iff: return "≡";
      }
    }
    switch (c) {
      case Connective::And: return "&";
      case Connective::Or: return tally ? "v" : "|";
      case Connective::Implies: return "->";
      case Connective::Iff: return "<->";
    }
    return "?";
  }

  std::string term(const Term& t) const {
    if (auto* v = std::get_if<Variable>(&t.node)) return number(v->sort) + "." + number(v->index);
    if (auto* c = std::get_if<Constant>(&t.node)) return "(C." + number(c->sort) + "." + number(c->index) + ")";
    const auto& f = t.as<FunctionApp>();
    return "(F." + number(f.fn) + args(f.args) + ")";
  }

  std::string args(const std::vector<Term>& ts) const {
    if (ts.empty()) return "";
    std::string s = "(";
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (i) s += ",";
      s += term(ts[i]);
    }
    return s + ")";
  }

  std::string formula(const Formula& f) const {
    return std::visit(
        [&](const auto& n) -> std::string {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Atom>) {
            return "(P." + number(n.pred) + args(n.args) + ")";
          } else if constexpr (std::is_same_v<T, Not>) {
            return neg() + grouped(n.operand);
          } else if constexpr (std::is_same_v<T, Binary>) {
            std::string l = formula(n.left);
            std::string r = formula(n.right);
            if (needs_parens(n.op, n.left, true)) l = "(" + l + ")";
            if (needs_parens(n.op, n.right, false)) r = "(" + r + ")";
            return l + op(n.op) + r;
          } else {
            std::string q = n.q == Quantifier::Forall ? forall() : exists();
            return q + "(" + number(n.var.sort) + "." + number(n.var.index) + ")" + grouped(n.body);
          }
        },
        f.node().v);
  }

  // Operand of a prefix operator: binary formulas get their own parentheses.
  std::string grouped(const Formula& f) const {
    return f.is<Binary>() ? "(" + formula(f) + ")" : formula(f);
  }
};

}  // namespace detail

inline std::string print_numeric(const Formula& f, NotationStyle style = {}) {
  detail::IndexPrinter p{[](std::uint64_t n) { return std::to_string(n); }, style, false};
  return p.formula(f);
}

inline std::string print_sticks(const Formula& f, NotationStyle style = {}) {
  detail::IndexPrinter p{[](std::uint64_t n) { return std::string(n, '|'); }, style, true};
  return p.formula(f);
}

}  // namespace para
