#pragma once

// Clausal reasoning: CNF with Skolemization, sorted unification, a
// given-clause resolution prover and a brute-force finite-model checker used
// as a test oracle.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "para/dictionary.hpp"
#include "para/error.hpp"
#include "para/fol.hpp"

namespace para {

struct Literal {
  bool positive = true;
  std::uint32_t pred = 1;
  std::vector<Term> args;

  friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;
using Substitution = std::map<Variable, Term>;

struct SkolemSymbol {
  bool is_constant = false;      // constant of `sort`, otherwise a function
  std::uint32_t index = 0;       // constant ordinal within `sort`, or function ordinal
  std::uint32_t sort = 0;
  std::uint32_t arity = 0;
  Variable replaces;             // the existential variable it stands for
  std::size_t source = 0;        // which input formula introduced it
};

struct ClauseSet {
  std::vector<Clause> clauses;
  std::vector<SkolemSymbol> skolem_registry;
};

// ---------------------------------------------------------------------------
// Substitutions

inline Term apply_subst(const Term& t, const Substitution& s) {
  if (auto* v = std::get_if<Variable>(&t.node)) {
    auto it = s.find(*v);
    return it == s.end() ? t : apply_subst(it->second, s);
  }
  if (auto* f = std::get_if<FunctionApp>(&t.node)) {
    FunctionApp out{f->fn, {}};
    out.args.reserve(f->args.size());
    for (const auto& a : f->args) out.args.push_back(apply_subst(a, s));
    return out;
  }
  return t;
}

inline Literal apply_subst(const Literal& l, const Substitution& s) {
  Literal out{l.positive, l.pred, {}};
  out.args.reserve(l.args.size());
  for (const auto& a : l.args) out.args.push_back(apply_subst(a, s));
  return out;
}

// Applies `s` and drops repeated literals, keeping first occurrences.
inline Clause apply_subst(const Clause& c, const Substitution& s) {
  Clause out;
  for (const auto& l : c) {
    Literal m = apply_subst(l, s);
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(std::move(m));
  }
  return out;
}

namespace detail {

inline Term walk(const Term& t, const Substitution& s) {
  const Term* cur = &t;
  while (auto* v = std::get_if<Variable>(&cur->node)) {
    auto it = s.find(*v);
    if (it == s.end()) break;
    cur = &it->second;
  }
  return *cur;
}

inline bool occurs(const Variable& v, const Term& t, const Substitution& s) {
  const Term w = walk(t, s);
  if (auto* u = std::get_if<Variable>(&w.node)) return *u == v;
  if (auto* f = std::get_if<FunctionApp>(&w.node)) {
    for (const auto& a : f->args) if (occurs(v, a, s)) return true;
  }
  return false;
}

inline bool bind(const Variable& v, const Term& t, Substitution& s, const SymbolDictionary* dict) {
  if (auto st = sort_of(t, dict); st && *st != v.sort) return false;
  if (occurs(v, t, s)) return false;
  s.emplace(v, t);
  return true;
}

inline bool unify_into(const Term& a, const Term& b, Substitution& s, const SymbolDictionary* dict) {
  const Term x = walk(a, s);
  const Term y = walk(b, s);
  if (auto* xv = std::get_if<Variable>(&x.node)) {
    if (auto* yv = std::get_if<Variable>(&y.node); yv && *yv == *xv) return true;
    return bind(*xv, y, s, dict);
  }
  if (auto* yv = std::get_if<Variable>(&y.node)) return bind(*yv, x, s, dict);
  if (auto* xc = std::get_if<Constant>(&x.node)) {
    auto* yc = std::get_if<Constant>(&y.node);
    return yc && *xc == *yc;
  }
  auto* yf = std::get_if<FunctionApp>(&y.node);
  const auto& xf = x.as<FunctionApp>();
  if (!yf || yf->fn != xf.fn || yf->args.size() != xf.args.size()) return false;
  for (std::size_t i = 0; i < xf.args.size(); ++i) {
    if (!unify_into(xf.args[i], yf->args[i], s, dict)) return false;
  }
  return true;
}

inline bool unify_args(const std::vector<Term>& a, const std::vector<Term>& b, Substitution& s,
                       const SymbolDictionary* dict) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!unify_into(a[i], b[i], s, dict)) return false;
  }
  return true;
}

// Triangular bindings to an idempotent substitution.
inline Substitution solved(const Substitution& s) {
  Substitution out;
  for (const auto& [v, t] : s) out.emplace(v, apply_subst(t, s));
  return out;
}

}  // namespace detail

// Most general unifier, or nullopt. A variable only binds to terms of its own
// sort; terms of unknown sort (user functions) are accepted.
inline std::optional<Substitution> unify(const Term& a, const Term& b, const SymbolDictionary* dict = nullptr) {
  Substitution s;
  if (!detail::unify_into(a, b, s, dict)) return std::nullopt;
  return detail::solved(s);
}

// Literals unify when they have the same sign and predicate.
inline std::optional<Substitution> unify(const Literal& a, const Literal& b, const SymbolDictionary* dict = nullptr) {
  if (a.positive != b.positive || a.pred != b.pred) return std::nullopt;
  Substitution s;
  if (!detail::unify_args(a.args, b.args, s, dict)) return std::nullopt;
  return detail::solved(s);
}

// ---------------------------------------------------------------------------
// Clause normal form

namespace detail {

inline Formula nnf(const Formula& f, bool positive) {
  return std::visit(
      [&](const auto& n) -> Formula {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Atom>) {
          return positive ? f : negation(f);
        } else if constexpr (std::is_same_v<T, Not>) {
          return nnf(n.operand, !positive);
        } else if constexpr (std::is_same_v<T, Binary>) {
          switch (n.op) {
            case Connective::And:
              return positive ? conj(nnf(n.left, true), nnf(n.right, true))
                              : disj(nnf(n.left, false), nnf(n.right, false));
            case Connective::Or:
              return positive ? disj(nnf(n.left, true), nnf(n.right, true))
                              : conj(nnf(n.left, false), nnf(n.right, false));
            case Connective::Implies:
              return positive ? disj(nnf(n.left, false), nnf(n.right, true))
                              : conj(nnf(n.left, true), nnf(n.right, false));
            case Connective::Iff:
              return nnf(expand_iff(f), positive);
          }
          return f;
        } else {
          const bool universal = (n.q == Quantifier::Forall) == positive;
          return quantified(universal ? Quantifier::Forall : Quantifier::Exists, n.var, nnf(n.body, positive));
        }
      },
      f.node().v);
}

inline std::string skolem_name(const SymbolDictionary& dict, std::uint32_t sort, bool constant) {
  for (int n = 1;; ++n) {
    std::string name = "sk" + std::to_string(n);
    const bool taken = dict.find(Category::function(), name) ||
                       (constant && sort <= dict.sort_count() && dict.find(Category::constant(sort), name));
    if (!taken) return name;
  }
}

// Works on NNF. Universal variables are renamed to fresh clause variables;
// existential ones become Skolem terms over the enclosing universals.
class Skolemizer {
 public:
  Skolemizer(SymbolDictionary& dict, ClauseSet& out, std::uint32_t& next_var, std::size_t source)
      : dict_(dict), out_(out), next_var_(next_var), source_(source) {}

  Formula run(const Formula& f) {
    std::map<Variable, Term> env;
    std::vector<Term> universals;
    for (const auto& v : free_vars(f)) {
      const Variable fresh{v.sort, next_var_++};
      env.emplace(v, fresh);
      universals.push_back(fresh);
    }
    return walk(f, env, universals);
  }

 private:
  Formula walk(const Formula& f, std::map<Variable, Term>& env, std::vector<Term>& universals) {
    return std::visit(
        [&](const auto& n) -> Formula {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Atom>) {
            std::vector<Term> args;
            for (const auto& a : n.args) args.push_back(rename(a, env));
            return atom(n.pred, std::move(args));
          } else if constexpr (std::is_same_v<T, Not>) {
            return negation(walk(n.operand, env, universals));
          } else if constexpr (std::is_same_v<T, Binary>) {
            return binary(n.op, walk(n.left, env, universals), walk(n.right, env, universals));
          } else {
            auto saved = env.find(n.var) == env.end() ? std::nullopt : std::optional<Term>(env.at(n.var));
            Term replacement = n.q == Quantifier::Forall ? Term(Variable{n.var.sort, next_var_++})
                                                         : skolem_term(n.var, universals);
            env.insert_or_assign(n.var, replacement);
            if (n.q == Quantifier::Forall) universals.push_back(replacement);
            Formula body = walk(n.body, env, universals);
            if (n.q == Quantifier::Forall) universals.pop_back();
            if (saved) env.insert_or_assign(n.var, *saved);
            else env.erase(n.var);
            return body;
          }
        },
        f.node().v);
  }

  Term rename(const Term& t, const std::map<Variable, Term>& env) {
    if (auto* v = std::get_if<Variable>(&t.node)) {
      auto it = env.find(*v);
      return it == env.end() ? t : it->second;
    }
    if (auto* f = std::get_if<FunctionApp>(&t.node)) {
      FunctionApp out{f->fn, {}};
      for (const auto& a : f->args) out.args.push_back(rename(a, env));
      return out;
    }
    return t;
  }

  Term skolem_term(const Variable& v, const std::vector<Term>& universals) {
    const auto arity = static_cast<std::uint32_t>(universals.size());
    if (arity == 0) {
      dict_.add(Category::constant(v.sort), skolem_name(dict_, v.sort, true));
      const auto idx = static_cast<std::uint32_t>(dict_.size(Category::constant(v.sort)));
      out_.skolem_registry.push_back({true, idx, v.sort, 0, v, source_});
      return Constant{v.sort, idx};
    }
    dict_.add(Category::function(), skolem_name(dict_, v.sort, false), arity, v.sort);
    const auto idx = static_cast<std::uint32_t>(dict_.size(Category::function()));
    out_.skolem_registry.push_back({false, idx, v.sort, arity, v, source_});
    return FunctionApp{idx, universals};
  }

  SymbolDictionary& dict_;
  ClauseSet& out_;
  std::uint32_t& next_var_;
  std::size_t source_;
};

inline std::vector<Clause> distribute(const Formula& f) {
  if (f.is<Atom>()) return {{Literal{true, f.as<Atom>().pred, f.as<Atom>().args}}};
  if (f.is<Not>()) {
    const auto& a = f.as<Not>().operand.as<Atom>();
    return {{Literal{false, a.pred, a.args}}};
  }
  const auto& b = f.as<Binary>();
  auto l = distribute(b.left);
  auto r = distribute(b.right);
  if (b.op == Connective::And) {
    l.insert(l.end(), r.begin(), r.end());
    return l;
  }
  std::vector<Clause> out;
  out.reserve(l.size() * r.size());
  for (const auto& x : l) {
    for (const auto& y : r) {
      Clause c = x;
      c.insert(c.end(), y.begin(), y.end());
      out.push_back(std::move(c));
    }
  }
  return out;
}

inline bool is_tautology(const Clause& c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      if (c[i].positive != c[j].positive && c[i].pred == c[j].pred && c[i].args == c[j].args) return true;
    }
  }
  return false;
}

inline Clause dedupe(const Clause& c) {
  Clause out;
  for (const auto& l : c) if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  return out;
}

// Clause variables are numbered from here on so they never meet dictionary
// variables.
constexpr std::uint32_t kClauseVarBase = 1u << 20;

inline void cnf_into(const Formula& f, SymbolDictionary& dict, ClauseSet& out, std::uint32_t& next_var,
                     std::size_t source) {
  Skolemizer sk(dict, out, next_var, source);
  const Formula matrix = sk.run(nnf(expand_iff(f), true));
  for (auto& c : distribute(matrix)) {
    c = dedupe(c);
    if (is_tautology(c)) continue;
    if (std::find(out.clauses.begin(), out.clauses.end(), c) == out.clauses.end()) out.clauses.push_back(std::move(c));
  }
}

}  // namespace detail

// Equisatisfiable clause set. Skolem symbols are registered in `dict`:
// constants for existentials outside every universal, functions with a result
// sort otherwise.
inline ClauseSet to_cnf(const Formula& f, SymbolDictionary& dict) {
  ClauseSet out;
  std::uint32_t next = detail::kClauseVarBase;
  detail::cnf_into(f, dict, out, next, 0);
  return out;
}

inline ClauseSet to_cnf(const std::vector<Formula>& fs, SymbolDictionary& dict) {
  ClauseSet out;
  std::uint32_t next = detail::kClauseVarBase;
  for (std::size_t i = 0; i < fs.size(); ++i) detail::cnf_into(fs[i], dict, out, next, i);
  return out;
}

// Universal closure of each clause as a disjunction. The empty clause has no
// formula form and is rejected.
inline std::vector<Formula> clauses_to_formulas(const std::vector<Clause>& clauses) {
  std::vector<Formula> out;
  for (const auto& c : clauses) {
    if (c.empty()) throw Error(Error::Kind::Invalid, "the empty clause has no formula form");
    std::optional<Formula> body;
    std::set<Variable> vars;
    for (const auto& l : c) {
      Formula a = atom(l.pred, l.args);
      if (!l.positive) a = negation(a);
      body = body ? disj(*body, a) : a;
      for (const auto& t : l.args) detail::term_vars(t, vars);
    }
    Formula f = *body;
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) f = forall(*it, f);
    out.push_back(f);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Resolution

struct Bounds {
  std::size_t max_clauses = 50000;
  double max_seconds = 5.0;
};

enum class Outcome { Refuted, Proved, Unknown };

inline const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Refuted: return "Refuted";
    case Outcome::Proved: return "Proved";
    case Outcome::Unknown: return "Unknown";
  }
  return "?";
}

enum class Rule { Input, Resolution, Factoring };

struct ProofStep {
  std::size_t id = 0;
  Rule rule = Rule::Input;
  std::size_t parent1 = 0;
  std::size_t parent2 = 0;
  std::size_t literal1 = 0;
  std::size_t literal2 = 0;
  // Resolution renames the second parent apart before unifying.
  Substitution renaming;
  Substitution unifier;
  Clause resolvent;
};

struct ProofResult {
  Outcome outcome = Outcome::Unknown;
  std::vector<ProofStep> trace;  // ancestors of the empty clause, by id
  std::string reason;
  std::size_t clauses_generated = 0;
  SymbolDictionary dictionary;   // input dictionary plus Skolem symbols
};

namespace detail {

inline void clause_vars(const Clause& c, std::set<Variable>& out) {
  for (const auto& l : c) for (const auto& t : l.args) term_vars(t, out);
}

inline Substitution fresh_renaming(const Clause& c, std::uint32_t& next_var) {
  std::set<Variable> vars;
  clause_vars(c, vars);
  Substitution r;
  for (const auto& v : vars) r.emplace(v, Variable{v.sort, next_var++});
  return r;
}

// One-way matching: pattern instance equals target.
inline bool match(const Term& pattern, const Term& target, Substitution& s) {
  if (auto* v = std::get_if<Variable>(&pattern.node)) {
    auto it = s.find(*v);
    if (it != s.end()) return it->second == target;
    if (auto* tv = std::get_if<Variable>(&target.node); tv && tv->sort != v->sort) return false;
    if (auto* tc = std::get_if<Constant>(&target.node); tc && tc->sort != v->sort) return false;
    s.emplace(*v, target);
    return true;
  }
  if (auto* c = std::get_if<Constant>(&pattern.node)) {
    auto* tc = std::get_if<Constant>(&target.node);
    return tc && *tc == *c;
  }
  const auto& f = pattern.as<FunctionApp>();
  auto* tf = std::get_if<FunctionApp>(&target.node);
  if (!tf || tf->fn != f.fn || tf->args.size() != f.args.size()) return false;
  for (std::size_t i = 0; i < f.args.size(); ++i) if (!match(f.args[i], tf->args[i], s)) return false;
  return true;
}

inline bool subsumes_from(const Clause& c, std::size_t i, const Clause& d, Substitution& s) {
  if (i == c.size()) return true;
  for (const auto& l : d) {
    if (l.positive != c[i].positive || l.pred != c[i].pred) continue;
    Substitution trial = s;
    bool ok = true;
    for (std::size_t k = 0; ok && k < l.args.size(); ++k) ok = match(c[i].args[k], l.args[k], trial);
    if (ok && subsumes_from(c, i + 1, d, trial)) return true;
  }
  return false;
}

inline bool subsumes(const Clause& c, const Clause& d) {
  if (c.size() > d.size()) return false;
  Substitution s;
  return subsumes_from(c, 0, d, s);
}

// Variable-blind key used to spot variants; collisions only cost duplicates.
// Clause size for selection: predicate, function, constant and variable
// occurrences. Counting literals alone lets deep terms starve everything else.
inline std::size_t term_weight(const Term& t) {
  if (auto* f = std::get_if<FunctionApp>(&t.node)) {
    std::size_t w = 1;
    for (const auto& a : f->args) w += term_weight(a);
    return w;
  }
  return 1;
}

inline std::size_t weight(const Clause& c) {
  std::size_t w = 0;
  for (const auto& l : c) {
    ++w;
    for (const auto& a : l.args) w += term_weight(a);
  }
  return w;
}

inline std::string variant_key(const Clause& c) {
  std::vector<std::string> lits;
  std::map<Variable, std::size_t> numbering;
  std::function<std::string(const Term&)> term = [&](const Term& t) -> std::string {
    if (auto* v = std::get_if<Variable>(&t.node)) {
      auto [it, _] = numbering.emplace(*v, numbering.size());
      return "v" + std::to_string(v->sort) + "_" + std::to_string(it->second);
    }
    if (auto* k = std::get_if<Constant>(&t.node)) return "c" + std::to_string(k->sort) + "_" + std::to_string(k->index);
    const auto& f = t.as<FunctionApp>();
    std::string s = "f" + std::to_string(f.fn) + "(";
    for (const auto& a : f.args) s += term(a) + ",";
    return s + ")";
  };
  Clause sorted = c;
  auto shape = [](const Literal& l) {
    std::string s = (l.positive ? "+" : "-") + std::to_string(l.pred) + "/";
    for (const auto& a : l.args) {
      if (auto* k = std::get_if<Constant>(&a.node)) s += "c" + std::to_string(k->index);
      else if (a.is<FunctionApp>()) s += "f" + std::to_string(a.as<FunctionApp>().fn);
      else s += "v";
      s += ",";
    }
    return s;
  };
  std::stable_sort(sorted.begin(), sorted.end(), [&](const Literal& a, const Literal& b) { return shape(a) < shape(b); });
  std::string key;
  for (const auto& l : sorted) {
    key += (l.positive ? "+" : "-") + std::to_string(l.pred) + "(";
    for (const auto& a : l.args) key += term(a) + ",";
    key += ")";
  }
  return key;
}

class Prover {
 public:
  Prover(SymbolDictionary& dict, Bounds bounds) : dict_(dict), bounds_(bounds) {}

  ProofResult run(const std::vector<Formula>& premises) {
    const auto start = std::chrono::steady_clock::now();
    ClauseSet cs;
    std::uint32_t cnf_vars = kClauseVarBase;
    for (std::size_t i = 0; i < premises.size(); ++i) cnf_into(premises[i], dict_, cs, cnf_vars, i);
    next_var_ = cnf_vars;

    for (const auto& c : cs.clauses) {
      ProofStep step;
      step.rule = Rule::Input;
      step.resolvent = c;
      if (auto id = admit(std::move(step))) {
        if (steps_[*id].resolvent.empty()) return finish(*id);
      }
    }

    std::size_t iterations = 0;
    while (!passive_.empty()) {
      if ((++iterations & 15) == 0 && elapsed(start) > bounds_.max_seconds) return unknown("time bound exhausted");
      const std::size_t given = passive_.top().second;
      passive_.pop();
      const Clause g = steps_[given].resolvent;
      bool redundant = false;
      for (auto a : active_) {
        if (subsumes(steps_[a].resolvent, g)) {
          redundant = true;
          break;
        }
      }
      if (redundant) continue;

      for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = i + 1; j < g.size(); ++j) {
          if (g[i].positive != g[j].positive || g[i].pred != g[j].pred) continue;
          Substitution s;
          if (!unify_args(g[i].args, g[j].args, s, &dict_)) continue;
          ProofStep step;
          step.rule = Rule::Factoring;
          step.parent1 = step.parent2 = given;
          step.literal1 = i;
          step.literal2 = j;
          step.unifier = solved(s);
          step.resolvent = apply_subst(g, step.unifier);
          if (auto r = produce(std::move(step))) return *r;
        }
      }
      active_.push_back(given);
      for (std::size_t k = 0; k < active_.size(); ++k) {
        if (auto r = resolve_pair(given, active_[k])) return *r;
        if (steps_.size() >= bounds_.max_clauses) return unknown("clause bound exhausted");
      }
      if (elapsed(start) > bounds_.max_seconds) return unknown("time bound exhausted");
    }
    return unknown("saturated without deriving the empty clause");
  }

 private:
  static double elapsed(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  std::optional<ProofResult> resolve_pair(std::size_t p1, std::size_t p2) {
    const Clause c1 = steps_[p1].resolvent;
    const Substitution renaming = fresh_renaming(steps_[p2].resolvent, next_var_);
    const Clause c2 = apply_subst(steps_[p2].resolvent, renaming);
    for (std::size_t i = 0; i < c1.size(); ++i) {
      for (std::size_t j = 0; j < c2.size(); ++j) {
        if (c1[i].positive == c2[j].positive || c1[i].pred != c2[j].pred) continue;
        Substitution s;
        if (!unify_args(c1[i].args, c2[j].args, s, &dict_)) continue;
        ProofStep step;
        step.rule = Rule::Resolution;
        step.parent1 = p1;
        step.parent2 = p2;
        step.literal1 = i;
        step.literal2 = j;
        step.renaming = renaming;
        step.unifier = solved(s);
        Clause rest;
        for (std::size_t k = 0; k < c1.size(); ++k) if (k != i) rest.push_back(c1[k]);
        for (std::size_t k = 0; k < c2.size(); ++k) if (k != j) rest.push_back(c2[k]);
        step.resolvent = apply_subst(rest, step.unifier);
        if (auto r = produce(std::move(step))) return r;
        if (steps_.size() >= bounds_.max_clauses) return std::nullopt;
      }
    }
    return std::nullopt;
  }

  std::optional<ProofResult> produce(ProofStep step) {
    auto id = admit(std::move(step));
    if (id && steps_[*id].resolvent.empty()) return finish(*id);
    return std::nullopt;
  }

  std::optional<std::size_t> admit(ProofStep step) {
    ++generated_;
    if (is_tautology(step.resolvent)) return std::nullopt;
    const std::string key = variant_key(step.resolvent);
    if (!seen_.insert(key).second) return std::nullopt;
    step.id = steps_.size();
    passive_.emplace(std::make_pair(weight(step.resolvent), step.id), step.id);
    steps_.push_back(std::move(step));
    return steps_.back().id;
  }

  ProofResult finish(std::size_t empty_id) {
    std::set<std::size_t> keep;
    std::vector<std::size_t> stack{empty_id};
    while (!stack.empty()) {
      const auto id = stack.back();
      stack.pop_back();
      if (!keep.insert(id).second) continue;
      if (steps_[id].rule != Rule::Input) {
        stack.push_back(steps_[id].parent1);
        stack.push_back(steps_[id].parent2);
      }
    }
    ProofResult r;
    r.outcome = Outcome::Refuted;
    for (auto id : keep) r.trace.push_back(steps_[id]);
    r.clauses_generated = generated_;
    r.dictionary = dict_;
    return r;
  }

  ProofResult unknown(std::string reason) {
    ProofResult r;
    r.outcome = Outcome::Unknown;
    r.reason = std::move(reason);
    r.clauses_generated = generated_;
    r.dictionary = dict_;
    return r;
  }

  using Key = std::pair<std::size_t, std::size_t>;  // (symbol count, id)
  using Entry = std::pair<Key, std::size_t>;

  SymbolDictionary& dict_;
  Bounds bounds_;
  std::vector<ProofStep> steps_;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> passive_;
  std::vector<std::size_t> active_;
  std::unordered_set<std::string> seen_;
  std::uint32_t next_var_ = kClauseVarBase;
  std::size_t generated_ = 0;
};

}  // namespace detail

// Saturates the clause form of `premises`. Refuted means the empty clause was
// derived; bound exhaustion and saturation both give Unknown.
inline ProofResult refute(const std::vector<Formula>& premises, const SymbolDictionary& dict, Bounds bounds = {}) {
  SymbolDictionary scratch = dict;
  return detail::Prover(scratch, bounds).run(premises);
}

inline ProofResult prove(const std::vector<Formula>& premises, const Formula& goal, const SymbolDictionary& dict,
                         Bounds bounds = {}) {
  std::vector<Formula> all = premises;
  all.push_back(negation(goal));
  ProofResult r = refute(all, dict, bounds);
  if (r.outcome == Outcome::Refuted) r.outcome = Outcome::Proved;
  return r;
}

// Re-derives every non-input step from its recorded parents, renaming and
// unifier. Returns false on the first mismatch.
inline bool replay(const ProofResult& r) {
  if (r.outcome == Outcome::Unknown || r.trace.empty()) return false;
  std::map<std::size_t, const Clause*> clauses;
  for (const auto& s : r.trace) clauses[s.id] = &s.resolvent;
  for (const auto& s : r.trace) {
    if (s.rule == Rule::Input) continue;
    if (!clauses.count(s.parent1) || !clauses.count(s.parent2)) return false;
    if (s.parent1 >= s.id || s.parent2 >= s.id) return false;
    const Clause& c1 = *clauses[s.parent1];
    if (s.rule == Rule::Factoring) {
      if (s.literal1 >= c1.size() || s.literal2 >= c1.size()) return false;
      if (apply_subst(c1[s.literal1], s.unifier) != apply_subst(c1[s.literal2], s.unifier)) return false;
      if (apply_subst(c1, s.unifier) != s.resolvent) return false;
      continue;
    }
    const Clause c2 = apply_subst(*clauses[s.parent2], s.renaming);
    if (s.literal1 >= c1.size() || s.literal2 >= c2.size()) return false;
    Literal a = apply_subst(c1[s.literal1], s.unifier);
    Literal b = apply_subst(c2[s.literal2], s.unifier);
    if (a.positive == b.positive || a.pred != b.pred || a.args != b.args) return false;
    Clause rest;
    for (std::size_t k = 0; k < c1.size(); ++k) if (k != s.literal1) rest.push_back(c1[k]);
    for (std::size_t k = 0; k < c2.size(); ++k) if (k != s.literal2) rest.push_back(c2[k]);
    if (apply_subst(rest, s.unifier) != s.resolvent) return false;
  }
  return r.trace.back().resolvent.empty();
}

// ---------------------------------------------------------------------------
// Trace text: one line per step, "id: clause <- parents {unifier}".

namespace detail {

inline std::string clause_term(const Term& t, const SymbolDictionary& d) {
  if (auto* v = std::get_if<Variable>(&t.node)) {
    if (v->index < kClauseVarBase && d.contains(Category::variable(v->sort), v->index)) {
      return d.name(Category::variable(v->sort), v->index);
    }
    return "X" + std::to_string(v->index >= kClauseVarBase ? v->index - kClauseVarBase : v->index);
  }
  if (auto* c = std::get_if<Constant>(&t.node)) {
    return d.contains(Category::constant(c->sort), c->index) ? d.name(Category::constant(c->sort), c->index)
                                                             : "c" + std::to_string(c->sort) + "." + std::to_string(c->index);
  }
  const auto& f = t.as<FunctionApp>();
  std::string s = d.contains(Category::function(), f.fn) ? d.name(Category::function(), f.fn) : "f" + std::to_string(f.fn);
  if (f.args.empty()) return s;
  s += "(";
  for (std::size_t i = 0; i < f.args.size(); ++i) s += (i ? "," : "") + clause_term(f.args[i], d);
  return s + ")";
}

}  // namespace detail

inline std::string format_literal(const Literal& l, const SymbolDictionary& d) {
  std::string s = l.positive ? "" : "~";
  s += d.contains(Category::predicate(), l.pred) ? d.name(Category::predicate(), l.pred) : "p" + std::to_string(l.pred);
  if (l.args.empty()) return s;
  s += "(";
  for (std::size_t i = 0; i < l.args.size(); ++i) s += (i ? "," : "") + detail::clause_term(l.args[i], d);
  return s + ")";
}

inline std::string format_clause(const Clause& c, const SymbolDictionary& d) {
  if (c.empty()) return "[]";
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? " | " : "") + format_literal(c[i], d);
  return s;
}

inline std::string format_substitution(const Substitution& s, const SymbolDictionary& d) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : s) {
    out += (first ? "" : ", ") + detail::clause_term(v, d) + " := " + detail::clause_term(t, d);
    first = false;
  }
  return out + "}";
}

inline std::string format_step(const ProofStep& s, const SymbolDictionary& d) {
  std::string out = std::to_string(s.id) + ": " + format_clause(s.resolvent, d) + " <- ";
  switch (s.rule) {
    case Rule::Input: return out + "input";
    case Rule::Factoring: return out + "factor " + std::to_string(s.parent1) + " " + format_substitution(s.unifier, d);
    case Rule::Resolution:
      return out + "resolve " + std::to_string(s.parent1) + "," + std::to_string(s.parent2) + " " +
             format_substitution(s.unifier, d);
  }
  return out;
}

inline std::string format_trace(const ProofResult& r) {
  std::string out;
  for (const auto& s : r.trace) out += format_step(s, r.dictionary) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Finite models

struct FiniteModel {
  std::uint32_t domain_size = 0;
  std::map<Constant, std::uint32_t> constants;
  // Ground atoms that hold, as (predicate, argument elements).
  std::set<std::pair<std::uint32_t, std::vector<std::uint32_t>>> true_atoms;
};

struct ModelCheck {
  bool satisfiable = false;
  std::optional<FiniteModel> model;
  std::uint32_t max_domain = 0;
};

namespace detail {

// Ground sentences are Tseitin-encoded and handed to a small DPLL search.
class Grounder {
 public:
  explicit Grounder(std::uint32_t n) : n_(n) {}

  int atom_var(std::uint32_t pred, std::vector<std::uint32_t> args) {
    auto key = std::make_pair(pred, std::move(args));
    auto it = atoms_.find(key);
    if (it != atoms_.end()) return it->second;
    const int v = new_var();
    atoms_.emplace(std::move(key), v);
    return v;
  }

  // Returns a literal (signed variable) equivalent to the formula.
  int encode(const Formula& f, std::map<Variable, std::uint32_t>& env, const std::map<Constant, std::uint32_t>& cs) {
    return std::visit(
        [&](const auto& n) -> int {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Atom>) {
            std::vector<std::uint32_t> args;
            for (const auto& a : n.args) args.push_back(element(a, env, cs));
            return atom_var(n.pred, std::move(args));
          } else if constexpr (std::is_same_v<T, Not>) {
            return -encode(n.operand, env, cs);
          } else if constexpr (std::is_same_v<T, Binary>) {
            const int a = encode(n.left, env, cs);
            const int b = encode(n.right, env, cs);
            switch (n.op) {
              case Connective::And: return gate_and({a, b});
              case Connective::Or: return -gate_and({-a, -b});
              case Connective::Implies: return -gate_and({a, -b});
              case Connective::Iff: return gate_and({-gate_and({a, -b}), -gate_and({-a, b})});
            }
            return a;
          } else {
            std::vector<int> parts;
            auto saved = env.find(n.var) == env.end() ? std::nullopt : std::optional<std::uint32_t>(env.at(n.var));
            for (std::uint32_t e = 0; e < n_; ++e) {
              env.insert_or_assign(n.var, e);
              const int b = encode(n.body, env, cs);
              parts.push_back(n.q == Quantifier::Forall ? b : -b);
            }
            if (saved) env.insert_or_assign(n.var, *saved);
            else env.erase(n.var);
            const int g = gate_and(parts);
            return n.q == Quantifier::Forall ? g : -g;
          }
        },
        f.node().v);
  }

  void assert_true(int lit) { clauses_.push_back({lit}); }

  std::optional<std::vector<signed char>> solve() {
    std::vector<signed char> val(vars_ + 1, 0);
    if (dpll(val)) return val;
    return std::nullopt;
  }

  const std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>, int>& atoms() const { return atoms_; }

 private:
  std::uint32_t element(const Term& t, const std::map<Variable, std::uint32_t>& env,
                        const std::map<Constant, std::uint32_t>& cs) const {
    if (auto* v = std::get_if<Variable>(&t.node)) {
      auto it = env.find(*v);
      if (it == env.end()) throw Error(Error::Kind::Unbound, "free variable in model check");
      return it->second;
    }
    if (auto* c = std::get_if<Constant>(&t.node)) return cs.at(*c);
    return cs.at(Constant{0, t.as<FunctionApp>().fn});  // nullary functions are keyed under sort 0
  }

  int new_var() { return ++vars_; }

  int gate_and(const std::vector<int>& in) {
    if (in.size() == 1) return in[0];
    const int g = new_var();
    std::vector<int> big{g};
    for (int x : in) {
      clauses_.push_back({-g, x});
      big.push_back(-x);
    }
    clauses_.push_back(std::move(big));
    return g;
  }

  static signed char value(int lit, const std::vector<signed char>& val) {
    const signed char v = val[static_cast<std::size_t>(std::abs(lit))];
    return lit > 0 ? v : static_cast<signed char>(-v);
  }

  bool propagate(std::vector<signed char>& val, std::vector<int>& trail) {
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& c : clauses_) {
        int unassigned = 0, last = 0;
        bool sat = false;
        for (int l : c) {
          const signed char v = value(l, val);
          if (v > 0) { sat = true; break; }
          if (v == 0) { ++unassigned; last = l; }
        }
        if (sat) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          val[static_cast<std::size_t>(std::abs(last))] = last > 0 ? 1 : -1;
          trail.push_back(std::abs(last));
          changed = true;
        }
      }
    }
    return true;
  }

  bool dpll(std::vector<signed char>& val) {
    std::vector<int> trail;
    if (!propagate(val, trail)) {
      for (int v : trail) val[static_cast<std::size_t>(v)] = 0;
      return false;
    }
    int pick = 0;
    for (int v = 1; v <= vars_; ++v) if (val[static_cast<std::size_t>(v)] == 0) { pick = v; break; }
    if (pick == 0) return true;
    for (signed char choice : {static_cast<signed char>(1), static_cast<signed char>(-1)}) {
      val[static_cast<std::size_t>(pick)] = choice;
      if (dpll(val)) return true;
    }
    val[static_cast<std::size_t>(pick)] = 0;
    for (int v : trail) val[static_cast<std::size_t>(v)] = 0;
    return false;
  }

  std::uint32_t n_;
  int vars_ = 0;
  std::vector<std::vector<int>> clauses_;
  std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>, int> atoms_;
};

inline void collect_constants(const Term& t, std::set<Constant>& out) {
  if (auto* c = std::get_if<Constant>(&t.node)) {
    out.insert(*c);
  } else if (auto* f = std::get_if<FunctionApp>(&t.node)) {
    if (!f->args.empty()) throw Error(Error::Kind::Unsupported, "model checking needs function-free sentences");
    out.insert(Constant{0, f->fn});
  }
}

inline void collect_constants(const Formula& f, std::set<Constant>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Atom>) {
          for (const auto& a : n.args) collect_constants(a, out);
        } else if constexpr (std::is_same_v<T, Not>) {
          collect_constants(n.operand, out);
        } else if constexpr (std::is_same_v<T, Binary>) {
          collect_constants(n.left, out);
          collect_constants(n.right, out);
        } else {
          collect_constants(n.body, out);
        }
      },
      f.node().v);
}

}  // namespace detail

// Searches interpretations over domains 1..max_domain. All sorts share the
// domain. Returns the first model found.
inline ModelCheck finite_model_check(const std::vector<Formula>& sentences, std::uint32_t max_domain) {
  if (max_domain < 1 || max_domain > 4) throw Error(Error::Kind::Range, "max_domain must be in 1..4");
  std::set<Constant> constant_set;
  for (const auto& s : sentences) detail::collect_constants(s, constant_set);
  const std::vector<Constant> constants(constant_set.begin(), constant_set.end());

  ModelCheck result;
  result.max_domain = max_domain;
  for (std::uint32_t n = 1; n <= max_domain; ++n) {
    // Constants are enumerated in canonical form: each constant takes an
    // element at most one past the largest used so far (domain symmetry).
    std::vector<std::uint32_t> assign(constants.size(), 0);
    std::function<bool(std::size_t, std::uint32_t)> search = [&](std::size_t i, std::uint32_t used) -> bool {
      if (i == constants.size()) {
        std::map<Constant, std::uint32_t> cs;
        for (std::size_t k = 0; k < constants.size(); ++k) cs.emplace(constants[k], assign[k]);
        detail::Grounder g(n);
        for (const auto& s : sentences) {
          std::map<Variable, std::uint32_t> env;
          g.assert_true(g.encode(s, env, cs));
        }
        auto val = g.solve();
        if (!val) return false;
        FiniteModel m;
        m.domain_size = n;
        for (const auto& [c, e] : cs) if (c.sort != 0) m.constants.emplace(c, e);
        for (const auto& [a, v] : g.atoms()) if ((*val)[static_cast<std::size_t>(v)] > 0) m.true_atoms.insert(a);
        result.satisfiable = true;
        result.model = std::move(m);
        return true;
      }
      for (std::uint32_t e = 0; e < n && e <= used; ++e) {
        assign[i] = e;
        if (search(i + 1, std::max(used, e + 1))) return true;
      }
      return false;
    };
    if (search(0, 0)) return result;
  }
  return result;
}

}  // namespace para
