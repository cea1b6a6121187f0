#pragma once

// Name-based ASCII surface syntax:
//
//   formula  := iff
//   iff      := implies ('<->' iff)?
//   implies  := or ('->' implies)?
//   or       := and ('|' and)*
//   and      := unary ('&' unary)*
//   unary    := '~' unary | ('forall' | 'exists') Sort '.' name unary | primary
//   primary  := '(' formula ')' | Pred ('(' term (',' term)* ')')?
//   term     := Fn '(' [term (',' term)*] ')' | Sort '.' name | name
//
// A bare name in term position resolves to the innermost bound variable of
// that name, then to a registered constant, then (with allow_free) to a
// registered variable. Unknown bare names become constants.

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "para/dictionary.hpp"
#include "para/error.hpp"
#include "para/fol.hpp"

namespace para {

struct ParseOptions {
  bool auto_register = true;
  bool allow_free = false;
  // Sort given to unknown bare constants when the dictionary has no sorts yet.
  std::string default_sort = "Thing";
};

namespace detail {

enum class Tok { Ident, Dot, LParen, RParen, Comma, Tilde, Amp, Bar, Arrow, DArrow, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

inline std::vector<Token> lex_proto(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && ident_char(s[i])) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    switch (c) {
      case '.': out.push_back({Tok::Dot, ".", i++}); continue;
      case '(': out.push_back({Tok::LParen, "(", i++}); continue;
      case ')': out.push_back({Tok::RParen, ")", i++}); continue;
      case ',': out.push_back({Tok::Comma, ",", i++}); continue;
      case '~': out.push_back({Tok::Tilde, "~", i++}); continue;
      case '&': out.push_back({Tok::Amp, "&", i++}); continue;
      case '|': out.push_back({Tok::Bar, "|", i++}); continue;
      default: break;
    }
    if (s.substr(i, 2) == "->") { out.push_back({Tok::Arrow, "->", i}); i += 2; continue; }
    if (s.substr(i, 3) == "<->") { out.push_back({Tok::DArrow, "<->", i}); i += 3; continue; }
    throw Error(Error::Kind::Syntax, std::string("unexpected character '") + c + "'", i);
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class ProtoParser {
 public:
  ProtoParser(std::string_view text, SymbolDictionary& dict, const ParseOptions& opts)
      : toks_(lex_proto(text)), dict_(dict), opts_(opts) {}

  Formula parse() {
    Formula f = formula();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    return next();
  }
  [[noreturn]] void fail(const std::string& msg) const { throw Error(Error::Kind::Syntax, msg, peek().pos); }
  [[noreturn]] void fail_at(Error::Kind k, const std::string& msg, std::size_t pos) const { throw Error(k, msg, pos); }

  static bool is_keyword(const std::string& s) { return s == "forall" || s == "exists"; }

  Formula formula() {
    Formula l = implication();
    if (accept(Tok::DArrow)) return iff(std::move(l), formula());
    return l;
  }
  Formula implication() {
    Formula l = disjunction();
    if (accept(Tok::Arrow)) return implies(std::move(l), implication());
    return l;
  }
  Formula disjunction() {
    Formula l = conjunction();
    while (accept(Tok::Bar)) l = disj(std::move(l), conjunction());
    return l;
  }
  Formula conjunction() {
    Formula l = unary();
    while (accept(Tok::Amp)) l = conj(std::move(l), unary());
    return l;
  }

  Formula unary() {
    if (accept(Tok::Tilde)) return negation(unary());
    if (peek().kind == Tok::Ident && is_keyword(peek().text)) {
      const Quantifier q = next().text == "forall" ? Quantifier::Forall : Quantifier::Exists;
      const Token& sort_tok = expect(Tok::Ident, "sort name after quantifier");
      expect(Tok::Dot, "'.' between sort and variable");
      const Token& var_tok = expect(Tok::Ident, "variable name");
      if (is_keyword(var_tok.text)) fail_at(Error::Kind::Syntax, "keyword used as variable name", var_tok.pos);
      const std::uint32_t sort = resolve_sort(sort_tok);
      const Variable v{sort, resolve_name(Category::variable(sort), var_tok, std::nullopt)};
      scope_.emplace_back(var_tok.text, v);
      Formula body = unary();
      scope_.pop_back();
      return quantified(q, v, std::move(body));
    }
    return primary();
  }

  Formula primary() {
    if (accept(Tok::LParen)) {
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    const Token& name = expect(Tok::Ident, "formula");
    if (is_keyword(name.text)) fail_at(Error::Kind::Syntax, "misplaced quantifier", name.pos);
    std::vector<Term> args;
    if (accept(Tok::LParen)) args = term_list();
    const auto pred = resolve_name(Category::predicate(), name, static_cast<std::uint32_t>(args.size()));
    return atom(pred, std::move(args));
  }

  std::vector<Term> term_list() {
    std::vector<Term> args;
    if (accept(Tok::RParen)) return args;
    do {
      args.push_back(term());
    } while (accept(Tok::Comma));
    expect(Tok::RParen, "')' after arguments");
    return args;
  }

  Term term() {
    const Token& name = expect(Tok::Ident, "term");
    if (is_keyword(name.text)) fail_at(Error::Kind::Syntax, "quantifier inside a term", name.pos);
    if (accept(Tok::LParen)) {
      std::vector<Term> args = term_list();
      const auto f = resolve_name(Category::function(), name, static_cast<std::uint32_t>(args.size()));
      return FunctionApp{f, std::move(args)};
    }
    if (accept(Tok::Dot)) {
      const Token& cname = expect(Tok::Ident, "constant name after sort");
      const std::uint32_t sort = resolve_sort(name);
      return Constant{sort, resolve_name(Category::constant(sort), cname, std::nullopt)};
    }
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->first == name.text) return it->second;
    }
    std::optional<Constant> found;
    for (std::uint32_t s = 1; s <= dict_.sort_count(); ++s) {
      if (auto ord = dict_.find(Category::constant(s), name.text)) {
        if (found) fail_at(Error::Kind::Syntax, "ambiguous constant '" + name.text + "', qualify it as Sort." + name.text, name.pos);
        found = Constant{s, *ord};
      }
    }
    if (found) return *found;
    std::optional<Variable> free;
    for (std::uint32_t s = 1; s <= dict_.sort_count(); ++s) {
      if (auto ord = dict_.find(Category::variable(s), name.text)) {
        if (free) fail_at(Error::Kind::Syntax, "ambiguous free variable '" + name.text + "'", name.pos);
        free = Variable{s, *ord};
      }
    }
    if (free) {
      if (!opts_.allow_free) fail_at(Error::Kind::Unbound, "variable '" + name.text + "' is not bound", name.pos);
      return *free;
    }
    if (!opts_.auto_register) fail_at(Error::Kind::UnknownSymbol, "unknown constant '" + name.text + "'", name.pos);
    std::uint32_t sort = 1;
    if (dict_.sort_count() == 0) {
      dict_.add(Category::sort(), opts_.default_sort);
    }
    dict_.add(Category::constant(sort), name.text);
    return Constant{sort, static_cast<std::uint32_t>(dict_.size(Category::constant(sort)))};
  }

  std::uint32_t resolve_sort(const Token& tok) { return resolve_name(Category::sort(), tok, std::nullopt); }

  std::uint32_t resolve_name(Category cat, const Token& tok, std::optional<std::uint32_t> arity) {
    if (auto ord = dict_.find(cat, tok.text)) {
      if (arity && dict_.symbol(cat, *ord).arity != *arity) {
        fail_at(Error::Kind::Arity,
                "'" + tok.text + "' has arity " + std::to_string(dict_.symbol(cat, *ord).arity) + ", used with " +
                    std::to_string(*arity),
                tok.pos);
      }
      return *ord;
    }
    if (!opts_.auto_register) fail_at(Error::Kind::UnknownSymbol, "unknown symbol '" + tok.text + "'", tok.pos);
    dict_.add(cat, tok.text, arity);
    return static_cast<std::uint32_t>(dict_.size(cat));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  SymbolDictionary& dict_;
  const ParseOptions& opts_;
  std::vector<std::pair<std::string, Variable>> scope_;
};

}  // namespace detail

// Parses `text`, registering unseen names in first-occurrence order. The
// dictionary is only modified when parsing succeeds.
inline Formula parse_proto(std::string_view text, SymbolDictionary& dict, const ParseOptions& opts = {}) {
  SymbolDictionary scratch = dict;
  Formula f = detail::ProtoParser(text, scratch, opts).parse();
  dict = std::move(scratch);
  return f;
}

// Parses against a dictionary that must already contain every symbol.
inline Formula parse_proto(std::string_view text, const SymbolDictionary& dict, ParseOptions opts = {}) {
  opts.auto_register = false;
  SymbolDictionary scratch = dict;
  return detail::ProtoParser(text, scratch, opts).parse();
}

namespace detail {

class ProtoPrinter {
 public:
  explicit ProtoPrinter(const SymbolDictionary& dict) : dict_(dict) {}

  std::string formula(const Formula& f) {
    return std::visit(
        [&](const auto& n) -> std::string {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Atom>) {
            const auto& sym = dict_.symbol(Category::predicate(), n.pred);
            if (n.args.empty()) return sym.name;
            return sym.name + args(n.args);
          } else if constexpr (std::is_same_v<T, Not>) {
            return "~" + grouped(n.operand);
          } else if constexpr (std::is_same_v<T, Binary>) {
            std::string l = formula(n.left);
            std::string r = formula(n.right);
            if (needs_parens(n.op, n.left, true)) l = "(" + l + ")";
            if (needs_parens(n.op, n.right, false)) r = "(" + r + ")";
            return l + " " + op(n.op) + " " + r;
          } else {
            const std::string& vname = dict_.name(Category::variable(n.var.sort), n.var.index);
            std::string head = (n.q == Quantifier::Forall ? "forall " : "exists ") +
                               dict_.name(Category::sort(), n.var.sort) + "." + vname + " ";
            scope_.emplace_back(vname, n.var);
            std::string body = grouped(n.body);
            scope_.pop_back();
            return head + body;
          }
        },
        f.node().v);
  }

 private:
  static const char* op(Connective c) {
    switch (c) {
      case Connective::And: return "&";
      case Connective::Or: return "|";
      case Connective::Implies: return "->";
      case Connective::Iff: return "<->";
    }
    return "?";
  }

  std::string grouped(const Formula& f) { return f.is<Binary>() ? "(" + formula(f) + ")" : formula(f); }

  std::string args(const std::vector<Term>& ts) {
    std::string s = "(";
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (i) s += ",";
      s += term(ts[i]);
    }
    return s + ")";
  }

  std::string term(const Term& t) {
    if (auto* v = std::get_if<Variable>(&t.node)) return dict_.name(Category::variable(v->sort), v->index);
    if (auto* c = std::get_if<Constant>(&t.node)) {
      const std::string& name = dict_.name(Category::constant(c->sort), c->index);
      bool shadowed = false;
      for (const auto& [n, v] : scope_) shadowed |= n == name;
      int same_name = 0;
      for (std::uint32_t s = 1; s <= dict_.sort_count(); ++s) same_name += dict_.find(Category::constant(s), name).has_value();
      if (shadowed || same_name > 1) return dict_.name(Category::sort(), c->sort) + "." + name;
      return name;
    }
    const auto& f = t.as<FunctionApp>();
    return dict_.name(Category::function(), f.fn) + args(f.args);
  }

  const SymbolDictionary& dict_;
  std::vector<std::pair<std::string, Variable>> scope_;
};

}  // namespace detail

inline std::string print_proto(const Formula& f, const SymbolDictionary& dict) {
  return detail::ProtoPrinter(dict).formula(f);
}

// ---------------------------------------------------------------------------
// Alignment between two users' dictionaries.

namespace detail {

class Aligner {
 public:
  Aligner(const SymbolDictionary& from, SymbolDictionary& to, bool auto_register)
      : from_(from), to_(to), auto_(auto_register) {}

  Formula formula(const Formula& f) {
    return std::visit(
        [&](const auto& n) -> Formula {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Atom>) {
            return atom(map(Category::predicate(), Category::predicate(), n.pred), terms(n.args));
          } else if constexpr (std::is_same_v<T, Not>) {
            return negation(formula(n.operand));
          } else if constexpr (std::is_same_v<T, Binary>) {
            return binary(n.op, formula(n.left), formula(n.right));
          } else {
            return quantified(n.q, variable(n.var), formula(n.body));
          }
        },
        f.node().v);
  }

 private:
  std::vector<Term> terms(const std::vector<Term>& ts) {
    std::vector<Term> out;
    out.reserve(ts.size());
    for (const auto& t : ts) out.push_back(term(t));
    return out;
  }
  Term term(const Term& t) {
    if (auto* v = std::get_if<Variable>(&t.node)) return variable(*v);
    if (auto* c = std::get_if<Constant>(&t.node)) {
      const std::uint32_t s = sort(c->sort);
      return Constant{s, map(Category::constant(c->sort), Category::constant(s), c->index)};
    }
    const auto& f = t.as<FunctionApp>();
    return FunctionApp{map(Category::function(), Category::function(), f.fn), terms(f.args)};
  }
  Variable variable(const Variable& v) {
    const std::uint32_t s = sort(v.sort);
    return Variable{s, map(Category::variable(v.sort), Category::variable(s), v.index)};
  }
  std::uint32_t sort(std::uint32_t s) { return map(Category::sort(), Category::sort(), s); }

  std::uint32_t map(Category src, Category dst, std::uint32_t ordinal) {
    const auto& sym = from_.symbol(src, ordinal);
    if (auto ord = to_.find(dst, sym.name)) {
      if ((dst.kind == CategoryKind::Predicate || dst.kind == CategoryKind::Function) &&
          to_.symbol(dst, *ord).arity != sym.arity) {
        throw Error(Error::Kind::Arity, "'" + sym.name + "' has arity " + std::to_string(sym.arity) +
                                            " in the source dictionary but " +
                                            std::to_string(to_.symbol(dst, *ord).arity) + " in the target");
      }
      return *ord;
    }
    if (!auto_) throw Error(Error::Kind::UnknownSymbol, "target dictionary lacks '" + sym.name + "'");
    const bool takes_arity = dst.kind == CategoryKind::Predicate || dst.kind == CategoryKind::Function;
    std::optional<std::uint32_t> rs;
    if (sym.result_sort) rs = sort(*sym.result_sort);
    to_.add(dst, sym.name, takes_arity ? std::optional<std::uint32_t>(sym.arity) : std::nullopt, rs);
    return static_cast<std::uint32_t>(to_.size(dst));
  }

  const SymbolDictionary& from_;
  SymbolDictionary& to_;
  bool auto_;
};

}  // namespace detail

// Re-indexes `f` from one dictionary into another by symbol name. With
// auto_register, names missing from `to` are appended to it.
inline Formula align_translate(const Formula& f, const SymbolDictionary& from, SymbolDictionary& to,
                               bool auto_register = false) {
  SymbolDictionary scratch = to;
  Formula out = detail::Aligner(from, scratch, auto_register).formula(f);
  to = std::move(scratch);
  return out;
}

}  // namespace para
