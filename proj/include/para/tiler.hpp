#pragma once

// Parenthesis-free layout of a formula as rows of PaRa codes. Nesting is
// carried by leading spacer cells. A block at depth d is laid out as:
//
//   atom                     [P a1 .. an]
//   A & B, A | B (atoms)     [A 4 B] / [A 5 B]
//   quantifier prefix        [q v q v ..]            body at d+1
//   ~g                       3 prepended to g's first row, or [3] with g at
//                            d+1 when g is a binary that needs several rows
//   L c R (general)          L's block at d, then [c R] when R is an atom,
//                            else [c] followed by R's block at d+1
//
// Terms flatten depth-first: function code then argument codes.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "para/dictionary.hpp"
#include "para/error.hpp"
#include "para/fol.hpp"

namespace para {

class Cell {
 public:
  static Cell spacer() { return Cell(0); }
  static Cell of(Code m) {
    if (m == 0) throw Error(Error::Kind::Range, "code 0 is reserved for spacers");
    return Cell(m);
  }

  bool is_spacer() const { return code_ == 0; }
  Code code() const { return code_; }

  friend bool operator==(const Cell&, const Cell&) = default;

 private:
  explicit Cell(Code m) : code_(m) {}
  Code code_;
};

struct TilingGrid {
  std::vector<std::vector<Cell>> rows;

  friend bool operator==(const TilingGrid&, const TilingGrid&) = default;
};

inline std::vector<std::vector<Code>> grid_codes(const TilingGrid& g) {
  std::vector<std::vector<Code>> out;
  out.reserve(g.rows.size());
  for (const auto& row : g.rows) {
    auto& r = out.emplace_back();
    r.reserve(row.size());
    for (const auto& c : row) r.push_back(c.code());
  }
  return out;
}

// Inverse of grid_codes: 0 is a spacer.
inline TilingGrid grid_from_codes(const std::vector<std::vector<Code>>& codes) {
  TilingGrid g;
  for (const auto& row : codes) {
    auto& r = g.rows.emplace_back();
    for (Code c : row) r.push_back(c == 0 ? Cell::spacer() : Cell::of(c));
  }
  return g;
}

namespace detail {

inline Code terminal_for(Connective c) {
  switch (c) {
    case Connective::And: return code_of(Terminal::And);
    case Connective::Or: return code_of(Terminal::Or);
    case Connective::Implies: return code_of(Terminal::Implies);
    case Connective::Iff: break;
  }
  throw Error(Error::Kind::Unsupported, "biconditionals must be expanded before tiling");
}

inline bool flat_binary(const Formula& f) {
  if (!f.is<Binary>()) return false;
  const auto& b = f.as<Binary>();
  return (b.op == Connective::And || b.op == Connective::Or) && b.left.is<Atom>() && b.right.is<Atom>();
}

class Tiler {
 public:
  explicit Tiler(const SymbolDictionary& dict) : dict_(dict) {}

  std::vector<std::vector<Code>> block(const Formula& f, std::size_t depth) {
    std::vector<std::vector<Code>> rows;
    emit(f, depth, rows);
    return rows;
  }

 private:
  using Rows = std::vector<std::vector<Code>>;

  static std::vector<Code> indented(std::size_t depth) { return std::vector<Code>(depth, 0); }

  void emit(const Formula& f, std::size_t d, Rows& rows) {
    if (f.is<Atom>()) {
      auto row = indented(d);
      atom(f.as<Atom>(), row);
      rows.push_back(std::move(row));
    } else if (f.is<Not>()) {
      const Formula& g = f.as<Not>().operand;
      if (g.is<Binary>() && !flat_binary(g)) {
        auto row = indented(d);
        row.push_back(code_of(Terminal::Not));
        rows.push_back(std::move(row));
        emit(g, d + 1, rows);
      } else {
        const std::size_t first = rows.size();
        emit(g, d, rows);
        rows[first].insert(rows[first].begin() + static_cast<std::ptrdiff_t>(d), code_of(Terminal::Not));
      }
    } else if (f.is<Quantified>()) {
      auto row = indented(d);
      const Formula* cur = &f;
      while (cur->is<Quantified>()) {
        const auto& q = cur->as<Quantified>();
        row.push_back(code_of(q.q == Quantifier::Forall ? Terminal::Forall : Terminal::Exists));
        row.push_back(variable(q.var));
        cur = &q.body;
      }
      rows.push_back(std::move(row));
      emit(*cur, d + 1, rows);
    } else {
      const auto& b = f.as<Binary>();
      const Code op = terminal_for(b.op);
      if (flat_binary(f)) {
        auto row = indented(d);
        atom(b.left.as<Atom>(), row);
        row.push_back(op);
        atom(b.right.as<Atom>(), row);
        rows.push_back(std::move(row));
        return;
      }
      emit(b.left, d, rows);
      auto row = indented(d);
      row.push_back(op);
      if (b.right.is<Atom>()) {
        atom(b.right.as<Atom>(), row);
        rows.push_back(std::move(row));
      } else {
        rows.push_back(std::move(row));
        emit(b.right, d + 1, rows);
      }
    }
  }

  void atom(const Atom& a, std::vector<Code>& row) {
    require(Category::predicate(), a.pred);
    row.push_back(code_for(Category::predicate(), a.pred));
    for (const auto& t : a.args) term(t, row);
  }

  void term(const Term& t, std::vector<Code>& row) {
    if (auto* v = std::get_if<Variable>(&t.node)) {
      row.push_back(variable(*v));
    } else if (auto* c = std::get_if<Constant>(&t.node)) {
      require(Category::constant(c->sort), c->index);
      row.push_back(code_for(Category::constant(c->sort), c->index));
    } else {
      const auto& f = t.as<FunctionApp>();
      require(Category::function(), f.fn);
      row.push_back(code_for(Category::function(), f.fn));
      for (const auto& a : f.args) term(a, row);
    }
  }

  Code variable(const Variable& v) {
    require(Category::variable(v.sort), v.index);
    return code_for(Category::variable(v.sort), v.index);
  }

  void require(Category cat, std::uint64_t ordinal) const {
    if (!dict_.contains(cat, ordinal)) {
      throw Error(Error::Kind::UnknownSymbol, "symbol with ordinal " + std::to_string(ordinal) + " is not registered");
    }
  }

  const SymbolDictionary& dict_;
};

class Untiler {
 public:
  Untiler(const std::vector<std::vector<Code>>& rows, const SymbolDictionary& dict) : dict_(dict) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      Line line;
      std::size_t i = 0;
      while (i < rows[r].size() && rows[r][i] == 0) ++i;
      line.depth = i;
      for (; i < rows[r].size(); ++i) {
        if (rows[r][i] == 0) fail(r, "spacer after the first code of a row");
        line.codes.push_back(rows[r][i]);
      }
      if (line.codes.empty()) fail(r, "row has no codes");
      lines_.push_back(std::move(line));
    }
  }

  Formula run() {
    if (lines_.empty()) throw Error(Error::Kind::Format, "empty grid");
    if (lines_[0].depth != 0) fail(0, "first row must not be indented");
    Formula f = block(0);
    if (row_ != lines_.size()) fail(row_, "row does not belong to the formula");
    return f;
  }

 private:
  struct Line {
    std::size_t depth = 0;
    std::vector<Code> codes;
  };

  [[noreturn]] void fail(std::size_t row, const std::string& msg) const {
    throw Error(Error::Kind::Format, "grid row " + std::to_string(row + 1) + ": " + msg);
  }

  static bool is_connective(Code c) {
    return c == code_of(Terminal::And) || c == code_of(Terminal::Or) || c == code_of(Terminal::Implies);
  }
  static Connective connective(Code c) {
    if (c == code_of(Terminal::And)) return Connective::And;
    if (c == code_of(Terminal::Or)) return Connective::Or;
    return Connective::Implies;
  }

  Formula block(std::size_t depth) {
    if (row_ >= lines_.size() || lines_[row_].depth != depth) {
      fail(std::min(row_, lines_.size() - 1), "expected a row at indentation " + std::to_string(depth));
    }
    Formula f = unit(depth);
    while (row_ < lines_.size() && lines_[row_].depth == depth && is_connective(lines_[row_].codes.front())) {
      const std::size_t r = row_++;
      const auto& codes = lines_[r].codes;
      const Connective op = connective(codes.front());
      if (codes.size() == 1) {
        if (row_ >= lines_.size() || lines_[row_].depth != depth + 1) fail(r, "dangling connective");
        f = binary(op, f, block(depth + 1));
      } else {
        std::size_t i = 1;
        Formula rhs = atom(r, codes, i);
        if (i != codes.size()) fail(r, "trailing codes after the right operand");
        f = binary(op, f, rhs);
      }
    }
    return f;
  }

  Formula unit(std::size_t depth) {
    const std::size_t r = row_++;
    const auto& codes = lines_[r].codes;
    std::size_t i = 0;
    std::size_t negations = 0;
    while (i < codes.size() && codes[i] == code_of(Terminal::Not)) { ++negations; ++i; }
    auto wrap = [&](Formula f) {
      for (std::size_t n = 0; n < negations; ++n) f = negation(std::move(f));
      return f;
    };
    if (i == codes.size()) {
      if (negations == 0) fail(r, "empty row");
      if (row_ >= lines_.size() || lines_[row_].depth != depth + 1) fail(r, "negation without operand");
      return wrap(block(depth + 1));
    }
    const Code c = codes[i];
    if (c == code_of(Terminal::Forall) || c == code_of(Terminal::Exists)) {
      std::vector<std::pair<Quantifier, Variable>> prefix;
      while (i < codes.size()) {
        const Code q = codes[i];
        if (q != code_of(Terminal::Forall) && q != code_of(Terminal::Exists)) fail(r, "expected a quantifier");
        if (i + 1 >= codes.size()) fail(r, "quantifier without variable");
        prefix.emplace_back(q == code_of(Terminal::Forall) ? Quantifier::Forall : Quantifier::Exists,
                            variable(r, codes[i + 1]));
        i += 2;
      }
      if (row_ >= lines_.size() || lines_[row_].depth != depth + 1) fail(r, "quantifier prefix without body");
      Formula body = block(depth + 1);
      for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) body = quantified(it->first, it->second, body);
      return wrap(std::move(body));
    }
    if (is_connective(c)) fail(r, "dangling connective");
    Formula f = atom(r, codes, i);
    if (i < codes.size()) {
      const Code op = codes[i];
      if (op != code_of(Terminal::And) && op != code_of(Terminal::Or)) fail(r, "unexpected code " + std::to_string(op));
      ++i;
      Formula rhs = atom(r, codes, i);
      f = binary(connective(op), f, rhs);
    }
    if (i != codes.size()) fail(r, "trailing codes");
    return wrap(std::move(f));
  }

  Formula atom(std::size_t r, const std::vector<Code>& codes, std::size_t& i) {
    if (i >= codes.size()) fail(r, "missing atomic formula");
    const auto cls = classify(r, codes[i]);
    if (cls.category.kind != CategoryKind::Predicate) fail(r, "expected a predicate code, got " + std::to_string(codes[i]));
    ++i;
    const auto pred = static_cast<std::uint32_t>(cls.ordinal);
    const std::uint32_t arity = dict_.symbol(Category::predicate(), pred).arity;
    std::vector<Term> args;
    for (std::uint32_t a = 0; a < arity; ++a) args.push_back(term(r, codes, i));
    return para::atom(pred, std::move(args));
  }

  Term term(std::size_t r, const std::vector<Code>& codes, std::size_t& i) {
    if (i >= codes.size()) fail(r, "arity mismatch: missing argument");
    const Code c = codes[i++];
    const auto cls = classify(r, c);
    switch (cls.category.kind) {
      case CategoryKind::Variable:
        return Variable{cls.category.type, static_cast<std::uint32_t>(cls.ordinal)};
      case CategoryKind::Constant:
        return Constant{cls.category.type, static_cast<std::uint32_t>(cls.ordinal)};
      case CategoryKind::Function: {
        const auto f = static_cast<std::uint32_t>(cls.ordinal);
        const std::uint32_t arity = dict_.symbol(Category::function(), f).arity;
        std::vector<Term> args;
        for (std::uint32_t a = 0; a < arity; ++a) args.push_back(term(r, codes, i));
        return FunctionApp{f, std::move(args)};
      }
      default:
        fail(r, "code " + std::to_string(c) + " is not a term");
    }
  }

  Variable variable(std::size_t r, Code c) {
    const auto cls = classify(r, c);
    if (cls.category.kind != CategoryKind::Variable) fail(r, "code " + std::to_string(c) + " is not a variable");
    return Variable{cls.category.type, static_cast<std::uint32_t>(cls.ordinal)};
  }

  Classified classify(std::size_t r, Code c) const {
    const Classified cls = classify_code(c);
    if (cls.category.kind != CategoryKind::Terminal && cls.category.kind != CategoryKind::SentenceText &&
        !dict_.contains(cls.category, cls.ordinal)) {
      fail(r, "unknown code " + std::to_string(c));
    }
    return cls;
  }

  const SymbolDictionary& dict_;
  std::vector<Line> lines_;
  std::size_t row_ = 0;
};

}  // namespace detail

inline TilingGrid tile(const Formula& f, const SymbolDictionary& dict) {
  if (contains_iff(f)) throw Error(Error::Kind::Unsupported, "biconditionals must be expanded before tiling");
  return grid_from_codes(detail::Tiler(dict).block(f, 0));
}

inline Formula untile(const TilingGrid& g, const SymbolDictionary& dict) {
  return detail::Untiler(grid_codes(g), dict).run();
}

}  // namespace para
