#include <gtest/gtest.h>

#include <cctype>
#include <random>
#include <set>
#include <sstream>

#include "para/proto.hpp"
#include "para/translator.hpp"
#include "support/reference_values.hpp"

using namespace para;

namespace {

std::vector<std::string> tokens(const std::string& s, bool drop_parens = false) {
  std::string t;
  for (char c : s) {
    if (drop_parens && (c == '(' || c == ')')) t += ' ';
    else t += c;
  }
  std::istringstream in(t);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// Recognizes the clause subset the writer emits:
//   clause := atom ('.' | ' :- ' atom (', ' atom)* '.')
//   atom   := lower ident ('(' term (',' ' '? term)* ')')?
//   term   := Upper ident | atom
class ClauseChecker {
 public:
  explicit ClauseChecker(const std::string& s) : s_(s) {}

  bool ok() {
    if (!atom()) return false;
    if (eat(".")) return i_ == s_.size();
    if (!eat(" :- ") || !atom()) return false;
    while (eat(", "))
      if (!atom()) return false;
    return eat(".") && i_ == s_.size();
  }

 private:
  bool ident(bool upper) {
    if (i_ >= s_.size()) return false;
    const unsigned char c = static_cast<unsigned char>(s_[i_]);
    if (upper ? !std::isupper(c) : !std::islower(c)) return false;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    return true;
  }
  bool atom() {
    if (!ident(false)) return false;
    if (!eat("(")) return true;
    do {
      eat(" ");
      if (!term()) return false;
    } while (eat(","));
    return eat(")");
  }
  bool term() { return ident(true) || atom(); }
  bool eat(const std::string& lit) {
    if (s_.compare(i_, lit.size(), lit) != 0) return false;
    i_ += lit.size();
    return true;
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

struct Socrates {
  SymbolDictionary dict;
  std::vector<Formula> premises;
  Socrates() {
    premises.push_back(parse_proto("Man(socrates)", dict));
    premises.push_back(parse_proto("forall Thing.x (Man(x) -> Mortal(x))", dict));
  }
};

}  // namespace

TEST(Prolog, Socrates) {
  Socrates s;
  EXPECT_EQ(to_prolog(s.premises, s.dict, {.header = false}), para_test::kSocratesProlog);
  const std::string with_header = to_prolog(s.premises, s.dict);
  EXPECT_EQ(with_header.rfind("% name mapping:", 0), 0u);
  EXPECT_NE(with_header.find("Man->man"), std::string::npos);
  EXPECT_TRUE(with_header.ends_with(para_test::kSocratesProlog));
}

TEST(Prolog, ConjunctiveBody) {
  Socrates s;
  const Formula rule = parse_proto("forall Thing.x (Man(x) & Greek(x) -> Mortal(x))", s.dict);
  EXPECT_EQ(to_prolog({rule}, s.dict, {.header = false}), "mortal(X) :- man(X), greek(X).\n");
}

TEST(Prolog, FunctionsAndConstants) {
  SymbolDictionary d;
  const Formula f = parse_proto("forall Thing.x Parent(mother(x), x)", d);
  EXPECT_EQ(to_prolog({f}, d, {.header = false}), "parent(mother(X), X).\n");
}

TEST(Prolog, RejectsNonHorn) {
  SymbolDictionary d;
  auto kind_of = [&](std::string_view text) {
    const Formula f = parse_proto(text, d);
    try {
      to_prolog({f}, d);
    } catch (const Error& e) {
      return e.kind();
    }
    ADD_FAILURE() << text;
    return Error::Kind::Invalid;
  };
  EXPECT_EQ(kind_of("exists Thing.x Man(x)"), Error::Kind::NotHorn);
  EXPECT_EQ(kind_of("Man(a) | Greek(a)"), Error::Kind::NotHorn);
  EXPECT_EQ(kind_of("~Man(a)"), Error::Kind::NotHorn);
  EXPECT_EQ(kind_of("Man(a) -> Greek(a) | Man(a)"), Error::Kind::NotHorn);
  EXPECT_EQ(kind_of("Man(a) <-> Greek(a)"), Error::Kind::NotHorn);
  try {
    to_prolog({parse_proto("exists Thing.x Man(x)", d)}, d);
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("exist"), std::string::npos) << e.what();
  }
}

TEST(Prolog, ClausesFollowTheGrammar) {
  std::mt19937 rng(17);
  SymbolDictionary d;
  d.add(Category::sort(), "Thing");
  const char* preds[] = {"Man", "man", "Greek", "Is-Mortal", "_p", "9lives"};
  for (const char* p : preds) d.add(Category::predicate(), p, 1);
  d.add(Category::predicate(), "Likes", 2);
  d.add(Category::constant(1), "Socrates");
  d.add(Category::constant(1), "man");
  d.add(Category::variable(1), "x");
  d.add(Category::variable(1), "X");
  std::uniform_int_distribution<std::uint32_t> pick(1, 6), coin(0, 1), arg(1, 2);
  for (int i = 0; i < 200; ++i) {
    Formula head = coin(rng) ? atom(pick(rng), {Variable{1, arg(rng)}})
                             : atom(7, {Variable{1, arg(rng)}, Constant{1, arg(rng)}});
    Formula f = head;
    if (coin(rng)) {
      Formula body = atom(pick(rng), {Constant{1, arg(rng)}});
      if (coin(rng)) body = conj(body, atom(pick(rng), {Variable{1, 1}}));
      f = implies(body, head);
    }
    f = forall(Variable{1, 1}, forall(Variable{1, 2}, f));
    const std::string out = to_prolog({f}, d, {.header = false});
    ASSERT_TRUE(out.ends_with("\n"));
    const std::string line = out.substr(0, out.size() - 1);
    EXPECT_TRUE(ClauseChecker(line).ok()) << line;
  }
}

TEST(Prolog, ManglingIsInjective) {
  SymbolDictionary d;
  d.add(Category::sort(), "Thing");
  d.add(Category::predicate(), "Man", 1);
  d.add(Category::predicate(), "man", 1);
  d.add(Category::predicate(), "m-an", 1);
  d.add(Category::predicate(), "m_an", 1);
  d.add(Category::constant(1), "Man");
  d.add(Category::variable(1), "x");
  d.add(Category::variable(1), "X");
  PrologNames names(d);
  std::set<std::string> atoms, vars;
  for (std::uint32_t i = 1; i <= 4; ++i) atoms.insert(names.predicate(i));
  atoms.insert(names.constant({1, 1}));
  vars.insert(names.variable({1, 1}));
  vars.insert(names.variable({1, 2}));
  EXPECT_EQ(atoms.size(), 5u);
  EXPECT_EQ(vars.size(), 2u);
  EXPECT_EQ(names.predicate(1), "man");
  EXPECT_EQ(names.predicate(2), "man_2");
  for (const auto& a : atoms) EXPECT_TRUE(std::islower(static_cast<unsigned char>(a[0]))) << a;
  for (const auto& v : vars) EXPECT_TRUE(std::isupper(static_cast<unsigned char>(v[0]))) << v;
}

TEST(Lean, Socrates) {
  SymbolDictionary d;
  const Formula premise = parse_proto("forall Man.x Mortal(x)", d);
  const Formula goal = parse_proto("Mortal(Man.socrates)", d);
  const std::string out = to_lean_skeleton({premise}, goal, d, {.theorem_name = "MortalSocrates"});
  EXPECT_EQ(out,
            "variables (Man : Type) (mortal : Man → Prop)\n\n"
            "theorem MortalSocrates (socrates : Man) (h: (∀ x : Man, mortal x)) : (mortal socrates) :=\nsorry\n");
  auto ours = tokens(out);
  ASSERT_EQ(ours.back(), "sorry");
  ours.pop_back();
  EXPECT_EQ(ours, tokens(para_test::kSocratesLean));
}

TEST(Lean, BarberHypothesis) {
  SymbolDictionary d;
  const Formula barber = parse_proto("exists Man.x forall Man.y (Shaves(x,y) <-> ~Shaves(y,y))", d);
  const std::string out = to_lean_skeleton({barber}, std::nullopt, d);
  EXPECT_NE(out.find("(shaves : Man → Man → Prop)"), std::string::npos) << out;
  const std::string statement = out.substr(out.find("(h"));
  // The two hypothesis spellings differ only in spacing and grouping.
  auto spaced = [](std::string t) {
    for (std::size_t p; (p = t.find("h:")) != std::string::npos;) t.replace(p, 2, "h :");
    return t;
  };
  EXPECT_EQ(tokens(spaced(statement.substr(0, statement.find(":="))), true),
            tokens(spaced(para_test::kBarberLeanHypothesis), true))
      << out;
}

TEST(Lean, MultiplePremisesAndNoPremises) {
  Socrates s;
  const Formula goal = parse_proto("Mortal(socrates)", s.dict);
  const std::string out = to_lean_skeleton(s.premises, goal, s.dict);
  EXPECT_NE(out.find("theorem Goal"), std::string::npos);
  EXPECT_NE(out.find("(h1: (man socrates))"), std::string::npos) << out;
  EXPECT_NE(out.find("(h2: (∀ x : Thing, man x → mortal x))"), std::string::npos) << out;
  const std::string bare = to_lean_skeleton({}, goal, s.dict);
  EXPECT_EQ(bare.find("(h"), std::string::npos);
  EXPECT_NE(bare.find(": (mortal socrates) :="), std::string::npos) << bare;
}

TEST(Lean, Connectives) {
  SymbolDictionary d;
  const Formula f = parse_proto("(A | B) & ~C -> (A <-> B)", d);
  const std::string out = to_lean_skeleton({}, f, d);
  EXPECT_NE(out.find("((a ∨ b) ∧ ¬ c → (a ↔ b))"), std::string::npos) << out;
}
