// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "para/para.hpp"
#include "support/oracles.hpp"
#include "support/reference_values.hpp"
#include "support/random_formula.hpp"

using namespace para;

namespace {

struct Check {
  std::string failure;
  void expect(bool ok, const std::string& what) {
    if (!ok && failure.empty()) failure = what;
  }
};

int failures = 0;

void criterion(const std::string& name, double limit_ms, const std::function<void(Check&)>& body) {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failure = std::string("exception: ") + e.what();
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (c.failure.empty() && ms >= limit_ms) c.failure = "too slow";
  const bool ok = c.failure.empty();
  if (!ok) ++failures;
  std::printf("%s  %-28s %10.3f ms (limit %g ms)%s%s\n", ok ? "PASS" : "FAIL", name.c_str(), ms, limit_ms,
              ok ? "" : "  ", c.failure.c_str());
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string listing_line(std::uint64_t p) {
  const auto pat = smnist::pattern_of(p);
  std::string out = "n: " + std::to_string(pat.side() * pat.side()) + " k: " + std::to_string(pat.dots().size()) +
                    " p: " + std::to_string(p) + ", c:";
  for (std::size_t i = 0; i < pat.dots().size(); ++i) {
    const auto& d = pat.dots()[i];
    out += " " + std::to_string(i + 1) + ". (" + std::to_string(d.x) + "," + std::to_string(d.y) + ")";
  }
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void numeration_table(Check& c) {
  SymbolDictionary d;
  parse_proto(para_test::kMiceHateCats, d);
  auto code = [&](Category cat, const char* name) {
    const auto i = d.find(cat, name);
    return i ? code_for(cat, *i) : 0;
  };
  c.expect(code(Category::variable(1), "x") == 32, "Animal.x");
  c.expect(code(Category::variable(1), "y") == 96, "Animal.y");
  c.expect(code(Category::predicate(), "Mouse") == 10, "Mouse");
  c.expect(code(Category::predicate(), "Cat") == 14, "Cat");
  c.expect(code(Category::predicate(), "Hate") == 18, "Hate");
}

void numeration_partition(Check& c) {
  // Ordinals are counted per class as the sweep goes, independently of the
  // closed forms under test.
  std::map<std::pair<char, unsigned>, std::uint64_t> seen;
  for (std::uint64_t m = 1; m <= 1000000; ++m) {
    const auto cls = classify_code(m);
    const auto oracle = para_test::code_class(m);
    if (oracle.kind == 'T') {
      if (cls.category.kind != CategoryKind::Terminal) return c.expect(false, "terminal " + std::to_string(m));
      continue;
    }
    const std::uint64_t ordinal = ++seen[{oracle.kind, oracle.valuation}];
    if (cls.ordinal != ordinal) return c.expect(false, "ordinal of " + std::to_string(m));
    if (code_for(cls.category, cls.ordinal) != m) return c.expect(false, "inverse of " + std::to_string(m));
  }
}

void smnist_codec(Check& c) {
  for (std::uint64_t p = 1; p <= 15; ++p)
    c.expect(listing_line(p) == para_test::kEnumerationListing[p - 1], "listing line " + std::to_string(p));
  using Dots = std::vector<smnist::Dot>;
  c.expect(smnist::pattern_of(10).dots() == Dots{{0, 1}, {1, 1}}, "table 10");
  c.expect(smnist::pattern_of(32).dots() == Dots{{1, 0}, {2, 0}}, "table 32");
  c.expect(smnist::pattern_of(96).dots() == Dots{{1, 0}, {0, 1}, {0, 2}}, "table 96");
  const auto brute = para_test::enumerate_patterns(524);
  for (std::uint64_t p = 1; p <= 524; ++p) {
    const auto pat = smnist::pattern_of(p);
    if (pat.side() != brute[p - 1].first || pat.indices() != brute[p - 1].second)
      return c.expect(false, "enumeration at " + std::to_string(p));
  }
  for (std::uint64_t p = 1; p <= 100000; ++p) {
    if (smnist::code_of_pattern(smnist::pattern_of(p)) != p) return c.expect(false, "round trip " + std::to_string(p));
  }
}

void end_to_end(Check& c) {
  SymbolDictionary d;
  const Formula f = parse_proto(para_test::kMiceHateCats, d);
  const TilingGrid g = tile(f, d);
  c.expect(grid_codes(g) == para_test::kMiceHateCatsGrid, "grid codes");
  if (g.rows.size() != 3) return c.expect(false, "row count");
  for (std::size_t r = 0; r < 3; ++r)
    c.expect(parse_prelpara(to_prelpara_2d(g.rows[r])) == parse_prelpara(para_test::kMiceHateCatsRows[r]),
             "2D row " + std::to_string(r + 1));
  c.expect(parse_prelpara_3d(to_prelpara_3d(g, 3)) == parse_prelpara_3d(para_test::kCube3PerRow), "3D, 3 per row");
  c.expect(parse_prelpara_3d(to_prelpara_3d(g, 6)) == parse_prelpara_3d(para_test::kCube6PerRow), "3D, 6 per row");
}

void translator(Check& c) {
  SymbolDictionary d;
  const std::vector<Formula> premises{parse_proto("Man(socrates)", d),
                                      parse_proto("forall Thing.x (Man(x) -> Mortal(x))", d)};
  c.expect(tokens(to_prolog(premises, d, {.header = false})) == tokens(para_test::kSocratesProlog), "prolog");

  SymbolDictionary l;
  const Formula premise = parse_proto("forall Man.x Mortal(x)", l);
  const Formula goal = parse_proto("Mortal(Man.socrates)", l);
  auto lean = tokens(to_lean_skeleton({premise}, goal, l, {.theorem_name = "MortalSocrates"}));
  c.expect(!lean.empty() && lean.back() == "sorry", "lean placeholder");
  if (!lean.empty()) lean.pop_back();
  c.expect(lean == tokens(para_test::kSocratesLean), "lean statement");
}

void reasoner(Check& c) {
  {
    SymbolDictionary d;
    const auto start = std::chrono::steady_clock::now();
    const auto r = refute({parse_proto(para_test::kBarber, d)}, d);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    c.expect(r.outcome == Outcome::Refuted, "barber not refuted");
    c.expect(ms < 1000, "barber took " + std::to_string(ms) + " ms");
    c.expect(replay(r), "barber trace does not replay");
  }
  {
    SymbolDictionary d;
    const auto start = std::chrono::steady_clock::now();
    const std::vector<Formula> premises{parse_proto("Man(socrates)", d),
                                        parse_proto("forall Thing.x (Man(x) -> Mortal(x))", d)};
    const auto r = prove(premises, parse_proto("Mortal(socrates)", d), d);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    c.expect(r.outcome == Outcome::Proved, "syllogism not proved");
    c.expect(ms < 100, "syllogism took " + std::to_string(ms) + " ms");
  }
  std::mt19937 rng(1);
  para_test::VocabSpec spec;
  spec.sorts = 1;
  spec.functions = 0;
  spec.constants = 2;
  int unsound = 0, proved = 0;
  for (int i = 0; i < 200; ++i) {
    auto vocab = para_test::make_vocab(rng, spec);
    para_test::FormulaGen gen(rng, vocab, {.max_depth = 3, .iff = true, .closed = true});
    const std::vector<Formula> premises{gen.formula(), gen.formula()};
    const Formula goal = gen.formula();
    const auto r = prove(premises, goal, vocab.dict, {.max_clauses = 2000, .max_seconds = 1.0});
    if (r.outcome != Outcome::Proved) continue;
    ++proved;
    auto counter = premises;
    counter.push_back(negation(goal));
    if (finite_model_check(counter, 3).satisfiable) ++unsound;
  }
  c.expect(unsound == 0, std::to_string(unsound) + " unsound Proved results");
  // A suite that proves nothing checks nothing.
  c.expect(proved >= 20, "only " + std::to_string(proved) + " Proved results");
}

void corpus(Check& c) {
  const auto dir = std::filesystem::temp_directory_path() / ("para-acceptance-" + std::to_string(std::random_device{}()));
  std::filesystem::create_directories(dir);
  {
    Corpus first;
    c.expect(first.add_sentence(para_test::kMiceHateCats) == 7, "first code");
    c.expect(first.add_sentence("Man(socrates)") == 9, "second code");

    std::mt19937 rng(3);
    for (int round = 0; round < 100; ++round) {
      auto vocab = para_test::make_vocab(rng, {});
      para_test::FormulaGen gen(rng, vocab, {.max_depth = 4, .iff = true, .closed = true});
      Corpus k;
      k.merge(vocab.dict);
      for (int i = 0; i < 1 + round % 5; ++i) k.add_sentence(print_proto(gen.formula(), k.dictionary()));
      const auto path = dir / ("c" + std::to_string(round) + ".json");
      save_corpus(k, path);
      if (!(load_corpus(path) == k)) {
        c.expect(false, "round trip " + std::to_string(round));
        break;
      }
    }

    const auto path = dir / "first.json";
    save_corpus(first, path);
    const std::string before = slurp(path);
    for (const char* bad : {"Mouse(x)", "Man(socrates", "Man(a, b)"}) {
      try {
        Corpus work = load_corpus(path);
        work.add_sentence(bad);
        save_corpus(work, path);
        c.expect(false, std::string("accepted ") + bad);
      } catch (const Error&) {
      }
    }
    c.expect(slurp(path) == before, "file changed after failed add");
  }
  std::filesystem::remove_all(dir);
}

}  // namespace

int main() {
  criterion("numeration table", 1, numeration_table);
  criterion("numeration partition", 1000, numeration_partition);
  criterion("smnist codec", 10000, smnist_codec);
  criterion("end-to-end mice hate cats", 100, end_to_end);
  criterion("translator", 10, translator);
  criterion("reasoner", 60000, reasoner);
  criterion("corpus", 5000, corpus);
  std::printf("%d failed\n", failures);
  return failures == 0 ? 0 : 1;
}
