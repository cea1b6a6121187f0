// Command-line front end: corpus maintenance, rendering, proving, export and
// the HTTP server.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "para/para.hpp"
#include "para/service.hpp"

namespace {

std::string env_or(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : fallback;
}

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) out += (i ? " " : "") + words[i];
  return out;
}

para::Bounds parse_bounds(const std::string& spec) {
  para::Bounds b;
  if (spec.empty()) return b;
  const auto comma = spec.find(',');
  try {
    b.max_clauses = std::stoul(spec.substr(0, comma));
    if (comma != std::string::npos) b.max_seconds = std::stod(spec.substr(comma + 1));
  } catch (const std::exception&) {
    throw para::Error(para::Error::Kind::Syntax, "--bounds expects CLAUSES[,SECONDS]");
  }
  return b;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw para::Error(para::Error::Kind::NotFound, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PaRa sentence corpus tool"};
  app.require_subcommand(1);

  std::string corpus_path = env_or("PARA_CORPUS", "para-corpus.json");
  app.add_option("--corpus", corpus_path, "corpus file (env PARA_CORPUS)");

  std::vector<std::string> words;
  para::Code code = 0;
  std::vector<para::Code> codes;
  std::string format = "prelpara2d";
  std::string text;
  std::string goal;
  std::string bounds_spec;
  std::string theorem = "Goal";
  std::size_t cubes_per_row = 0;
  int port = std::stoi(env_or("PARA_PORT", "8787"));
  std::string host = "127.0.0.1";
  std::size_t workers = 8;
  std::string dict_file;
  bool want_prolog = false, want_lean = false, want_dict = false;

  auto* add = app.add_subcommand("add", "formalize a sentence; prints its code");
  add->add_option("text", words, "proto text")->required();

  auto* rm = app.add_subcommand("rm", "delete a sentence by code");
  rm->add_option("code", code)->required();

  auto* ls = app.add_subcommand("ls", "list sentences");

  auto* show = app.add_subcommand("show", "show every notation of a sentence");
  show->add_option("code", code)->required();

  auto* render = app.add_subcommand("render", "render a sentence");
  render->add_option("code", code, "sentence code");
  render->add_option("--text", text, "proto text instead of a stored sentence");
  render->add_option("--format", format, "prelpara2d|prelpara3d|svg2d|svg3d");
  render->add_option("--cubes-per-row", cubes_per_row, "pad or truncate rows for 3D output");

  auto* prove = app.add_subcommand("prove", "prove a goal from stored premises, or refute them");
  prove->add_option("premises", codes, "premise codes");
  prove->add_option("--goal", goal, "goal as proto text");
  prove->add_option("--bounds", bounds_spec, "CLAUSES[,SECONDS]");

  auto* exp = app.add_subcommand("export", "export sentences or the dictionary");
  exp->add_flag("--prolog", want_prolog);
  exp->add_flag("--lean", want_lean);
  exp->add_flag("--dict", want_dict);
  exp->add_option("codes", codes, "sentence codes (default: all)");
  exp->add_option("--goal", goal, "Lean target as proto text");
  exp->add_option("--theorem", theorem, "Lean theorem name");

  auto* imp = app.add_subcommand("import", "merge a dictionary document into the corpus");
  imp->add_option("file", dict_file)->required();

  auto* serve = app.add_subcommand("serve", "run the HTTP API");
  serve->add_option("--port", port, "listen port (env PARA_PORT)");
  serve->add_option("--host", host);
  serve->add_option("--workers", workers, "parallel request limit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    auto corpus = para::load_or_empty(corpus_path);
    auto commit = [&] { para::save_corpus(corpus, corpus_path); };
    auto selected = [&] {
      std::vector<para::Formula> out;
      if (codes.empty()) {
        for (const auto& s : corpus.sentences()) out.push_back(s.formula);
      } else {
        for (auto c : codes) out.push_back(corpus.get(c).formula);
      }
      return out;
    };

    if (*add) {
      const auto c = corpus.add_sentence(join(words));
      commit();
      std::cout << c << "\n";
    } else if (*rm) {
      corpus.delete_sentence(code);
      commit();
    } else if (*ls) {
      for (const auto& s : corpus.sentences()) std::cout << s.code << "\t" << s.source_text << "\n";
    } else if (*show) {
      const auto& s = corpus.get(code);
      const auto& d = corpus.dictionary();
      std::cout << "source:  " << s.source_text << "\n"
                << "proto:   " << para::print_proto(s.formula, d) << "\n"
                << "numeric: " << para::print_numeric(s.formula) << "\n"
                << "sticks:  " << para::print_sticks(s.formula) << "\n"
                << "grid:\n";
      for (const auto& row : para::grid_codes(para::tile(s.formula, d))) {
        for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? " " : "  ") << row[i];
        std::cout << "\n";
      }
    } else if (*render) {
      para::SymbolDictionary scratch = corpus.dictionary();
      const para::Formula f = text.empty() ? corpus.get(code).formula : para::parse_proto(text, scratch);
      const auto g = para::tile(f, scratch);
      std::optional<std::size_t> per_row;
      if (cubes_per_row) per_row = cubes_per_row;
      if (format == "prelpara2d") {
        for (const auto& row : g.rows) std::cout << para::to_prelpara_2d(row) << "\n";
      } else if (format == "prelpara3d") {
        std::cout << para::to_prelpara_3d(g, per_row) << "\n";
      } else if (format == "svg2d") {
        std::cout << para::to_svg_2d(g);
      } else if (format == "svg3d") {
        std::cout << para::to_svg_3d(g, 32, per_row);
      } else {
        throw para::Error(para::Error::Kind::Invalid, "unknown format '" + format + "'");
      }
    } else if (*prove) {
      para::SymbolDictionary scratch = corpus.dictionary();
      std::vector<para::Formula> premises;
      for (auto c : codes) premises.push_back(corpus.get(c).formula);
      const auto b = parse_bounds(bounds_spec);
      const auto r = goal.empty() ? para::refute(premises, scratch, b)
                                  : para::prove(premises, para::parse_proto(goal, scratch), scratch, b);
      std::cout << para::outcome_name(r.outcome);
      if (!r.reason.empty()) std::cout << ": " << r.reason;
      std::cout << "\n" << para::format_trace(r);
    } else if (*exp) {
      if (want_prolog + want_lean + want_dict != 1) {
        throw para::Error(para::Error::Kind::Invalid, "choose exactly one of --prolog, --lean, --dict");
      }
      if (want_dict) {
        std::cout << para::export_dict(corpus.dictionary()).dump(2) << "\n";
      } else if (want_prolog) {
        std::cout << para::to_prolog(selected(), corpus.dictionary());
      } else {
        para::SymbolDictionary scratch = corpus.dictionary();
        std::optional<para::Formula> target;
        if (!goal.empty()) target = para::parse_proto(goal, scratch);
        para::LeanOptions lo;
        lo.theorem_name = theorem;
        std::cout << para::to_lean_skeleton(selected(), target, scratch, lo);
      }
    } else if (*imp) {
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(read_file(dict_file));
      } catch (const nlohmann::json::parse_error& e) {
        throw para::Error(para::Error::Kind::Format, e.what());
      }
      corpus.merge(para::import_dict(doc));
      commit();
    } else if (*serve) {
      para::ServiceOptions opts;
      opts.corpus_path = corpus_path;
      para::Service svc(std::move(corpus), opts);
      std::cerr << "listening on " << host << ":" << port << "\n";
      para::serve(svc, host, port, workers);
    }
  } catch (const para::Error& e) {
    std::cerr << "error (" << para::kind_name(e.kind()) << "): " << e.what();
    if (e.position()) std::cerr << " at offset " << *e.position();
    std::cerr << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
