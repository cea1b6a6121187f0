#pragma once

// Sentence corpus with its dictionary, and the JSON file that persists both.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "para/dictionary.hpp"
#include "para/error.hpp"
#include "para/fol.hpp"
#include "para/proto.hpp"

namespace para {

struct Sentence {
  Code code = 0;
  std::string source_text;
  Formula formula;

  friend bool operator==(const Sentence& a, const Sentence& b) {
    return a.code == b.code && a.source_text == b.source_text && a.formula == b.formula;
  }
};

// Appends every symbol of `from` that `into` lacks, matching by name within
// each category. Sorts are matched first so sorted entries land in the right
// table. Existing names with a different arity are an error.
inline void merge_dictionary(SymbolDictionary& into, const SymbolDictionary& from) {
  SymbolDictionary out = into;
  std::vector<std::uint32_t> sort_map(from.sort_count() + 1, 0);
  for (std::uint32_t s = 1; s <= from.sort_count(); ++s) {
    const auto& name = from.name(Category::sort(), s);
    auto found = out.find(Category::sort(), name);
    if (!found) {
      out.add(Category::sort(), name);
      found = static_cast<std::uint32_t>(out.sort_count());
    }
    sort_map[s] = *found;
  }
  for (auto cat : {Category::predicate(), Category::function()}) {
    for (std::uint32_t i = 1; i <= from.size(cat); ++i) {
      const auto& sym = from.symbol(cat, i);
      std::optional<std::uint32_t> rs;
      if (sym.result_sort) rs = sort_map.at(*sym.result_sort);
      if (auto have = out.find(cat, sym.name)) {
        if (out.symbol(cat, *have).arity != sym.arity) {
          throw Error(Error::Kind::Arity, "'" + sym.name + "' is registered with arity " +
                                              std::to_string(out.symbol(cat, *have).arity));
        }
        continue;
      }
      out.add(cat, sym.name, sym.arity, rs);
    }
  }
  for (std::uint32_t s = 1; s <= from.sort_count(); ++s) {
    for (auto cat : {Category::constant(s), Category::variable(s)}) {
      const Category target = cat.kind == CategoryKind::Constant ? Category::constant(sort_map[s])
                                                                 : Category::variable(sort_map[s]);
      for (std::uint32_t i = 1; i <= from.size(cat); ++i) {
        const auto& name = from.name(cat, i);
        if (!out.find(target, name)) out.add(target, name);
      }
    }
  }
  into = std::move(out);
}

class Corpus {
 public:
  static constexpr int kFormatVersion = 1;
  static constexpr Code kFirstCode = 7;

  const SymbolDictionary& dictionary() const { return dict_; }
  const std::vector<Sentence>& sentences() const { return sentences_; }
  Code next_code() const { return next_code_; }

  // Parses under the corpus dictionary and appends. On any failure neither
  // the dictionary nor the sentence list changes.
  Code add_sentence(std::string_view proto_text, ParseOptions opts = {}) {
    SymbolDictionary scratch = dict_;
    Formula f = parse_proto(proto_text, scratch, opts);
    if (!free_vars(f).empty()) throw Error(Error::Kind::Unbound, "sentences must be closed formulas");
    const Code code = next_code_;
    sentences_.push_back(Sentence{code, std::string(proto_text), std::move(f)});
    dict_ = std::move(scratch);
    next_code_ += 2;
    return code;
  }

  void delete_sentence(Code code) {
    auto it = locate(code);
    if (it == sentences_.end()) throw Error(Error::Kind::NotFound, "no sentence with code " + std::to_string(code));
    sentences_.erase(it);
  }

  const Sentence& get(Code code) const {
    auto it = std::find_if(sentences_.begin(), sentences_.end(), [&](const Sentence& s) { return s.code == code; });
    if (it == sentences_.end()) throw Error(Error::Kind::NotFound, "no sentence with code " + std::to_string(code));
    return *it;
  }

  // Replaces the dictionary. Every stored sentence must still resolve under
  // the new one (matched by name); formulas are re-indexed accordingly.
  void set_dictionary(SymbolDictionary next) {
    std::vector<Sentence> moved = sentences_;
    for (auto& s : moved) s.formula = align_translate(s.formula, dict_, next, false);
    dict_ = std::move(next);
    sentences_ = std::move(moved);
  }

  // Adds the entries of `other` that are missing.
  void merge(const SymbolDictionary& other) { merge_dictionary(dict_, other); }

  nlohmann::json to_json() const {
    nlohmann::json doc;
    doc["version"] = kFormatVersion;
    doc["dictionary"] = dict_.to_json();
    doc["sentences"] = nlohmann::json::array();
    for (const auto& s : sentences_) {
      doc["sentences"].push_back({{"code", s.code}, {"source_text", s.source_text}, {"proto", print_proto(s.formula, dict_)}});
    }
    doc["next_code"] = next_code_;
    return doc;
  }

  static Corpus from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw Error(Error::Kind::Format, "corpus document must be an object");
    if (!doc.contains("version") || !doc["version"].is_number_integer()) {
      throw Error(Error::Kind::Format, "corpus document lacks an integer version");
    }
    if (doc["version"].get<int>() != kFormatVersion) {
      throw Error(Error::Kind::Version, "unsupported corpus version " + doc["version"].dump());
    }
    if (!doc.contains("dictionary") || !doc.contains("sentences") || !doc["sentences"].is_array()) {
      throw Error(Error::Kind::Format, "corpus document needs dictionary and sentences");
    }
    Corpus c;
    c.dict_ = SymbolDictionary::from_json(doc["dictionary"]);
    Code prev = 0;
    for (const auto& e : doc["sentences"]) {
      if (!e.is_object() || !e.contains("code") || !e["code"].is_number_unsigned() || !e.contains("source_text") ||
          !e["source_text"].is_string()) {
        throw Error(Error::Kind::Format, "sentence entries need an unsigned code and a source_text");
      }
      const Code code = e["code"].get<Code>();
      if (code < kFirstCode || code % 2 == 0) {
        throw Error(Error::Kind::Format, "sentence code " + std::to_string(code) + " is not an odd integer >= 7");
      }
      if (code <= prev) throw Error(Error::Kind::Format, "sentence codes must be strictly increasing");
      prev = code;
      const std::string text = e.contains("proto") && e["proto"].is_string() ? e["proto"].get<std::string>()
                                                                             : e["source_text"].get<std::string>();
      Formula f = parse_proto(text, static_cast<const SymbolDictionary&>(c.dict_));
      c.sentences_.push_back(Sentence{code, e["source_text"].get<std::string>(), std::move(f)});
    }
    Code next = prev == 0 ? kFirstCode : prev + 2;
    if (doc.contains("next_code")) {
      if (!doc["next_code"].is_number_unsigned()) throw Error(Error::Kind::Format, "next_code must be unsigned");
      next = doc["next_code"].get<Code>();
      if (next < kFirstCode || next % 2 == 0 || next <= prev) {
        throw Error(Error::Kind::Format, "next_code must be odd, >= 7 and above every sentence code");
      }
    }
    c.next_code_ = next;
    return c;
  }

  friend bool operator==(const Corpus& a, const Corpus& b) {
    return a.next_code_ == b.next_code_ && a.dict_ == b.dict_ && a.sentences_ == b.sentences_;
  }

 private:
  std::vector<Sentence>::iterator locate(Code code) {
    return std::find_if(sentences_.begin(), sentences_.end(), [&](const Sentence& s) { return s.code == code; });
  }

  SymbolDictionary dict_;
  std::vector<Sentence> sentences_;
  Code next_code_ = kFirstCode;
};

// Writes through a sibling temporary file and renames it over `path`, so a
// reader never sees a partial document.
inline void save_corpus(const Corpus& c, const std::filesystem::path& path) {
  const std::string text = c.to_json().dump(2) + "\n";
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Error::Kind::Invalid, "cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw Error(Error::Kind::Invalid, "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Error::Kind::NotFound, "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Error::Kind::Format, std::string("corpus file is not JSON: ") + e.what());
  }
  return Corpus::from_json(doc);
}

// Missing files read as an empty corpus.
inline Corpus load_or_empty(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return Corpus{};
  return load_corpus(path);
}

}  // namespace para
