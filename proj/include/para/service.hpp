#pragma once

// JSON API over a corpus. `Service::handle` is transport-free so it can be
// tested directly; `serve` binds it to an HTTP listener.

#include <charconv>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>

#include <httplib.h>
#include <json.hpp>

#include "para/corpus.hpp"
#include "para/error.hpp"
#include "para/fol.hpp"
#include "para/proto.hpp"
#include "para/reasoner.hpp"
#include "para/renderer.hpp"
#include "para/tiler.hpp"
#include "para/translator.hpp"

namespace para {

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

inline int http_status(Error::Kind k) {
  switch (k) {
    case Error::Kind::NotFound: return 404;
    case Error::Kind::Duplicate: return 409;
    case Error::Kind::Unsupported:
    case Error::Kind::NotHorn: return 422;
    default: return 400;
  }
}

inline nlohmann::json error_body(const std::string& code, const std::string& message,
                                 std::optional<std::size_t> position = std::nullopt) {
  nlohmann::json j{{"code", code}, {"message", message}};
  if (position) j["position"] = *position;
  return j;
}

inline nlohmann::json term_json(const Term& t, const SymbolDictionary& d) { return detail::clause_term(t, d); }

inline nlohmann::json trace_json(const ProofResult& r) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : r.trace) {
    nlohmann::json unifier = nlohmann::json::object();
    for (const auto& [v, t] : s.unifier) unifier[detail::clause_term(v, r.dictionary)] = term_json(t, r.dictionary);
    nlohmann::json step{{"id", s.id},
                        {"rule", s.rule == Rule::Input ? "input" : s.rule == Rule::Factoring ? "factoring" : "resolution"},
                        {"clause", format_clause(s.resolvent, r.dictionary)},
                        {"unifier", unifier}};
    if (s.rule != Rule::Input) step["parents"] = {s.parent1, s.parent2};
    steps.push_back(step);
  }
  return steps;
}

struct ServiceOptions {
  std::optional<std::filesystem::path> corpus_path;  // persisted after each mutation when set
  Bounds bounds;
};

class Service {
 public:
  explicit Service(ServiceOptions opts = {}) : opts_(std::move(opts)) {
    if (opts_.corpus_path) corpus_ = load_or_empty(*opts_.corpus_path);
  }

  Service(Corpus corpus, ServiceOptions opts) : opts_(std::move(opts)), corpus_(std::move(corpus)) {}

  Corpus snapshot() const {
    std::shared_lock lock(mu_);
    return corpus_;
  }

  Response handle(const std::string& method, const std::string& path, const std::string& body) {
    try {
      return route(method, path, body);
    } catch (const Error& e) {
      return json_response(http_status(e.kind()), error_body(kind_name(e.kind()), e.what(), e.position()));
    } catch (const nlohmann::json::exception& e) {
      return json_response(400, error_body("malformed_request", e.what()));
    } catch (const std::exception& e) {
      return json_response(500, error_body("internal", e.what()));
    }
  }

 private:
  static Response json_response(int status, const nlohmann::json& j) { return {status, "application/json", j.dump()}; }
  static Response text_response(std::string body, std::string type = "text/plain; charset=utf-8") {
    return {200, std::move(type), std::move(body)};
  }

  static nlohmann::json parse_body(const std::string& body) {
    if (body.empty()) return nlohmann::json::object();
    auto j = nlohmann::json::parse(body);
    if (!j.is_object()) throw Error(Error::Kind::Format, "request body must be a JSON object");
    return j;
  }

  static Code parse_code(std::string_view s) {
    Code v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw Error(Error::Kind::Syntax, "sentence code must be an integer");
    return v;
  }

  static std::string required_string(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string()) {
      throw Error(Error::Kind::Format, std::string("field '") + key + "' must be a string");
    }
    return j[key].get<std::string>();
  }

  // Applies `fn` to a copy, persists it, then publishes it. A failure at any
  // point leaves both memory and disk untouched.
  template <typename Fn>
  auto mutate(Fn fn) {
    std::unique_lock lock(mu_);
    Corpus next = corpus_;
    auto result = fn(next);
    if (opts_.corpus_path) save_corpus(next, *opts_.corpus_path);
    corpus_ = std::move(next);
    return result;
  }

  Response route(const std::string& method, const std::string& path, const std::string& body) {
    if (path == "/sentences") {
      if (method == "POST") return add(parse_body(body));
      if (method == "GET") return list();
    } else if (path.rfind("/sentences/", 0) == 0) {
      const Code code = parse_code(std::string_view(path).substr(11));
      if (method == "GET") return show(code);
      if (method == "DELETE") return remove(code);
    } else if (path == "/dictionary") {
      if (method == "GET") return json_response(200, snapshot().dictionary().to_json());
      if (method == "PUT") return put_dictionary(body);
    } else if (method == "POST") {
      if (path == "/render") return render(parse_body(body));
      if (path == "/prove") return prove_route(parse_body(body));
      if (path == "/translate") return translate(parse_body(body));
      if (path == "/align") return align(parse_body(body));
      if (path == "/untile") return untile_route(parse_body(body));
      if (path == "/tile") return tile_route(parse_body(body));
    }
    return json_response(404, error_body("not_found", "no route " + method + " " + path));
  }

  Response add(const nlohmann::json& req) {
    const std::string text = required_string(req, "proto_text");
    const Code code = mutate([&](Corpus& c) { return c.add_sentence(text); });
    return json_response(201, {{"text_code", code}});
  }

  Response list() {
    const Corpus c = snapshot();
    nlohmann::json out = nlohmann::json::array();
    for (const auto& s : c.sentences()) out.push_back({{"text_code", s.code}, {"source_text", s.source_text}});
    return json_response(200, {{"sentences", out}});
  }

  static nlohmann::json describe(const Formula& f, const SymbolDictionary& d) {
    return {{"proto_text", print_proto(f, d)},
            {"numeric", print_numeric(f)},
            {"sticks", print_sticks(f)},
            {"grid_codes", grid_codes(tile(f, d))}};
  }

  Response show(Code code) {
    const Corpus c = snapshot();
    const auto& s = c.get(code);
    nlohmann::json out = describe(s.formula, c.dictionary());
    out["text_code"] = s.code;
    out["source_text"] = s.source_text;
    return json_response(200, out);
  }

  Response remove(Code code) {
    mutate([&](Corpus& c) {
      c.delete_sentence(code);
      return 0;
    });
    return json_response(200, {{"deleted", code}});
  }

  Response put_dictionary(const std::string& body) {
    const SymbolDictionary next = SymbolDictionary::from_json(nlohmann::json::parse(body));
    mutate([&](Corpus& c) {
      c.set_dictionary(next);
      return 0;
    });
    return json_response(200, snapshot().dictionary().to_json());
  }

  // The formula named by a request: a stored code, or proto text parsed
  // against a scratch copy of the dictionary.
  static Formula request_formula(const nlohmann::json& req, const Corpus& c, SymbolDictionary& scratch) {
    if (req.contains("text_code")) return c.get(req["text_code"].get<Code>()).formula;
    return parse_proto(required_string(req, "proto_text"), scratch);
  }

  static std::optional<std::size_t> cubes_per_row(const nlohmann::json& req) {
    if (!req.contains("cubes_per_row") || req["cubes_per_row"].is_null()) return std::nullopt;
    const auto n = req["cubes_per_row"].get<std::int64_t>();
    if (n < 1) throw Error(Error::Kind::Range, "cubes_per_row must be positive");
    return static_cast<std::size_t>(n);
  }

  Response render(const nlohmann::json& req) {
    const Corpus c = snapshot();
    SymbolDictionary scratch = c.dictionary();
    const Formula f = request_formula(req, c, scratch);
    const TilingGrid g = tile(f, scratch);
    const std::string format = req.value("format", std::string("prelpara2d"));
    if (format == "prelpara2d") {
      std::string out;
      for (const auto& row : g.rows) out += to_prelpara_2d(row) + "\n";
      return text_response(out);
    }
    if (format == "prelpara3d") return text_response(to_prelpara_3d(g, cubes_per_row(req)) + "\n");
    if (format == "svg2d") return text_response(to_svg_2d(g), "image/svg+xml");
    if (format == "svg3d") return text_response(to_svg_3d(g, 32, cubes_per_row(req)), "image/svg+xml");
    throw Error(Error::Kind::Invalid, "unknown render format '" + format + "'");
  }

  Bounds request_bounds(const nlohmann::json& req) const {
    Bounds b = opts_.bounds;
    if (req.contains("bounds")) {
      const auto& j = req["bounds"];
      b.max_clauses = j.value("max_clauses", b.max_clauses);
      b.max_seconds = j.value("max_seconds", b.max_seconds);
    }
    return b;
  }

  std::vector<Formula> formulas_for(const nlohmann::json& codes, const Corpus& c) const {
    if (!codes.is_array()) throw Error(Error::Kind::Format, "expected an array of sentence codes");
    std::vector<Formula> out;
    for (const auto& code : codes) out.push_back(c.get(code.get<Code>()).formula);
    return out;
  }

  Response prove_route(const nlohmann::json& req) {
    const Corpus c = snapshot();
    SymbolDictionary scratch = c.dictionary();
    const auto premises = formulas_for(req.value("premise_codes", nlohmann::json::array()), c);
    ProofResult r;
    if (req.contains("goal") && !req["goal"].is_null()) {
      const Formula goal = parse_proto(required_string(req, "goal"), scratch);
      r = prove(premises, goal, scratch, request_bounds(req));
    } else {
      r = refute(premises, scratch, request_bounds(req));
    }
    nlohmann::json out{{"outcome", outcome_name(r.outcome)},
                       {"trace", trace_json(r)},
                       {"trace_text", format_trace(r)},
                       {"clauses_generated", r.clauses_generated}};
    if (!r.reason.empty()) out["reason"] = r.reason;
    return json_response(200, out);
  }

  Response translate(const nlohmann::json& req) {
    const Corpus c = snapshot();
    SymbolDictionary scratch = c.dictionary();
    const auto sentences = formulas_for(req.value("codes", nlohmann::json::array()), c);
    const std::string target = required_string(req, "target");
    if (target == "prolog") return text_response(to_prolog(sentences, scratch));
    if (target == "lean") {
      std::optional<Formula> goal;
      if (req.contains("goal") && !req["goal"].is_null()) goal = parse_proto(required_string(req, "goal"), scratch);
      LeanOptions lo;
      lo.theorem_name = req.value("theorem_name", lo.theorem_name);
      return text_response(to_lean_skeleton(sentences, goal, scratch, lo));
    }
    throw Error(Error::Kind::Invalid, "unknown translation target '" + target + "'");
  }

  // Re-expresses a foreign fragment ({dictionary, sentences: [proto text]})
  // in this corpus's vocabulary. Nothing is committed.
  Response align(const nlohmann::json& req) {
    if (!req.contains("document")) throw Error(Error::Kind::Format, "field 'document' is required");
    const auto& doc = req["document"];
    const SymbolDictionary foreign = SymbolDictionary::from_json(doc.at("dictionary"));
    const Corpus c = snapshot();
    SymbolDictionary target = c.dictionary();
    const bool auto_register = req.value("auto_register", true);
    nlohmann::json out = nlohmann::json::array();
    for (const auto& text : doc.at("sentences")) {
      const Formula f = parse_proto(text.get<std::string>(), foreign);
      const Formula g = align_translate(f, foreign, target, auto_register);
      out.push_back(print_proto(g, target));
    }
    return json_response(200, {{"dictionary", target.to_json()}, {"sentences", out}});
  }

  Response untile_route(const nlohmann::json& req) {
    const Corpus c = snapshot();
    const auto codes = req.at("grid").get<std::vector<std::vector<Code>>>();
    const TilingGrid g = grid_from_codes(codes);
    const Formula f = untile(g, c.dictionary());
    nlohmann::json out = describe(f, c.dictionary());
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : g.rows) rows.push_back(to_prelpara_2d(row));
    out["prelpara2d"] = rows;
    out["prelpara3d"] = to_prelpara_3d(g);
    return json_response(200, out);
  }

  Response tile_route(const nlohmann::json& req) {
    const Corpus c = snapshot();
    SymbolDictionary scratch = c.dictionary();
    const Formula f = parse_proto(required_string(req, "proto_text"), scratch);
    return json_response(200, describe(f, scratch));
  }

  ServiceOptions opts_;
  mutable std::shared_mutex mu_;
  Corpus corpus_;
};

inline void bind_routes(httplib::Server& server, Service& svc) {
  auto forward = [&svc](const httplib::Request& req, httplib::Response& res) {
    Response r = svc.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  server.Get(R"(/.*)", forward);
  server.Post(R"(/.*)", forward);
  server.Put(R"(/.*)", forward);
  server.Delete(R"(/.*)", forward);
}

// Blocks until the listener fails. `workers` bounds the number of requests
// handled in parallel.
inline void serve(Service& svc, const std::string& host, int port, std::size_t workers = 8) {
  httplib::Server server;
  server.new_task_queue = [workers] { return new httplib::ThreadPool(workers); };
  bind_routes(server, svc);
  if (!server.listen(host, port)) throw Error(Error::Kind::Invalid, "cannot listen on " + host + ":" + std::to_string(port));
}

}  // namespace para
