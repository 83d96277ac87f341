#pragma once

// File formats: frequency-list CSV, knowledge-base / delta / situation /
// record JSON, and the JSON rendering of reports.

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "generation.hpp"
#include "knowledge.hpp"
#include "relevance.hpp"

namespace simplicity::io {

using json = nlohmann::json;

// Infinite bit counts are written as the strings "inf" / "-inf".
inline json bits_to_json(double b) {
  if (std::isinf(b)) return b > 0 ? "inf" : "-inf";
  return b;
}

namespace detail {

inline std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}
inline std::string index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

inline const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path.empty() ? "<root>" : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(join(path, key), "missing field");
  return *it;
}

inline const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
  return j;
}

inline double number(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string() && j.get<std::string>() == "inf") return kInfiniteBits;
  throw ParseError(path, "expected a number");
}

inline std::uint64_t unsigned_integer(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer()) throw ParseError(path, "expected a non-negative integer");
  throw ParseError(path, "expected an integer");
}

inline std::string string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "expected a string");
  return j.get<std::string>();
}

// Tagged unions are single-key objects: {"tag": payload}.
inline std::pair<std::string, const json*> tagged(const json& j, const std::string& path) {
  if (!j.is_object() || j.size() != 1) throw ParseError(path, "expected a single-key object");
  return {j.begin().key(), &j.begin().value()};
}

template <class F>
auto rethrow_as_parse(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InvalidModel& e) {
    throw ParseError(path, e.what());
  } catch (const InvalidAnchor& e) {
    throw ParseError(path, e.what());
  }
}

} // namespace detail

inline json to_json(const Proposition& p) {
  switch (p.kind()) {
  case Proposition::Kind::Atom: return {{"atom", p.name()}};
  case Proposition::Kind::Not: return {{"not", to_json(p.operand(0))}};
  case Proposition::Kind::And: return {{"and", {to_json(p.operand(0)), to_json(p.operand(1))}}};
  case Proposition::Kind::Or: return {{"or", {to_json(p.operand(0)), to_json(p.operand(1))}}};
  case Proposition::Kind::Implies:
    return {{"implies", {to_json(p.operand(0)), to_json(p.operand(1))}}};
  }
  return nullptr;
}

inline Proposition proposition_from_json(const json& j, const std::string& path) {
  auto [tag, body] = detail::tagged(j, path);
  const std::string here = detail::join(path, tag);
  if (tag == "atom") return Proposition::atom(detail::string(*body, here));
  if (tag == "not") return Proposition::negate(proposition_from_json(*body, here));
  if (tag == "and" || tag == "or" || tag == "implies") {
    if (!body->is_array() || body->size() != 2) throw ParseError(here, "expected two operands");
    Proposition a = proposition_from_json((*body)[0], detail::index(here, 0));
    Proposition b = proposition_from_json((*body)[1], detail::index(here, 1));
    if (tag == "and") return Proposition::conj(a, b);
    if (tag == "or") return Proposition::disj(a, b);
    return Proposition::implies(a, b);
  }
  throw ParseError(path, "unknown proposition form '" + tag + "'");
}

inline json to_json(const GenerationModel& m) {
  return std::visit(
      [](const auto& n) -> json {
        using T = std::decay_t<decltype(n)>;
        auto children = [](const std::vector<GenerationModel>& ms) {
          json a = json::array();
          for (const auto& c : ms) a.push_back(to_json(c));
          return a;
        };
        if constexpr (std::is_same_v<T, Lottery>) return {{"lottery", {{"n", n.n}, {"draws", n.draws}}}};
        else if constexpr (std::is_same_v<T, FixedCost>) return {{"fixed", n.bits}};
        else if constexpr (std::is_same_v<T, IndependentProduct>) return {{"product", children(n.models)}};
        else if constexpr (std::is_same_v<T, OrNode>) return {{"or", children(n.models)}};
        else if constexpr (std::is_same_v<T, AndNode>) return {{"and", children(n.models)}};
        else return {{"scenario_ref", to_json(n.target)}};
      },
      m.node());
}

inline GenerationModel model_from_json(const json& j, const std::string& path) {
  auto [tag, body] = detail::tagged(j, path);
  const std::string here = detail::join(path, tag);
  return detail::rethrow_as_parse(here, [&, &tag = tag, &body = body]() -> GenerationModel {
    if (tag == "lottery")
      return Lottery{detail::unsigned_integer(detail::field(*body, "n", here), detail::join(here, "n")),
                     body->contains("draws")
                         ? detail::unsigned_integer((*body)["draws"], detail::join(here, "draws"))
                         : 1};
    if (tag == "fixed") {
      const double bits = detail::number(*body, here);
      if (std::isinf(bits)) throw ParseError(here, "fixed cost must be finite");
      return FixedCost{bits};
    }
    if (tag == "product" || tag == "or" || tag == "and") {
      std::vector<GenerationModel> kids;
      const auto& arr = detail::array(*body, here);
      for (std::size_t i = 0; i < arr.size(); ++i)
        kids.push_back(model_from_json(arr[i], detail::index(here, i)));
      if (tag == "product") return IndependentProduct{std::move(kids)};
      if (tag == "or") return OrNode{std::move(kids)};
      return AndNode{std::move(kids)};
    }
    if (tag == "scenario_ref") return ScenarioRef{proposition_from_json(*body, here)};
    throw ParseError(path, "unknown generation model '" + tag + "'");
  });
}

inline json to_json(const RankedList& l) {
  json entries = json::array();
  for (const auto& e : l.entries()) entries.push_back({{"item", e.item}, {"count", e.count}});
  return {{"name", l.name()}, {"entries", entries}};
}

inline RankedList list_from_json(const json& j, const std::string& path) {
  const std::string name = detail::string(detail::field(j, "name", path), detail::join(path, "name"));
  const std::string ep = detail::join(path, "entries");
  const auto& arr = detail::array(detail::field(j, "entries", path), ep);
  std::vector<ListEntry> records;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string here = detail::index(ep, i);
    records.push_back({detail::string(detail::field(arr[i], "item", here), detail::join(here, "item")),
                       detail::unsigned_integer(detail::field(arr[i], "count", here),
                                                detail::join(here, "count"))});
  }
  return ingest_frequency_list(name, std::move(records));
}

inline json rule_to_json(const Rule& r) {
  return {{"antecedent", to_json(r.antecedent)}, {"consequent", to_json(r.consequent)}};
}

inline Rule rule_from_json(const json& j, const std::string& path) {
  return {proposition_from_json(detail::field(j, "antecedent", path), detail::join(path, "antecedent")),
          proposition_from_json(detail::field(j, "consequent", path), detail::join(path, "consequent"))};
}

// Facts, scenarios and rules: the shared shape of kb files and deltas.
inline KbDelta delta_from_json(const json& j, const std::string& path = "") {
  if (!j.is_object()) throw ParseError(path.empty() ? "<root>" : path, "expected an object");
  KbDelta d;
  if (j.contains("facts")) {
    const std::string fp = detail::join(path, "facts");
    const auto& arr = detail::array(j["facts"], fp);
    for (std::size_t i = 0; i < arr.size(); ++i)
      d.facts.push_back(proposition_from_json(arr[i], detail::index(fp, i)));
  }
  if (j.contains("scenarios")) {
    const std::string sp = detail::join(path, "scenarios");
    const auto& arr = detail::array(j["scenarios"], sp);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string here = detail::index(sp, i);
      d.scenarios.emplace_back(
          proposition_from_json(detail::field(arr[i], "target", here), detail::join(here, "target")),
          model_from_json(detail::field(arr[i], "model", here), detail::join(here, "model")));
    }
  }
  if (j.contains("rules")) {
    const std::string rp = detail::join(path, "rules");
    const auto& arr = detail::array(j["rules"], rp);
    for (std::size_t i = 0; i < arr.size(); ++i)
      d.rules.push_back(rule_from_json(arr[i], detail::index(rp, i)));
  }
  return d;
}

inline json to_json(const KbDelta& d) {
  json out = json::object();
  if (!d.facts.empty()) {
    out["facts"] = json::array();
    for (const auto& f : d.facts) out["facts"].push_back(to_json(f));
  }
  if (!d.scenarios.empty()) {
    out["scenarios"] = json::array();
    for (const auto& [target, m] : d.scenarios) out["scenarios"].push_back({{"target", to_json(target)}, {"model", to_json(m)}});
  }
  if (!d.rules.empty()) {
    out["rules"] = json::array();
    for (const auto& r : d.rules) out["rules"].push_back(rule_to_json(r));
  }
  return out;
}

inline json to_json(const KnowledgeBase& kb) {
  json lists = json::array();
  for (const auto& [name, l] : kb.lists) lists.push_back(to_json(l));
  json facts = json::array();
  for (const auto& f : kb.beliefs.facts()) facts.push_back(to_json(f));
  json scenarios = json::array();
  for (const auto& [target, models] : kb.beliefs.scenarios())
    for (const auto& m : models) scenarios.push_back({{"target", to_json(target)}, {"model", to_json(m)}});
  json rules = json::array();
  for (const auto& r : kb.beliefs.rules()) rules.push_back(rule_to_json(r));
  return {{"version", kKnowledgeBaseVersion},
          {"lists", lists},
          {"facts", facts},
          {"scenarios", scenarios},
          {"rules", rules}};
}

inline KnowledgeBase kb_from_json(const json& j) {
  const json& v = detail::field(j, "version", "");
  if (!v.is_number_integer()) throw ParseError("version", "expected an integer");
  if (v.get<long long>() != kKnowledgeBaseVersion)
    throw SchemaVersionMismatch(v.get<long long>(), kKnowledgeBaseVersion);
  KnowledgeBase kb;
  if (j.contains("lists")) {
    const auto& arr = detail::array(j["lists"], "lists");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      RankedList l = list_from_json(arr[i], detail::index("lists", i));
      const std::string name = l.name();
      if (!kb.lists.emplace(name, std::move(l)).second)
        throw ParseError(detail::index("lists", i), "duplicate list name '" + name + "'");
    }
  }
  kb.beliefs = apply_delta(BeliefBase{}, delta_from_json(j));
  return kb;
}

inline json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source + " byte " + std::to_string(e.byte), "malformed JSON");
  }
}

// "-" reads standard input.
inline std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline KnowledgeBase load_kb(const std::string& path) {
  return kb_from_json(parse_json_text(read_text(path), path));
}

inline void save_kb(const std::string& path, const KnowledgeBase& kb) {
  write_text(path, dump(to_json(kb)));
}

inline KbDelta load_delta(const std::string& path) {
  return delta_from_json(parse_json_text(read_text(path), path));
}

// Frequency list CSV: header "item,count", one record per line. Items may be
// double-quoted (with "" for a literal quote) when they contain commas.
inline std::vector<ListEntry> parse_frequency_csv(const std::string& text) {
  std::vector<ListEntry> records;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    if (!header_seen) {
      if (line != "item,count") throw ParseError(where, "expected header 'item,count'");
      header_seen = true;
      continue;
    }
    std::string item;
    std::size_t pos = 0;
    if (line[0] == '"') {
      pos = 1;
      for (;;) {
        if (pos >= line.size()) throw ParseError(where, "unterminated quoted item");
        if (line[pos] == '"') {
          if (pos + 1 < line.size() && line[pos + 1] == '"') {
            item.push_back('"');
            pos += 2;
            continue;
          }
          ++pos;
          break;
        }
        item.push_back(line[pos++]);
      }
      if (pos >= line.size() || line[pos] != ',') throw ParseError(where, "expected ',' after item");
    } else {
      pos = line.find(',');
      if (pos == std::string::npos) throw ParseError(where, "expected 'item,count'");
      item = line.substr(0, pos);
    }
    const std::string count_text = line.substr(pos + 1);
    if (count_text.empty() || count_text.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError(where + " field count", "expected a non-negative integer, got '" + count_text + "'");
    std::uint64_t count = 0;
    try {
      count = std::stoull(count_text);
    } catch (const std::out_of_range&) {
      throw ParseError(where + " field count", "count out of range");
    }
    records.push_back({item, count});
  }
  if (!header_seen) throw EmptyInput("frequency list file has no header");
  return records;
}

inline json to_json(const DescriptionEstimator& e) {
  return std::visit(
      [](const auto& n) -> json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, RankRef>) return {{"rank_ref", {{"list", n.list}, {"item", n.item}}}};
        else if constexpr (std::is_same_v<T, ExplicitBits>) return {{"bits", n.bits}};
        else {
          json hops = json::array();
          for (const auto& h : n.hops)
            hops.push_back({{"feature",
                             {{"name", h.feature.name},
                              {"description", to_json(h.feature.description)},
                              {"generation", to_json(h.feature.generation)}}},
                            {"conditional_bits", h.conditional_bits}});
          return {{"feature_chain", hops}};
        }
      },
      e.node());
}

inline DescriptionEstimator estimator_from_json(const json& j, const std::string& path) {
  auto [tag, body] = detail::tagged(j, path);
  const std::string here = detail::join(path, tag);
  return detail::rethrow_as_parse(here, [&, &tag = tag, &body = body]() -> DescriptionEstimator {
    if (tag == "rank_ref")
      return RankRef{detail::string(detail::field(*body, "list", here), detail::join(here, "list")),
                     detail::string(detail::field(*body, "item", here), detail::join(here, "item"))};
    if (tag == "bits") return ExplicitBits{detail::number(*body, here)};
    if (tag == "feature_chain") {
      FeatureChain chain;
      const auto& arr = detail::array(*body, here);
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string hp = detail::index(here, i);
        const json& f = detail::field(arr[i], "feature", hp);
        const std::string fp = detail::join(hp, "feature");
        FeatureHop hop{
            FeatureRef{detail::string(detail::field(f, "name", fp), detail::join(fp, "name")),
                       estimator_from_json(detail::field(f, "description", fp), detail::join(fp, "description")),
                       model_from_json(detail::field(f, "generation", fp), detail::join(fp, "generation"))},
            arr[i].contains("conditional_bits")
                ? detail::number(arr[i]["conditional_bits"], detail::join(hp, "conditional_bits"))
                : 0.0};
        chain.hops.push_back(std::move(hop));
      }
      return chain;
    }
    throw ParseError(path, "unknown description estimator '" + tag + "'");
  });
}

inline json to_json(const SituationDescriptor& s) {
  json j;
  j["label"] = s.label;
  json ests = json::array();
  for (const auto& e : s.description_estimators) ests.push_back(to_json(e));
  j["description_estimators"] = ests;
  if (s.generation_model) j["generation_model"] = to_json(*s.generation_model);
  if (s.temporal) j["temporal"] = {{"elapsed", s.temporal->elapsed}, {"granularity", s.temporal->granularity}};
  if (s.place) j["place"] = {{"places", s.place->places}, {"witnesses", s.place->witnesses}};
  if (s.emotion) j["emotion"] = s.emotion->value;
  if (s.distance) j["distance"] = s.distance->distance;
  return j;
}

inline SituationDescriptor situation_from_json(const json& j, const std::string& path = "") {
  SituationDescriptor s;
  s.label = detail::string(detail::field(j, "label", path), detail::join(path, "label"));
  const std::string ep = detail::join(path, "description_estimators");
  const auto& arr = detail::array(detail::field(j, "description_estimators", path), ep);
  if (arr.empty()) throw ParseError(ep, "at least one description estimator is required");
  for (std::size_t i = 0; i < arr.size(); ++i)
    s.description_estimators.push_back(estimator_from_json(arr[i], detail::index(ep, i)));
  if (j.contains("generation_model"))
    s.generation_model = model_from_json(j["generation_model"], detail::join(path, "generation_model"));
  if (j.contains("temporal")) {
    const std::string tp = detail::join(path, "temporal");
    s.temporal = TemporalAnchor{
        detail::number(detail::field(j["temporal"], "elapsed", tp), detail::join(tp, "elapsed")),
        detail::number(detail::field(j["temporal"], "granularity", tp), detail::join(tp, "granularity"))};
  }
  if (j.contains("place")) {
    const std::string pp = detail::join(path, "place");
    const json& p = j["place"];
    s.place = PlaceAnchor{detail::number(detail::field(p, "places", pp), detail::join(pp, "places")),
                          p.contains("witnesses") ? detail::number(p["witnesses"], detail::join(pp, "witnesses"))
                                                  : 1.0};
  }
  if (j.contains("emotion")) s.emotion = EmotionLevel{detail::number(j["emotion"], detail::join(path, "emotion"))};
  if (j.contains("distance"))
    s.distance = DistanceAnchor{detail::number(j["distance"], detail::join(path, "distance"))};
  return s;
}

inline SituationDescriptor load_situation(const std::string& path) {
  return situation_from_json(parse_json_text(read_text(path), path));
}

inline json to_json(const RelevanceReport& r) {
  json contributions = json::array();
  for (const auto& f : r.feature_contributions)
    contributions.push_back({{"feature", f.name}, {"u", bits_to_json(f.unexpectedness)}});
  json j = {{"c", bits_to_json(r.c)},
            {"c_w", bits_to_json(r.c_w)},
            {"u", bits_to_json(r.u)},
            {"relevant", r.relevant},
            {"bound_flags", r.bound_flags},
            {"feature_contributions", contributions},
            {"notes", r.notes}};
  if (r.emotional_relevance) j["emotional_relevance"] = bits_to_json(*r.emotional_relevance);
  return j;
}

// Either compact records {label, n, c_class, c_feature_given_class} or full
// situation descriptors (recognised by their description_estimators field).
struct RecordInput {
  std::variant<Record, SituationDescriptor> value;
};

inline std::vector<RecordInput> records_from_json(const json& j) {
  const auto& arr = detail::array(j, "<root>");
  std::vector<RecordInput> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string here = detail::index("", i);
    if (arr[i].is_object() && arr[i].contains("description_estimators")) {
      out.push_back({situation_from_json(arr[i], here)});
      continue;
    }
    Record r;
    r.label = detail::string(detail::field(arr[i], "label", here), detail::join(here, "label"));
    r.n = detail::unsigned_integer(detail::field(arr[i], "n", here), detail::join(here, "n"));
    if (r.n < 1) throw ParseError(detail::join(here, "n"), "class size must be at least 1");
    r.c_class = detail::number(detail::field(arr[i], "c_class", here), detail::join(here, "c_class"));
    r.c_feature_given_class = detail::number(detail::field(arr[i], "c_feature_given_class", here),
                                             detail::join(here, "c_feature_given_class"));
    out.push_back({r});
  }
  return out;
}

} // namespace simplicity::io
