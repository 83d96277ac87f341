// Command-line front end for the relevance engine.
//
// Exit codes: 0 success, 1 input/parse error, 2 evaluation error,
// 3 inconsistent knowledge base.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <simplicity/simplicity.hpp>

namespace st = simplicity;
using st::io::json;

namespace {

struct GlobalFlags {
  std::string kb_path;
  bool json = false;
  bool fallback_rank = false;
  std::string combiner;
  std::uint64_t seed = st::kDefaultSeed;
  double d0 = 1.0;
};

std::string fmt_bits(double b) {
  if (std::isinf(b)) return b > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", b);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

st::ScoringOptions scoring_options(const GlobalFlags& g) {
  st::ScoringOptions o;
  o.fallback_rank = g.fallback_rank;
  o.d0 = g.d0;
  o.seed = g.seed;
  if (!g.combiner.empty()) o.combiner = st::combiner_by_name(g.combiner);
  return o;
}

st::KnowledgeBase load_kb_or_empty(const GlobalFlags& g) {
  if (g.kb_path.empty()) return {};
  return st::io::load_kb(g.kb_path);
}

st::KnowledgeBase require_kb(const GlobalFlags& g) {
  if (g.kb_path.empty()) throw st::InputError("--kb <path> is required");
  return st::io::load_kb(g.kb_path);
}

void emit(const GlobalFlags& g, const json& j, const std::string& text) {
  if (g.json)
    std::cout << st::io::dump(j);
  else
    std::cout << text;
}

std::string report_text(const st::RelevanceReport& r) {
  std::string s;
  s += "c: " + fmt_bits(r.c) + "\n";
  s += "c_w: " + fmt_bits(r.c_w) + "\n";
  s += "u: " + fmt_bits(r.u) + "\n";
  s += std::string("verdict: ") + (r.relevant ? "relevant" : "not relevant") + "\n";
  for (const auto& f : r.feature_contributions)
    s += "feature " + f.name + ": u = " + fmt_bits(f.unexpectedness) +
         (st::is_relevant(f.unexpectedness) ? " (relevant)" : " (not relevant)") + "\n";
  if (r.emotional_relevance) s += "emotional relevance: " + fmt_bits(*r.emotional_relevance) + "\n";
  for (const auto& b : r.bound_flags) s += "bound: " + b + "\n";
  for (const auto& n : r.notes) s += "note: " + n + "\n";
  return s;
}

int run_ingest(const GlobalFlags& g, const std::string& csv_path, const std::string& list_name) {
  if (g.kb_path.empty()) throw st::InputError("--kb <path> is required");
  auto records = st::io::parse_frequency_csv(st::io::read_text(csv_path));
  st::RankedList list = st::ingest_frequency_list(list_name, std::move(records));
  st::KnowledgeBase kb;
  if (std::filesystem::exists(g.kb_path)) kb = st::io::load_kb(g.kb_path);
  kb.lists.insert_or_assign(list_name, list);
  st::io::save_kb(g.kb_path, kb);

  json entries = json::array();
  std::string text = "rank\titem\tcount\tcode\tcomplexity\n";
  for (std::size_t r = 0; r < list.size(); ++r) {
    const auto& e = list.entries()[r];
    const std::string code = st::codec::to_string(st::codec::encode_rank(r));
    const double bits = st::item_complexity(list, e.item);
    entries.push_back({{"rank", r}, {"item", e.item}, {"count", e.count}, {"code", code}, {"complexity", bits}});
    text += std::to_string(r) + "\t" + e.item + "\t" + std::to_string(e.count) + "\t" + code + "\t" +
            std::to_string(static_cast<long long>(bits)) + "\n";
  }
  emit(g, {{"list", list_name}, {"entries", entries}}, text);
  return 0;
}

int run_encode(const GlobalFlags& g, const std::vector<std::uint64_t>& ranks) {
  json out = json::array();
  std::string text;
  for (auto r : ranks) {
    const auto w = st::codec::encode_rank(r);
    const std::string bits = st::codec::to_string(w);
    out.push_back({{"rank", r}, {"code", bits}, {"complexity", st::codec::code_length(r)}});
    text += std::to_string(r) + "\t\"" + bits + "\"\t" + std::to_string(w.size()) + "\n";
  }
  emit(g, out, text);
  return 0;
}

int run_decode(const GlobalFlags& g, const std::vector<std::string>& words) {
  json out = json::array();
  std::string text;
  for (const auto& s : words) {
    // The empty word is passed as "" on the command line.
    const auto r = st::codec::decode(st::codec::parse_code_word(s));
    out.push_back({{"code", s}, {"rank", r}});
    text += "\"" + s + "\"\t" + std::to_string(r) + "\n";
  }
  emit(g, out, text);
  return 0;
}

struct ComplexityArgs {
  std::string list, item;
  std::optional<double> elapsed, granularity, places, witnesses, distance;
  std::optional<std::uint64_t> lottery_n;
  std::uint64_t draws = 1;
};

int run_complexity(const GlobalFlags& g, const ComplexityArgs& a) {
  json out = json::object();
  std::string text;
  auto add = [&](const std::string& key, double bits) {
    out[key] = st::io::bits_to_json(bits);
    text += key + ": " + fmt_bits(bits) + "\n";
  };
  if (!a.list.empty() || !a.item.empty()) {
    if (a.list.empty() || a.item.empty()) throw st::InputError("--list and --item go together");
    const auto kb = require_kb(g);
    add("item", st::item_complexity(kb.list(a.list), a.item, g.fallback_rank));
  }
  if (a.elapsed || a.granularity)
    add("temporal", st::temporal_location_complexity({a.elapsed.value_or(1), a.granularity.value_or(1)}));
  if (a.places) add("place_generation", st::place_generation_complexity({*a.places, 1}));
  if (a.witnesses) add("witness_discount", st::witness_description_discount({1, *a.witnesses}));
  if (a.lottery_n) add("lottery", st::lottery_complexity(*a.lottery_n, a.draws));
  if (a.distance) add("distance_decay", st::distance_decay(*a.distance, g.d0));
  if (out.empty()) throw st::InputError("nothing to compute; see --help");
  emit(g, out, text);
  return 0;
}

int run_score(const GlobalFlags& g, const std::string& situation_path) {
  const auto kb = load_kb_or_empty(g);
  const auto s = st::io::load_situation(situation_path);
  const auto report = st::evaluate_situation(kb, s, scoring_options(g));
  json j = st::io::to_json(report);
  j["label"] = s.label;
  emit(g, j, "situation: " + s.label + "\n" + report_text(report));
  return 0;
}

int run_rank(const GlobalFlags& g, const std::string& records_path) {
  const auto input = st::io::records_from_json(
      st::io::parse_json_text(st::io::read_text(records_path), records_path));
  const auto opts = scoring_options(g);
  std::optional<st::KnowledgeBase> kb;
  std::vector<st::ScoredRecord> scored;
  for (const auto& rec : input) {
    if (const auto* r = std::get_if<st::Record>(&rec.value)) {
      scored.push_back({r->label, st::record_unexpectedness(r->n, r->c_class, r->c_feature_given_class)});
    } else {
      if (!kb) kb = load_kb_or_empty(g);
      const auto& s = std::get<st::SituationDescriptor>(rec.value);
      scored.push_back({s.label, st::evaluate_situation(*kb, s, opts).u});
    }
  }
  st::sort_by_unexpectedness(scored);
  json out = json::array();
  std::string text;
  for (std::size_t i = 0; i < scored.size(); ++i) {
    out.push_back({{"label", scored[i].label}, {"u", st::io::bits_to_json(scored[i].u)}});
    text += std::to_string(i + 1) + "\t" + scored[i].label + "\t" + fmt_bits(scored[i].u) + "\n";
  }
  emit(g, out, text);
  return 0;
}

struct CoincidenceArgs {
  double cw1 = 0, c1 = 0, cw2 = 0;
  std::optional<double> c2_given_1, delta, granularity;
  double extra_bits = 0;
};

int run_coincidence(const GlobalFlags& g, const CoincidenceArgs& a) {
  double conditional = 0;
  json j = json::object();
  if (a.c2_given_1) {
    conditional = *a.c2_given_1;
  } else if (a.delta) {
    const double linkage = st::temporal_linkage_complexity(*a.delta, a.granularity.value_or(1));
    j["temporal_linkage"] = linkage;
    conditional = linkage + a.extra_bits;
  } else {
    throw st::InputError("give --c2-given-1 or --delta");
  }
  const double bound = st::coincidence_unexpectedness({a.cw1, a.c1}, {a.cw2, conditional});
  j["c2_given_1"] = conditional;
  j["u_lower_bound"] = st::io::bits_to_json(bound);
  j["relevant"] = st::is_relevant(bound);
  emit(g, j,
       "c(s2|s1): " + fmt_bits(conditional) + "\nu >= " + fmt_bits(bound) + "\nverdict: " +
           (st::is_relevant(bound) ? "relevant" : "not relevant") + "\n");
  return 0;
}

int run_argue(const GlobalFlags& g, const std::string& delta_path, const std::string& situation_path) {
  const auto kb = require_kb(g);
  const auto delta = st::io::load_delta(delta_path);
  const auto s = st::io::load_situation(situation_path);
  const auto r = st::two_relevance(kb, delta, s, scoring_options(g));
  json j = {{"label", s.label},
            {"u", st::io::bits_to_json(r.before.u)},
            {"u_given_t", st::io::bits_to_json(r.after.u)},
            {"delta_u", st::io::bits_to_json(r.delta_u)},
            {"two_relevant", r.two_relevant},
            {"before", st::io::to_json(r.before)},
            {"after", st::io::to_json(r.after)}};
  emit(g, j,
       "situation: " + s.label + "\nu: " + fmt_bits(r.before.u) + "\nu given t: " + fmt_bits(r.after.u) +
           "\ndelta: " + fmt_bits(r.delta_u) + "\nverdict: " +
           (r.two_relevant ? "2-relevant" : "not 2-relevant") + "\n");
  return 0;
}

json violations_json(const std::vector<st::MutabilityViolation>& v) {
  json out = json::array();
  for (const auto& x : v)
    out.push_back({{"antecedent", x.rule.antecedent.to_string()},
                   {"consequent", x.rule.consequent.to_string()},
                   {"m_antecedent", st::io::bits_to_json(x.antecedent_mutability)},
                   {"m_consequent", st::io::bits_to_json(x.consequent_mutability)}});
  return out;
}

int run_kb_lint(const GlobalFlags& g) {
  const auto kb = require_kb(g);
  json j = {{"version", st::kKnowledgeBaseVersion},
            {"lists", kb.lists.size()},
            {"facts", kb.beliefs.facts().size()},
            {"scenario_targets", kb.beliefs.scenarios().size()},
            {"rules", kb.beliefs.rules().size()}};
  std::string text = "lists: " + std::to_string(kb.lists.size()) +
                     "\nfacts: " + std::to_string(kb.beliefs.facts().size()) +
                     "\nscenario targets: " + std::to_string(kb.beliefs.scenarios().size()) +
                     "\nrules: " + std::to_string(kb.beliefs.rules().size()) + "\n";
  int code = 0;
  json inconsistencies = json::array();
  try {
    st::estimate_bounds(kb.beliefs);
  } catch (const st::InconsistentBounds& e) {
    for (const auto& v : e.violations()) {
      inconsistencies.push_back({{"proposition", v.prop.to_string()},
                                 {"lower", st::io::bits_to_json(v.lower)},
                                 {"upper", st::io::bits_to_json(v.upper)}});
      text += "inconsistent: " + v.prop.to_string() + " lower " + fmt_bits(v.lower) + " > upper " +
              fmt_bits(v.upper) + "\n";
    }
    code = 3;
  }
  const auto raw = st::raw_mutability_violations(kb.beliefs);
  const auto propagated = st::mutability_inheritance_check(kb.beliefs);
  for (const auto& v : raw)
    text += "warning: stored scenarios give M(" + v.rule.antecedent.to_string() + ") = " +
            fmt_bits(v.antecedent_mutability) + " < M(" + v.rule.consequent.to_string() +
            ") = " + fmt_bits(v.consequent_mutability) + "; propagation revises it\n";
  for (const auto& v : propagated)
    text += "violation: M(" + v.rule.antecedent.to_string() + ") < M(" + v.rule.consequent.to_string() + ")\n";
  if (!propagated.empty()) code = 3;
  j["inconsistent_bounds"] = inconsistencies;
  j["raw_mutability_violations"] = violations_json(raw);
  j["mutability_violations"] = violations_json(propagated);
  j["consistent"] = code == 0;
  text += code == 0 ? "status: consistent\n" : "status: inconsistent\n";
  emit(g, j, text);
  return code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relevance engine: description vs generation complexity"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--kb", g.kb_path, "Knowledge base JSON file");
  app.add_flag("--json", g.json, "Machine-readable JSON output (full precision)");
  app.add_flag("--fallback-rank", g.fallback_rank, "Charge unknown list items as one past the end");
  app.add_option("--emotion-combiner", g.combiner, "Combiner for emotional relevance: additive, max, product");
  app.add_option("--seed", g.seed, "Seed for sampled checks");
  app.add_option("--d0", g.d0, "Reference distance for distance decay, in km")->check(CLI::PositiveNumber);

  int code = 0;

  std::string csv_path, list_name;
  auto* ingest = app.add_subcommand("ingest", "Ingest a frequency-list CSV into the knowledge base");
  ingest->add_option("csv", csv_path, "CSV file with header item,count")->required();
  ingest->add_option("--name", list_name, "List name")->required();
  ingest->callback([&] { code = run_ingest(g, csv_path, list_name); });

  auto* codec = app.add_subcommand("codec", "Positional code utilities");
  codec->require_subcommand(1);
  std::vector<std::uint64_t> ranks;
  auto* encode = codec->add_subcommand("encode", "Rank to code word");
  encode->add_option("rank", ranks, "0-based ranks")->required();
  encode->callback([&] { code = run_encode(g, ranks); });
  std::vector<std::string> words;
  auto* decode = codec->add_subcommand("decode", "Code word to rank");
  decode->add_option("code", words, "Code words of 0/1 (\"\" for the empty word)")->required();
  decode->callback([&] { code = run_decode(g, words); });

  ComplexityArgs cargs;
  auto* complexity = app.add_subcommand("complexity", "Description and generation costs of single items");
  complexity->add_option("--list", cargs.list, "Ranked list name");
  complexity->add_option("--item", cargs.item, "Item in the list");
  complexity->add_option("--elapsed", cargs.elapsed, "Elapsed time T");
  complexity->add_option("--granularity", cargs.granularity, "Episode duration a (same unit as T)");
  complexity->add_option("--places", cargs.places, "Number N of distinguishable places");
  complexity->add_option("--witnesses", cargs.witnesses, "Number k of equivalent witnesses");
  complexity->add_option("--lottery", cargs.lottery_n, "Lottery size N");
  complexity->add_option("--draws", cargs.draws, "Lottery draws");
  complexity->add_option("--distance", cargs.distance, "Distance d in km (decay relative to --d0)");
  complexity->callback([&] { code = run_complexity(g, cargs); });

  std::string situation_path;
  auto* score = app.add_subcommand("score", "Score a situation descriptor");
  score->add_option("situation", situation_path, "Situation JSON, or - for stdin")->required();
  score->callback([&] { code = run_score(g, situation_path); });

  std::string records_path;
  auto* rank = app.add_subcommand("rank", "Rank records by unexpectedness");
  rank->add_option("records", records_path, "Records JSON array")->required();
  rank->callback([&] { code = run_rank(g, records_path); });

  CoincidenceArgs co;
  auto* coincidence = app.add_subcommand("coincidence", "Lower bound on the unexpectedness of a coincidence");
  coincidence->add_option("--cw1", co.cw1, "Generation complexity of s1")->required();
  coincidence->add_option("--c1", co.c1, "Description complexity of s1")->required();
  coincidence->add_option("--cw2", co.cw2, "Generation complexity of s2")->required();
  coincidence->add_option("--c2-given-1", co.c2_given_1, "Description complexity of s2 given s1");
  coincidence->add_option("--delta", co.delta, "Temporal distance between s1 and s2");
  coincidence->add_option("--granularity", co.granularity, "Episode duration a for temporal linkage");
  coincidence->add_option("--extra-bits", co.extra_bits, "Non-temporal part of C(s2|s1) with --delta");
  coincidence->callback([&] { code = run_coincidence(g, co); });

  std::string delta_path, argue_situation;
  auto* argue = app.add_subcommand("argue", "Second-order relevance of a knowledge delta");
  argue->add_option("delta", delta_path, "Delta JSON: facts, scenarios, rules to add")->required();
  argue->add_option("situation", argue_situation, "Situation JSON, or - for stdin")->required();
  argue->callback([&] { code = run_argue(g, delta_path, argue_situation); });

  auto* lint = app.add_subcommand("kb-lint", "Check knowledge-base bounds and mutability inheritance");
  lint->callback([&] { code = run_kb_lint(g); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const st::InconsistentBounds& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const st::InconsistencyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const st::EvaluationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return code;
}
