#pragma once

// Unexpectedness and relevance judgments over situations and features.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"
#include "generation.hpp"
#include "generation_model.hpp"
#include "knowledge.hpp"

namespace simplicity {

// U = C_w - C. Negative values are situations that are "more than expected".
inline double unexpectedness(ComplexityBits c_w, ComplexityBits c) {
  if (is_infinite(c_w) && is_infinite(c)) throw UndefinedUnexpectedness();
  return c_w - c;
}

// Strict: U = 0 is not relevant.
inline bool is_relevant(double u) { return u > 0; }

struct FeatureHop;

struct RankRef {
  std::string list;
  std::string item;
  friend bool operator==(const RankRef&, const RankRef&) = default;
};

struct ExplicitBits {
  ComplexityBits bits = 0;
  friend bool operator==(const ExplicitBits&, const ExplicitBits&) = default;
};

// Describe s through a sequence of features. Each hop costs C(f) plus the
// bits still needed to pin s down given that feature; the total is their sum.
struct FeatureChain {
  std::vector<FeatureHop> hops;
};

class DescriptionEstimator {
public:
  using Node = std::variant<RankRef, ExplicitBits, FeatureChain>;

  DescriptionEstimator(RankRef r) : node_(std::move(r)) {}
  DescriptionEstimator(ExplicitBits b) : node_(b) {
    if (!(b.bits >= 0)) throw InvalidModel("explicit description bits must be non-negative");
  }
  DescriptionEstimator(FeatureChain c);

  const Node& node() const { return node_; }

  friend bool operator==(const DescriptionEstimator&, const DescriptionEstimator&);

private:
  Node node_;
};

struct FeatureRef {
  std::string name;
  DescriptionEstimator description;
  GenerationModel generation;
};

struct FeatureHop {
  FeatureRef feature;
  ComplexityBits conditional_bits = 0;
};

inline DescriptionEstimator::DescriptionEstimator(FeatureChain c) : node_(std::move(c)) {
  for (const auto& h : std::get<FeatureChain>(node_).hops)
    if (!(h.conditional_bits >= 0)) throw InvalidModel("feature hop bits must be non-negative");
}

inline bool operator==(const FeatureRef& a, const FeatureRef& b) {
  return a.name == b.name && a.description == b.description && a.generation == b.generation;
}
inline bool operator==(const FeatureHop& a, const FeatureHop& b) {
  return a.feature == b.feature && a.conditional_bits == b.conditional_bits;
}
inline bool operator==(const FeatureChain& a, const FeatureChain& b) { return a.hops == b.hops; }
inline bool operator==(const DescriptionEstimator& a, const DescriptionEstimator& b) {
  return a.node_ == b.node_;
}

// Observer-dependent emotional intensity; comparable within one scale only.
struct EmotionLevel {
  double value = 0;
};

// Distance from the observer, measured against a reference resolution d0.
struct DistanceAnchor {
  double distance = 1;
};

struct SituationDescriptor {
  std::string label;
  std::vector<DescriptionEstimator> description_estimators;
  // Absent: the situation is generated by whatever scenario the belief base
  // holds for the atom named by the label.
  std::optional<GenerationModel> generation_model;
  std::optional<TemporalAnchor> temporal;
  std::optional<PlaceAnchor> place;
  std::optional<EmotionLevel> emotion;
  std::optional<DistanceAnchor> distance;
};

using EmotionCombiner = std::function<double(double emotion, double unexpectedness)>;

inline double additive_combiner(double e, double u) { return e + u; }

inline constexpr std::uint64_t kDefaultSeed = 0x5eed5eedULL;

// Samples the combiner and throws NonMonotoneCombiner if it ever decreases
// when either argument grows.
inline void check_monotone(const EmotionCombiner& f, std::uint64_t seed = kDefaultSeed,
                           int samples = 512) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> point(-64.0, 64.0);
  std::uniform_real_distribution<double> step(1e-3, 16.0);
  for (int i = 0; i < samples; ++i) {
    const double e = point(rng), u = point(rng), d = step(rng);
    const double base = f(e, u);
    if (f(e + d, u) < base)
      throw NonMonotoneCombiner("combiner decreases in emotion at E=" + std::to_string(e) +
                                ", U=" + std::to_string(u));
    if (f(e, u + d) < base)
      throw NonMonotoneCombiner("combiner decreases in unexpectedness at E=" + std::to_string(e) +
                                ", U=" + std::to_string(u));
  }
}

// I = F(E, U). The default F is E + U; a supplied F is checked for monotonicity first.
inline double emotional_relevance(EmotionLevel e, double u, const EmotionCombiner& combiner = {},
                                  std::uint64_t seed = kDefaultSeed) {
  if (!combiner) return additive_combiner(e.value, u);
  check_monotone(combiner, seed);
  return combiner(e.value, u);
}

// Named combiners selectable from the command line. "product" is not
// monotone and is rejected by the check; it exists to exercise that path.
inline EmotionCombiner combiner_by_name(const std::string& name) {
  if (name == "additive") return additive_combiner;
  if (name == "max") return [](double e, double u) { return std::max(e, u); };
  if (name == "product") return [](double e, double u) { return e * u; };
  throw InputError("unknown emotion combiner '" + name + "' (expected additive, max or product)");
}

// Penalty added to description complexity for an event at distance d.
inline ComplexityBits distance_decay(double d, double d0) {
  if (!(d0 > 0)) throw InvalidDistance("reference distance d0 must be positive");
  if (!(d >= d0)) throw InvalidDistance("distance must be at least the reference distance d0");
  return 2.0 * std::log2(d / d0);
}

struct ScoringOptions {
  bool fallback_rank = false;
  double d0 = 1.0;  // km
  EmotionCombiner combiner;
  std::uint64_t seed = kDefaultSeed;
};

struct FeatureContribution {
  std::string name;
  double unexpectedness = 0;
};

struct RelevanceReport {
  ComplexityBits c = 0;
  ComplexityBits c_w = 0;
  double u = 0;
  bool relevant = false;
  std::vector<std::string> bound_flags;
  std::vector<FeatureContribution> feature_contributions;
  std::vector<std::string> notes;
  std::optional<double> emotional_relevance;
};

namespace detail {

inline void collect_targets(const DescriptionEstimator& e, std::vector<Proposition>& out) {
  if (const auto* chain = std::get_if<FeatureChain>(&e.node())) {
    for (const auto& h : chain->hops) {
      collect_scenario_targets(h.feature.generation, out);
      collect_targets(h.feature.description, out);
    }
  }
}

inline GenerationModel situation_generation(const SituationDescriptor& s) {
  if (s.generation_model) return *s.generation_model;
  return scenario_ref(Proposition::atom(s.label));
}

class Scorer {
public:
  Scorer(const KnowledgeBase& kb, const BoundsTable& table, const ScoringOptions& opts)
      : kb_(kb), table_(table), opts_(opts) {}

  ComplexityBits describe(const DescriptionEstimator& e) const {
    return std::visit(
        [&](const auto& n) -> ComplexityBits {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, RankRef>) {
            return item_complexity(kb_.list(n.list), n.item, opts_.fallback_rank);
          } else if constexpr (std::is_same_v<T, ExplicitBits>) {
            return n.bits;
          } else {
            ComplexityBits total = 0;
            for (const auto& h : n.hops) total += describe(h.feature.description) + h.conditional_bits;
            return total;
          }
        },
        e.node());
  }

  ComplexityBits generate(const GenerationModel& m, EvalTrace* trace = nullptr) const {
    return evaluate(m, table_, trace);
  }

  double feature_u(const FeatureRef& f) const {
    return unexpectedness(generate(f.generation), describe(f.description));
  }

private:
  const KnowledgeBase& kb_;
  const BoundsTable& table_;
  const ScoringOptions& opts_;
};

inline std::vector<Proposition> situation_targets(const SituationDescriptor& s) {
  std::vector<Proposition> out;
  collect_scenario_targets(situation_generation(s), out);
  for (const auto& e : s.description_estimators) collect_targets(e, out);
  return out;
}

} // namespace detail

inline const char* estimator_kind(const DescriptionEstimator& e) {
  switch (e.node().index()) {
  case 0: return "rank_ref";
  case 1: return "explicit_bits";
  default: return "feature_chain";
  }
}

// Scores a situation against the knowledge base:
//   C   = min over estimators + log2(T/a) + log2(k) + 2 log2(d/d0)
//   C_w = generation model (scenarios resolved through implication-aware
//         estimates) + log2(N) for a place anchor
//   U   = C_w - C, relevant iff U > 0.
inline RelevanceReport evaluate_situation(const KnowledgeBase& kb, const SituationDescriptor& s,
                                          const ScoringOptions& opts = {}) {
  if (s.description_estimators.empty())
    throw InputError("situation '" + s.label + "' has no description estimator");
  const BoundsTable table = estimate_bounds(kb.beliefs, detail::situation_targets(s));
  const detail::Scorer scorer(kb, table, opts);
  RelevanceReport report;

  std::size_t best = 0;
  ComplexityBits c = kInfiniteBits;
  for (std::size_t i = 0; i < s.description_estimators.size(); ++i) {
    const ComplexityBits ci = scorer.describe(s.description_estimators[i]);
    if (ci < c) {
      c = ci;
      best = i;
    }
  }
  const auto& winner = s.description_estimators[best];
  report.notes.push_back("description: estimator " + std::to_string(best) + " (" +
                         estimator_kind(winner) + ") won");
  if (std::holds_alternative<FeatureChain>(winner.node())) report.bound_flags.push_back("c_feature_chain");
  if (s.temporal) c += temporal_location_complexity(*s.temporal);
  if (s.place) c += witness_description_discount(*s.place);
  if (s.distance) c += distance_decay(s.distance->distance, opts.d0);

  EvalTrace trace;
  ComplexityBits c_w = scorer.generate(detail::situation_generation(s), &trace);
  if (!s.generation_model) report.notes.push_back("generation: scenario for '" + s.label + "'");
  if (s.place) c_w += place_generation_complexity(*s.place);
  if (trace.and_upper_bound) report.bound_flags.push_back("c_w_and_upper_bound");
  if (trace.rule_floor) report.bound_flags.push_back("c_w_rule_floor");
  for (auto& n : trace.notes) report.notes.push_back(std::move(n));

  report.c = c;
  report.c_w = c_w;
  report.u = unexpectedness(c_w, c);
  report.relevant = is_relevant(report.u);

  for (const auto& e : s.description_estimators)
    if (const auto* chain = std::get_if<FeatureChain>(&e.node()))
      for (const auto& h : chain->hops)
        report.feature_contributions.push_back({h.feature.name, scorer.feature_u(h.feature)});

  if (s.emotion)
    report.emotional_relevance = emotional_relevance(*s.emotion, report.u, opts.combiner, opts.seed);
  return report;
}

// U(f(s)) = C_w(f(s)) - C(f); the feature is relevant iff positive.
inline double feature_unexpectedness(const KnowledgeBase& kb, const FeatureRef& f,
                                     const ScoringOptions& opts = {}) {
  std::vector<Proposition> targets;
  collect_scenario_targets(f.generation, targets);
  detail::collect_targets(f.description, targets);
  const BoundsTable table = estimate_bounds(kb.beliefs, targets);
  return detail::Scorer(kb, table, opts).feature_u(f);
}

struct SituationCosts {
  ComplexityBits c_w = 0;
  ComplexityBits c = 0;
};

// Lower bound on U(s1 & s2) for independently generated s1, s2. `second.c`
// is the conditional description C(s2 | s1).
inline double coincidence_unexpectedness(const SituationCosts& first, const SituationCosts& second) {
  return first.c_w + second.c_w - first.c - second.c;
}

struct TwoRelevance {
  bool two_relevant = false;
  double delta_u = 0;
  RelevanceReport before;
  RelevanceReport after;
};

// t is 2-relevant w.r.t. s when U(s | t) < U(s).
inline TwoRelevance two_relevance(const KnowledgeBase& kb, const KbDelta& t,
                                  const SituationDescriptor& s, const ScoringOptions& opts = {}) {
  TwoRelevance out;
  out.before = evaluate_situation(kb, s, opts);
  KnowledgeBase updated = kb;
  updated.beliefs = apply_delta(kb.beliefs, t);
  out.after = evaluate_situation(updated, s, opts);
  out.delta_u = out.after.u == out.before.u ? 0.0 : out.after.u - out.before.u;
  out.two_relevant = out.after.u < out.before.u;
  return out;
}

// Lower bound on the unexpectedness of the unique member of an n-element
// class r singled out by feature f.
inline double record_unexpectedness(std::uint64_t n, ComplexityBits c_class,
                                    ComplexityBits c_feature_given_class) {
  if (n < 1) throw InputError("record class size must be at least 1");
  return std::log2(static_cast<double>(n)) - c_class - c_feature_given_class;
}

struct Record {
  std::string label;
  std::uint64_t n = 1;
  ComplexityBits c_class = 0;
  ComplexityBits c_feature_given_class = 0;
};

struct ScoredRecord {
  std::string label;
  double u = 0;
  friend bool operator==(const ScoredRecord&, const ScoredRecord&) = default;
};

// Descending U, ties broken by label.
inline void sort_by_unexpectedness(std::vector<ScoredRecord>& items) {
  std::stable_sort(items.begin(), items.end(), [](const ScoredRecord& a, const ScoredRecord& b) {
    if (a.u != b.u) return a.u > b.u;
    return a.label < b.label;
  });
}

inline std::vector<ScoredRecord> rank_records(const std::vector<Record>& records) {
  std::vector<ScoredRecord> out;
  out.reserve(records.size());
  for (const auto& r : records)
    out.push_back({r.label, record_unexpectedness(r.n, r.c_class, r.c_feature_given_class)});
  sort_by_unexpectedness(out);
  return out;
}

} // namespace simplicity
