#pragma once

// The observer's memory: ranked lists, context anchors and the belief base.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bits.hpp"
#include "codec.hpp"
#include "errors.hpp"
#include "generation_model.hpp"
#include "proposition.hpp"

namespace simplicity {

struct ListEntry {
  std::string item;
  std::uint64_t count = 0;
  friend bool operator==(const ListEntry&, const ListEntry&) = default;
};

// Salience-ordered list: count descending, ties by item name. Position is rank.
class RankedList {
public:
  RankedList() = default;

  const std::string& name() const { return name_; }
  const std::vector<ListEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  std::optional<codec::Rank> rank_of(const std::string& item) const {
    auto it = index_.find(item);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const RankedList& a, const RankedList& b) {
    return a.name_ == b.name_ && a.entries_ == b.entries_;
  }

  friend RankedList ingest_frequency_list(std::string name, std::vector<ListEntry> records);

private:
  std::string name_;
  std::vector<ListEntry> entries_;
  std::unordered_map<std::string, codec::Rank> index_;
};

inline RankedList ingest_frequency_list(std::string name, std::vector<ListEntry> records) {
  if (records.empty()) throw EmptyInput("frequency list '" + name + "' has no records");
  RankedList list;
  list.name_ = std::move(name);
  std::stable_sort(records.begin(), records.end(), [](const ListEntry& a, const ListEntry& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.item < b.item;
  });
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!list.index_.emplace(records[i].item, i).second) throw DuplicateItem(records[i].item);
  }
  list.entries_ = std::move(records);
  return list;
}

// With fallback enabled an unknown item is charged as if it sat one past the end.
inline ComplexityBits item_complexity(const RankedList& list, const std::string& item,
                                      bool fallback_rank = false) {
  if (auto r = list.rank_of(item)) return codec::code_length(*r);
  if (fallback_rank) return codec::code_length(list.size());
  throw UnknownItem(list.name(), item);
}

// Event at elapsed time T in the past, with typical episode duration a.
struct TemporalAnchor {
  double elapsed = 1;
  double granularity = 1;
  friend bool operator==(const TemporalAnchor&, const TemporalAnchor&) = default;
};

// Place picked among `places` locations; `witnesses` equivalent occupants there.
struct PlaceAnchor {
  double places = 1;
  double witnesses = 1;
  friend bool operator==(const PlaceAnchor&, const PlaceAnchor&) = default;
};

inline ComplexityBits temporal_location_complexity(const TemporalAnchor& a) {
  if (!(a.elapsed > 0) || !(a.granularity > 0))
    throw InvalidAnchor("temporal anchor needs T > 0 and a > 0");
  if (a.elapsed < a.granularity)
    throw InvalidAnchor("temporal anchor has T < a: an event cannot be located below its own granularity");
  return std::log2(a.elapsed / a.granularity);
}

// Cost of locating s2 from s1 when they are `distance` apart at granularity a.
inline ComplexityBits temporal_linkage_complexity(double distance, double granularity) {
  return temporal_location_complexity(TemporalAnchor{distance, granularity});
}

inline ComplexityBits place_generation_complexity(const PlaceAnchor& a) {
  if (!(a.places >= 1)) throw InvalidAnchor("place anchor needs N >= 1");
  return std::log2(a.places);
}

// Added on the description side: k indistinguishable candidates cost log2(k) to single out.
inline ComplexityBits witness_description_discount(const PlaceAnchor& a) {
  if (!(a.witnesses >= 1)) throw InvalidAnchor("place anchor needs k >= 1");
  return std::log2(a.witnesses);
}

// Facts, candidate scenarios per proposition, and implication rules.
class BeliefBase {
public:
  const std::set<Proposition>& facts() const { return facts_; }
  const std::map<Proposition, std::vector<GenerationModel>>& scenarios() const { return scenarios_; }
  const std::vector<Rule>& rules() const { return rules_; }

  const std::vector<GenerationModel>* scenarios_for(const Proposition& p) const {
    auto it = scenarios_.find(p);
    return it == scenarios_.end() ? nullptr : &it->second;
  }

  void add_fact(const Proposition& p) {
    if (facts_.count(Proposition::negate(p)))
      throw ContradictoryFacts("fact " + p.to_string() + " contradicts a stored fact");
    facts_.insert(p);
  }

  void add_scenario(const Proposition& target, GenerationModel model) {
    scenarios_[target].push_back(std::move(model));
  }

  void add_rule(Rule r) {
    if (std::find(rules_.begin(), rules_.end(), r) == rules_.end()) rules_.push_back(std::move(r));
  }

  friend bool operator==(const BeliefBase&, const BeliefBase&) = default;

private:
  std::set<Proposition> facts_;
  std::map<Proposition, std::vector<GenerationModel>> scenarios_;
  std::vector<Rule> rules_;
};

// Additions to a belief base, e.g. a conversational move.
struct KbDelta {
  std::vector<Proposition> facts;
  std::vector<std::pair<Proposition, GenerationModel>> scenarios;
  std::vector<Rule> rules;

  bool empty() const { return facts.empty() && scenarios.empty() && rules.empty(); }
};

inline BeliefBase apply_delta(BeliefBase base, const KbDelta& delta) {
  for (const auto& f : delta.facts) base.add_fact(f);
  for (const auto& [target, model] : delta.scenarios) base.add_scenario(target, model);
  for (const auto& r : delta.rules) base.add_rule(r);
  return base;
}

inline constexpr int kKnowledgeBaseVersion = 1;

struct KnowledgeBase {
  std::map<std::string, RankedList> lists;
  BeliefBase beliefs;

  const RankedList& list(const std::string& name) const {
    auto it = lists.find(name);
    if (it == lists.end()) throw UnknownList(name);
    return it->second;
  }

  friend bool operator==(const KnowledgeBase&, const KnowledgeBase&) = default;
};

} // namespace simplicity
