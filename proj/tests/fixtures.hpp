#pragma once

// Worked situations shared by the unit and acceptance suites.

#include <cmath>
#include <string>
#include <vector>

#include <simplicity/relevance.hpp>

namespace fixtures {

using namespace simplicity;

inline std::vector<ListEntry> presidents() {
  return {{"Barak Obama", 263000000},   {"George W. Bush", 63300000}, {"John Kennedy", 57500000},
          {"Bill Clinton", 46200000},   {"Ronald Reagan", 32200000},  {"Jimmy Carter", 18200000},
          {"Richard Nixon", 14200000},  {"Lyndon Johnson", 13200000}, {"Gerald Ford", 9900000},
          {"George H. Bush", 6260000}};
}

// Week of death of a 40-year-old stranger among all living humans.
inline SituationDescriptor death() {
  SituationDescriptor s;
  s.label = "death of a distant stranger";
  s.generation_model = lottery(52 * 40);
  s.description_estimators.push_back(ExplicitBits{std::log2(7e9)});
  return s;
}

// Ball through five binary choices; the leaf is either anonymous or the only white one.
inline SituationDescriptor binary_tree_leaf(bool unique_white) {
  SituationDescriptor s;
  s.label = unique_white ? "white leaf" : "anonymous leaf";
  s.generation_model = lottery(2, 5);
  s.description_estimators.push_back(ExplicitBits{unique_white ? 0.0 : std::log2(32.0)});
  return s;
}

struct Rally {
  Proposition f1 = Proposition::atom("F is a student next year");
  Proposition f2 = Proposition::atom("F participates in the rally");
  Proposition f3 = Proposition::atom("the rally is only for students");

  // f2 -> (f1 | ~f3), f3 -> ~(~f1 & f2), with costly ways to keep F a student
  // or to open the rally.
  KnowledgeBase kb(double c_f1, double c_not_f3) const {
    KnowledgeBase out;
    out.beliefs.add_rule({f2, Proposition::disj(f1, Proposition::negate(f3))});
    out.beliefs.add_rule({f3, Proposition::negate(Proposition::conj(Proposition::negate(f1), f2))});
    out.beliefs.add_scenario(f1, fixed(c_f1));
    out.beliefs.add_scenario(Proposition::negate(f3), fixed(c_not_f3));
    return out;
  }

  // "There were people from Arcade": non-students did participate.
  KbDelta arcade(double cost) const {
    KbDelta d;
    d.scenarios.emplace_back(Proposition::conj(Proposition::negate(f1), f2), fixed(cost));
    return d;
  }

  SituationDescriptor participation() const {
    SituationDescriptor s;
    s.label = "F participates next year";
    s.generation_model = scenario_ref(f2);
    s.description_estimators.push_back(ExplicitBits{1});
    return s;
  }
};

// A record with class size n, class cost c(r) and feature cost c(f|r), written
// out in full: lottery over the class, description through class then feature.
inline SituationDescriptor record_situation(const Record& r) {
  SituationDescriptor s;
  s.label = r.label;
  s.generation_model = lottery(r.n);
  FeatureChain chain;
  chain.hops.push_back({FeatureRef{"class", ExplicitBits{r.c_class}, fixed(0)}, 0});
  chain.hops.push_back({FeatureRef{"distinguishing feature", ExplicitBits{r.c_feature_given_class}, fixed(0)}, 0});
  s.description_estimators.push_back(chain);
  return s;
}

} // namespace fixtures
