#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <simplicity/generation.hpp>

#include "random_kb.hpp"

using namespace simplicity;

namespace {

const Proposition a = Proposition::atom("a");
const Proposition b = Proposition::atom("b");
const Proposition c = Proposition::atom("c");

Proposition neg(const Proposition& p) { return Proposition::negate(p); }

} // namespace

TEST(Lottery, Values) {
  // 6 log2(49) = 33.688...; computed here through natural logs.
  EXPECT_NEAR(lottery_complexity(49, 6), 6 * std::log(49.0) / std::log(2.0), 1e-12);
  EXPECT_NEAR(lottery_complexity(49, 6), 33.69, 0.01);
  EXPECT_EQ(lottery_complexity(32, 1), 5);
  EXPECT_EQ(lottery_complexity(16, 1), 4);
  EXPECT_EQ(lottery_complexity(1, 7), 0);
  EXPECT_THROW(lottery_complexity(0, 1), InvalidModel);
  EXPECT_THROW(lottery(3, 0), InvalidModel);
}

TEST(Evaluate, Nodes) {
  const BeliefBase kb;
  // Same number twice: the generation machine has no memory.
  EXPECT_NEAR(evaluate(product({lottery(49), lottery(49)}), kb), 2 * std::log2(49.0), 1e-12);
  EXPECT_NEAR(evaluate(product({lottery(49), lottery(49)}), kb), 11.22, 0.01);
  EXPECT_EQ(evaluate(any_of({fixed(10), fixed(3)}), kb), 3);
  EXPECT_EQ(evaluate(product({}), kb), 0);
  EXPECT_EQ(evaluate(all_of({fixed(2), fixed(5), fixed(1)}), kb), 8);
  EXPECT_THROW(any_of({}), InvalidModel);
  EXPECT_THROW(fixed(-1), InvalidModel);
}

TEST(Evaluate, AndNodeIsSumOfAllChildren) {
  // Only these scenarios exist: every joint construction picks one scenario
  // per conjunct. Enumerate all picks and take the cheapest.
  const std::vector<std::vector<double>> options = {{2, 6}, {5, 9}, {1}};
  BeliefBase kb;
  std::vector<Proposition> parts;
  for (std::size_t i = 0; i < options.size(); ++i) {
    parts.push_back(Proposition::atom("p" + std::to_string(i)));
    for (double x : options[i]) kb.add_scenario(parts.back(), fixed(x));
  }
  double cheapest = kInfiniteBits;
  for (double x : options[0])
    for (double y : options[1])
      for (double z : options[2]) cheapest = std::min(cheapest, x + y + z);
  ASSERT_EQ(cheapest, 8);
  std::vector<GenerationModel> refs;
  for (const auto& p : parts) refs.push_back(scenario_ref(p));
  EXPECT_EQ(evaluate(all_of(refs), kb), cheapest);
  EXPECT_EQ(scenario_complexity(kb, Proposition::conj(parts[0], Proposition::conj(parts[1], parts[2]))),
            cheapest);
}

TEST(Evaluate, LawsOnRandomModels) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> bits(0, 40);
  const BeliefBase kb;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<GenerationModel> kids;
    std::vector<double> values;
    const int n = std::uniform_int_distribution<int>(1, 5)(rng);
    for (int i = 0; i < n; ++i) {
      values.push_back(bits(rng));
      kids.push_back(fixed(values.back()));
    }
    double sum = 0, mx = 0;
    for (double v : values) { sum += v; mx = std::max(mx, v); }
    ASSERT_EQ(evaluate(any_of(kids), kb), *std::min_element(values.begin(), values.end()));
    ASSERT_EQ(evaluate(product(kids), kb), sum);
    const double conj = evaluate(all_of(kids), kb);
    ASSERT_EQ(conj, sum);
    ASSERT_GE(conj, mx);
  }
}

TEST(Evaluate, ScenarioRef) {
  BeliefBase kb;
  kb.add_scenario(a, fixed(12));
  kb.add_scenario(a, fixed(7));
  kb.add_scenario(a, lottery(512));
  EXPECT_EQ(evaluate(scenario_ref(a), kb), 7);
  try {
    evaluate(scenario_ref(b), kb);
    FAIL();
  } catch (const UnresolvedScenario& e) {
    EXPECT_EQ(e.target(), "b");
  }
}

TEST(ScenarioComplexity, MinimumAndMissing) {
  BeliefBase kb;
  for (double x : {12.0, 7.0, 9.0}) kb.add_scenario(a, fixed(x));
  EXPECT_EQ(scenario_complexity(kb, a), 7);
  EXPECT_TRUE(is_infinite(scenario_complexity(kb, b)));
}

TEST(ScenarioComplexity, Decomposition) {
  BeliefBase kb;
  kb.add_scenario(a, fixed(4));
  kb.add_scenario(b, fixed(6));
  // Brute force over the two ways to obtain a | b.
  const double oracle = std::min(4.0, 6.0);
  EXPECT_EQ(scenario_complexity(kb, Proposition::disj(a, b)), oracle);
  EXPECT_EQ(scenario_complexity(kb, Proposition::conj(a, b)), 10);
  EXPECT_EQ(scenario_complexity(kb, Proposition::implies(neg(a), b)), 4);
  EXPECT_EQ(scenario_complexity(kb, neg(neg(a))), 4);
  kb.add_scenario(Proposition::disj(a, b), fixed(1));
  EXPECT_EQ(scenario_complexity(kb, Proposition::disj(a, b)), 1);
}

TEST(ScenarioComplexity, CyclicReferencesDoNotGenerate) {
  BeliefBase kb;
  kb.add_scenario(a, product({fixed(1), scenario_ref(a)}));
  EXPECT_TRUE(is_infinite(scenario_complexity(kb, a)));
  kb.add_scenario(b, fixed(3));
  kb.add_scenario(a, product({fixed(1), scenario_ref(b)}));
  EXPECT_EQ(scenario_complexity(kb, a), 4);
}

TEST(ScenarioComplexity, AddingScenariosNeverIncreases) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    auto r = testkb::make_random_kb(rng);
    std::vector<double> before;
    for (const auto& x : r.atoms) before.push_back(scenario_complexity(r.kb, x));
    r.kb.add_scenario(r.atoms[0], fixed(std::uniform_real_distribution<double>(0, 20)(rng)));
    for (std::size_t i = 0; i < r.atoms.size(); ++i)
      ASSERT_LE(scenario_complexity(r.kb, r.atoms[i]), before[i]);
  }
}

TEST(PropagateBounds, DirectImplication) {
  BeliefBase kb;
  kb.add_rule({a, b});
  const auto t = propagate_bounds(kb, {{b, {8, kInfiniteBits}}});
  EXPECT_EQ(t.at(a).lower, 8);
  EXPECT_EQ(t.at(b).lower, 8);
}

TEST(PropagateBounds, UpperFlowsDownImplications) {
  BeliefBase kb;
  kb.add_rule({a, b});
  kb.add_scenario(a, fixed(3));
  kb.add_scenario(b, fixed(10));
  const auto t = propagate_bounds(kb, {});
  EXPECT_EQ(t.at(b).upper, 3);
}

TEST(PropagateBounds, RallyDisjunction) {
  const auto f1 = Proposition::atom("f1"), f2 = Proposition::atom("f2"), f3 = Proposition::atom("f3");
  BeliefBase kb;
  kb.add_rule({f2, Proposition::disj(f1, neg(f3))});
  for (auto [l1, l3] : {std::pair{20.0, 18.0}, {5.0, 9.0}, {7.0, 7.0}}) {
    const auto t = propagate_bounds(kb, {{f1, {l1, kInfiniteBits}}, {neg(f3), {l3, kInfiniteBits}}});
    EXPECT_EQ(t.at(f2).lower, std::min(l1, l3));
  }
}

TEST(PropagateBounds, ReportsAllInconsistencies) {
  BeliefBase kb;
  kb.add_rule({a, b});
  kb.add_scenario(a, fixed(2));
  try {
    propagate_bounds(kb, {{b, {5, kInfiniteBits}}, {c, {9, 1}}});
    FAIL();
  } catch (const InconsistentBounds& e) {
    std::set<std::string> props;
    for (const auto& v : e.violations()) props.insert(v.prop.to_string());
    EXPECT_EQ(props, (std::set<std::string>{"a", "b", "c"}));
  }
}

TEST(PropagateBounds, MatchesExhaustiveOracleOnRandomKbs) {
  std::mt19937_64 rng(20240601);
  int consistent = 0, inconsistent = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto r = testkb::make_random_kb(rng);
    const auto pos = testkb::oracle_bounds(r, false);
    const auto negs = testkb::oracle_bounds(r, true);
    if (!pos || !negs) {
      EXPECT_THROW(propagate_bounds(r.kb, r.seeds, testkb::literals(r)), InconsistentBounds) << "trial " << trial;
      ++inconsistent;
      continue;
    }
    ++consistent;
    const auto t = propagate_bounds(r.kb, r.seeds, testkb::literals(r));
    for (std::size_t i = 0; i < r.atoms.size(); ++i) {
      ASSERT_EQ(t.at(r.atoms[i]).lower, pos->min_value[i]) << "trial " << trial;
      ASSERT_EQ(t.at(r.atoms[i]).upper, pos->max_value[i]) << "trial " << trial;
      ASSERT_EQ(t.at(neg(r.atoms[i])).lower, negs->min_value[i]) << "trial " << trial;
      ASSERT_EQ(t.at(neg(r.atoms[i])).upper, negs->max_value[i]) << "trial " << trial;
    }
    for (const auto& rule : r.kb.rules()) ASSERT_GE(t.at(rule.antecedent).lower, t.at(rule.consequent).lower);
  }
  EXPECT_GT(consistent, 50);
  EXPECT_GT(inconsistent, 5);
}

TEST(Mutability, Definition) {
  BeliefBase kb;
  kb.add_scenario(neg(a), fixed(10));
  EXPECT_EQ(mutability(kb, a), -10);
  EXPECT_EQ(mutability(kb, b), -kInfiniteBits);
  kb.add_scenario(neg(c), fixed(0));
  EXPECT_EQ(mutability(kb, c), 0);
  EXPECT_FALSE(std::signbit(mutability(kb, c)));
}

TEST(Mutability, BankBalanceMoreMutableThanCapital) {
  const auto balance = Proposition::atom("bank balance positive");
  const auto paris = Proposition::atom("Paris is capital");
  BeliefBase kb;
  for (double x : {14.0, 9.0, 11.0}) kb.add_scenario(neg(balance), fixed(x));
  kb.add_scenario(neg(paris), fixed(25));
  EXPECT_EQ(mutability(kb, balance), -9);
  EXPECT_EQ(mutability(kb, paris), -25);
  EXPECT_GT(mutability(kb, balance), mutability(kb, paris));
}

TEST(Mutability, InheritanceCheck) {
  BeliefBase kb;
  kb.add_rule({a, b});
  EXPECT_TRUE(mutability_inheritance_check(kb).empty());  // -inf >= -inf
  kb.add_scenario(neg(a), fixed(3));
  kb.add_scenario(neg(b), fixed(12));
  EXPECT_TRUE(mutability_inheritance_check(kb).empty());
  EXPECT_TRUE(raw_mutability_violations(kb).empty());

  BeliefBase reversed;
  reversed.add_rule({a, b});
  reversed.add_scenario(neg(a), fixed(12));
  reversed.add_scenario(neg(b), fixed(3));
  const auto raw = raw_mutability_violations(reversed);
  ASSERT_EQ(raw.size(), 1u);
  EXPECT_EQ(raw[0].antecedent_mutability, -12);
  EXPECT_EQ(raw[0].consequent_mutability, -3);
  // ~b -> ~a lets the cheap ~b scenario generate ~a as well.
  EXPECT_TRUE(mutability_inheritance_check(reversed).empty());
}

TEST(Mutability, NoViolationsAfterPropagationOnRandomKbs) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const auto r = testkb::make_random_kb(rng);
    ASSERT_TRUE(mutability_inheritance_check(r.kb).empty()) << "trial " << trial;
    if (auto negs = testkb::oracle_bounds(testkb::RandomKb{r.atoms, r.rules, r.kb, {}, r.values}, true)) {
      const auto t = propagate_bounds(r.kb, {}, testkb::literals(r));
      for (std::size_t i = 0; i < r.atoms.size(); ++i)
        ASSERT_EQ(t.at(neg(r.atoms[i])).upper, negs->max_value[i]);
    }
  }
}

TEST(EstimateBounds, FloorWhenNoScenario) {
  BeliefBase kb;
  kb.add_rule({a, Proposition::disj(b, c)});
  kb.add_scenario(b, fixed(20));
  kb.add_scenario(c, fixed(18));
  const auto t = estimate_bounds(kb);
  EvalTrace trace;
  EXPECT_EQ(generation_estimate(t, a, &trace), 18);
  EXPECT_TRUE(trace.rule_floor);
  EXPECT_EQ(generation_estimate(t, b), 20);
  EXPECT_THROW(generation_estimate(t, Proposition::atom("zzz")), UnresolvedScenario);
}

TEST(EstimateBounds, CheapDisjunctionAgainstExpensiveDisjunctsIsInconsistent) {
  BeliefBase kb;
  kb.add_rule({a, Proposition::disj(b, c)});
  kb.add_scenario(b, fixed(10));
  kb.add_scenario(c, fixed(12));
  kb.add_scenario(a, fixed(4));
  EXPECT_NO_THROW(propagate_bounds(kb, {}));
  EXPECT_THROW(estimate_bounds(kb), InconsistentBounds);
}
