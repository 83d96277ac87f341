#pragma once

// Generation complexity: evaluation of machine expressions, cheapest known
// scenarios, implication bound propagation and mutability.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"
#include "generation_model.hpp"
#include "knowledge.hpp"
#include "proposition.hpp"

namespace simplicity {

inline ComplexityBits lottery_complexity(std::uint64_t n, std::uint64_t draws) {
  if (n < 1 || draws < 1) throw InvalidModel("lottery needs n >= 1 and draws >= 1");
  return static_cast<double>(draws) * std::log2(static_cast<double>(n));
}

struct Bounds {
  ComplexityBits lower = 0;
  ComplexityBits upper = kInfiniteBits;
  friend bool operator==(const Bounds&, const Bounds&) = default;
};

using BoundsTable = std::map<Proposition, Bounds>;

struct BoundViolation {
  Proposition prop;
  ComplexityBits lower;
  ComplexityBits upper;
};

class InconsistentBounds : public InconsistencyError {
public:
  explicit InconsistentBounds(std::vector<BoundViolation> v)
      : InconsistencyError(describe(v)), violations_(std::move(v)) {}
  const std::vector<BoundViolation>& violations() const { return violations_; }

private:
  static std::string describe(const std::vector<BoundViolation>& v) {
    std::string s = "inconsistent bounds:";
    for (const auto& b : v)
      s += " " + b.prop.to_string() + " [" + std::to_string(b.lower) + " > " +
           std::to_string(b.upper) + "]";
    return s;
  }
  std::vector<BoundViolation> violations_;
};

// Records which figures in an evaluation are bounds rather than exact values.
struct EvalTrace {
  bool and_upper_bound = false;
  bool rule_floor = false;
  std::vector<std::string> notes;
};

namespace detail {

class ScenarioSearch {
public:
  explicit ScenarioSearch(const BeliefBase& kb) : kb_(kb) {}

  ComplexityBits cost(const Proposition& f) {
    if (std::find(stack_.begin(), stack_.end(), f) != stack_.end()) return kInfiniteBits;
    stack_.push_back(f);
    ComplexityBits best = kInfiniteBits;
    if (const auto* models = kb_.scenarios_for(f))
      for (const auto& m : *models) best = std::min(best, model(m));
    switch (f.kind()) {
    case Proposition::Kind::Or:
      best = std::min({best, cost(f.operand(0)), cost(f.operand(1))});
      break;
    case Proposition::Kind::Implies:
      best = std::min({best, cost(Proposition::negate(f.operand(0))), cost(f.operand(1))});
      break;
    case Proposition::Kind::And:
      best = std::min(best, cost(f.operand(0)) + cost(f.operand(1)));
      break;
    default: break;
    }
    stack_.pop_back();
    return best;
  }

  // Nested references that cannot be resolved make the enclosing path infinite.
  ComplexityBits model(const GenerationModel& m) {
    return std::visit(
        [&](const auto& n) -> ComplexityBits {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Lottery>) {
            return lottery_complexity(n.n, n.draws);
          } else if constexpr (std::is_same_v<T, FixedCost>) {
            return n.bits;
          } else if constexpr (std::is_same_v<T, IndependentProduct> || std::is_same_v<T, AndNode>) {
            ComplexityBits sum = 0;
            for (const auto& c : n.models) sum += model(c);
            return sum;
          } else if constexpr (std::is_same_v<T, OrNode>) {
            ComplexityBits best = kInfiniteBits;
            for (const auto& c : n.models) best = std::min(best, model(c));
            return best;
          } else {
            return cost(n.target);
          }
        },
        m.node());
  }

private:
  const BeliefBase& kb_;
  std::vector<Proposition> stack_;
};

} // namespace detail

// Cheapest registered scenario for f; compound propositions also try their
// decompositions (or: min, and: sum, implication as ~a | b). +inf if none.
inline ComplexityBits scenario_complexity(const BeliefBase& kb, const Proposition& f) {
  detail::ScenarioSearch search(kb);
  return search.cost(f);
}

namespace detail {

template <class ResolveRef>
ComplexityBits evaluate_with(const GenerationModel& m, ResolveRef&& resolve, EvalTrace* trace) {
  return std::visit(
      [&](const auto& n) -> ComplexityBits {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Lottery>) {
          return lottery_complexity(n.n, n.draws);
        } else if constexpr (std::is_same_v<T, FixedCost>) {
          return n.bits;
        } else if constexpr (std::is_same_v<T, IndependentProduct>) {
          ComplexityBits sum = 0;
          for (const auto& c : n.models) sum += evaluate_with(c, resolve, trace);
          return sum;
        } else if constexpr (std::is_same_v<T, AndNode>) {
          ComplexityBits sum = 0;
          for (const auto& c : n.models) sum += evaluate_with(c, resolve, trace);
          if (trace && n.models.size() > 1) trace->and_upper_bound = true;
          return sum;
        } else if constexpr (std::is_same_v<T, OrNode>) {
          ComplexityBits best = kInfiniteBits;
          for (const auto& c : n.models) best = std::min(best, evaluate_with(c, resolve, trace));
          return best;
        } else {
          return resolve(n.target);
        }
      },
      m.node());
}

} // namespace detail

// Product: sum (independence). Or: min. And: sum, an upper bound.
// ScenarioRef: cheapest known scenario; throws UnresolvedScenario if none.
inline ComplexityBits evaluate(const GenerationModel& model, const BeliefBase& kb) {
  return detail::evaluate_with(
      model,
      [&](const Proposition& target) {
        ComplexityBits c = scenario_complexity(kb, target);
        if (is_infinite(c)) throw UnresolvedScenario(target.to_string());
        return c;
      },
      nullptr);
}

namespace detail {

inline void add_to_universe(std::set<Proposition>& u, const Proposition& p) {
  if (!u.insert(p).second) return;
  switch (p.kind()) {
  case Proposition::Kind::Atom: break;
  case Proposition::Kind::Implies:
    add_to_universe(u, Proposition::negate(p.operand(0)));
    [[fallthrough]];
  default:
    for (std::size_t i = 0; i < p.arity(); ++i) add_to_universe(u, p.operand(i));
  }
}

} // namespace detail

// Fixed point of the implication laws over the belief base:
//   a -> b      : lower(a) >= lower(b), upper(b) <= upper(a), and the same
//                 for the contrapositive ~b -> ~a
//   a | b       : lower >= min(lower(a), lower(b)), upper <= min(upper(a), upper(b))
//   a & b       : upper <= upper(a) + upper(b), and a & b implies each side
// Upper bounds start from scenario_complexity, lower bounds from the seeds.
// Throws InconsistentBounds listing every entry left with lower > upper.
inline BoundsTable propagate_bounds(const BeliefBase& kb, const BoundsTable& seeds,
                                    const std::vector<Proposition>& extra = {}) {
  std::set<Proposition> universe;
  for (const auto& [p, b] : seeds) detail::add_to_universe(universe, p);
  for (const auto& [p, models] : kb.scenarios()) detail::add_to_universe(universe, p);
  for (const auto& r : kb.rules()) {
    for (const auto& p : {r.antecedent, r.consequent}) {
      detail::add_to_universe(universe, p);
      detail::add_to_universe(universe, Proposition::negate(p));
    }
  }
  for (const auto& p : extra) detail::add_to_universe(universe, p);

  BoundsTable table;
  for (const auto& p : universe) {
    Bounds b;
    if (auto it = seeds.find(p); it != seeds.end()) b = it->second;
    b.upper = std::min(b.upper, scenario_complexity(kb, p));
    table.emplace(p, b);
  }

  struct Implication {
    Bounds* from;
    Bounds* to;
  };
  struct Disjunction {
    Bounds* self;
    Bounds* left;
    Bounds* right;
  };
  std::vector<Implication> implications;
  std::vector<Disjunction> disjunctions;
  std::vector<Disjunction> conjunctions;

  auto at = [&](const Proposition& p) { return &table.at(p); };
  for (const auto& r : kb.rules()) {
    implications.push_back({at(r.antecedent), at(r.consequent)});
    implications.push_back(
        {at(Proposition::negate(r.consequent)), at(Proposition::negate(r.antecedent))});
  }
  for (const auto& p : universe) {
    switch (p.kind()) {
    case Proposition::Kind::Or:
    case Proposition::Kind::Implies: {
      const Proposition left = p.kind() == Proposition::Kind::Or
                                   ? p.operand(0)
                                   : Proposition::negate(p.operand(0));
      disjunctions.push_back({at(p), at(left), at(p.operand(1))});
      implications.push_back({at(left), at(p)});
      implications.push_back({at(p.operand(1)), at(p)});
      break;
    }
    case Proposition::Kind::And:
      conjunctions.push_back({at(p), at(p.operand(0)), at(p.operand(1))});
      implications.push_back({at(p), at(p.operand(0))});
      implications.push_back({at(p), at(p.operand(1))});
      break;
    default: break;
    }
  }

  auto raise = [](ComplexityBits& slot, ComplexityBits v) {
    if (v > slot) { slot = v; return true; }
    return false;
  };
  auto lower_to = [](ComplexityBits& slot, ComplexityBits v) {
    if (v < slot) { slot = v; return true; }
    return false;
  };

  const std::size_t max_passes = 64 * (universe.size() + implications.size() + 1) + 1024;
  bool changed = true;
  std::size_t passes = 0;
  while (changed) {
    if (++passes > max_passes) throw std::logic_error("bound propagation failed to converge");
    changed = false;
    for (const auto& i : implications) {
      changed |= raise(i.from->lower, i.to->lower);
      changed |= lower_to(i.to->upper, i.from->upper);
    }
    for (const auto& d : disjunctions) {
      changed |= raise(d.self->lower, std::min(d.left->lower, d.right->lower));
      changed |= lower_to(d.self->upper, std::min(d.left->upper, d.right->upper));
    }
    for (const auto& c : conjunctions)
      changed |= lower_to(c.self->upper, c.left->upper + c.right->upper);
  }

  std::vector<BoundViolation> violations;
  for (const auto& [p, b] : table)
    if (b.lower > b.upper + 1e-9) violations.push_back({p, b.lower, b.upper});
  if (!violations.empty()) throw InconsistentBounds(std::move(violations));
  return table;
}

// Bounds under the observer's point estimates: every proposition with a known
// scenario is taken to cost exactly its (propagated) cheapest scenario, and the
// implication laws then derive floors for propositions that have none.
inline BoundsTable estimate_bounds(const BeliefBase& kb, const std::vector<Proposition>& extra = {}) {
  const BoundsTable first = propagate_bounds(kb, {}, extra);
  BoundsTable seeds;
  for (const auto& [p, b] : first)
    if (!is_infinite(b.upper)) seeds.emplace(p, Bounds{b.upper, b.upper});
  return propagate_bounds(kb, seeds, extra);
}

// Generation estimate for f from a table built by estimate_bounds: the
// cheapest known way to generate f, or its rule-derived floor when no way is known.
inline ComplexityBits generation_estimate(const BoundsTable& table, const Proposition& f,
                                          EvalTrace* trace = nullptr) {
  auto it = table.find(f);
  if (it != table.end()) {
    if (!is_infinite(it->second.upper)) return it->second.upper;
    if (it->second.lower > 0) {
      if (trace) {
        trace->rule_floor = true;
        trace->notes.push_back("c_w of " + f.to_string() + " is a floor implied by rules");
      }
      return it->second.lower;
    }
  }
  throw UnresolvedScenario(f.to_string());
}

// As evaluate(), resolving ScenarioRefs through an estimate_bounds table.
inline ComplexityBits evaluate(const GenerationModel& model, const BoundsTable& table,
                               EvalTrace* trace) {
  return detail::evaluate_with(
      model, [&](const Proposition& target) { return generation_estimate(table, target, trace); },
      trace);
}

// M(f) = -C_w(~f): how cheaply the belief in f could be overturned. -inf when
// nothing is known to generate ~f.
inline ComplexityBits mutability(const BeliefBase& kb, const Proposition& f) {
  const ComplexityBits c = scenario_complexity(kb, Proposition::negate(f));
  return c == 0 ? 0.0 : -c;
}

struct MutabilityViolation {
  Rule rule;
  ComplexityBits antecedent_mutability;
  ComplexityBits consequent_mutability;
};

namespace detail {

template <class MutabilityOf>
std::vector<MutabilityViolation> inheritance_violations(const BeliefBase& kb, MutabilityOf&& m) {
  std::vector<MutabilityViolation> out;
  for (const auto& r : kb.rules()) {
    const ComplexityBits ma = m(r.antecedent);
    const ComplexityBits mb = m(r.consequent);
    if (ma < mb) out.push_back({r, ma, mb});
  }
  return out;
}

} // namespace detail

// Rules a -> b whose mutabilities break M(a) >= M(b) after bound propagation.
inline std::vector<MutabilityViolation> mutability_inheritance_check(const BeliefBase& kb) {
  const BoundsTable table = propagate_bounds(kb, {});
  return detail::inheritance_violations(kb, [&](const Proposition& p) {
    const ComplexityBits c = table.at(Proposition::negate(p)).upper;
    return c == 0 ? 0.0 : -c;
  });
}

// Same check on the stored scenarios alone, before propagation. Used as a lint:
// these are the places where propagation revises a scenario cost downward.
inline std::vector<MutabilityViolation> raw_mutability_violations(const BeliefBase& kb) {
  return detail::inheritance_violations(kb, [&](const Proposition& p) { return mutability(kb, p); });
}

} // namespace simplicity
