#pragma once

// Expression language for generation machines.

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"
#include "proposition.hpp"

namespace simplicity {

class GenerationModel;

// Uniform lottery among n outcomes, drawn `draws` times independently.
struct Lottery {
  std::uint64_t n = 1;
  std::uint64_t draws = 1;
  friend bool operator==(const Lottery&, const Lottery&) = default;
};

struct FixedCost {
  ComplexityBits bits = 0;
  friend bool operator==(const FixedCost&, const FixedCost&) = default;
};

// Independently generated parts: costs add exactly.
struct IndependentProduct {
  std::vector<GenerationModel> models;
};

// Any one child suffices: cost is the cheapest child.
struct OrNode {
  std::vector<GenerationModel> models;
};

// All children required. The sum is an upper bound; shared structure is not searched.
struct AndNode {
  std::vector<GenerationModel> models;
};

// Defer to the belief base's cheapest scenario for a proposition.
struct ScenarioRef {
  Proposition target;
  friend bool operator==(const ScenarioRef&, const ScenarioRef&) = default;
};

class GenerationModel {
public:
  using Node = std::variant<Lottery, FixedCost, IndependentProduct, OrNode, AndNode, ScenarioRef>;

  GenerationModel(Lottery l) : node_(l) {
    if (l.n < 1 || l.draws < 1) throw InvalidModel("lottery needs n >= 1 and draws >= 1");
  }
  GenerationModel(FixedCost f) : node_(f) {
    if (!(f.bits >= 0)) throw InvalidModel("fixed cost must be a non-negative number of bits");
  }
  GenerationModel(IndependentProduct p) : node_(std::move(p)) {}
  GenerationModel(OrNode o) : node_(std::move(o)) {
    if (std::get<OrNode>(node_).models.empty()) throw InvalidModel("or-node needs at least one child");
  }
  GenerationModel(AndNode a) : node_(std::move(a)) {}
  GenerationModel(ScenarioRef r) : node_(std::move(r)) {}

  const Node& node() const { return node_; }

  friend bool operator==(const GenerationModel& a, const GenerationModel& b);

private:
  Node node_;
};

inline bool operator==(const IndependentProduct& a, const IndependentProduct& b) {
  return a.models == b.models;
}
inline bool operator==(const OrNode& a, const OrNode& b) { return a.models == b.models; }
inline bool operator==(const AndNode& a, const AndNode& b) { return a.models == b.models; }
inline bool operator==(const GenerationModel& a, const GenerationModel& b) {
  return a.node_ == b.node_;
}

inline GenerationModel lottery(std::uint64_t n, std::uint64_t draws = 1) {
  return Lottery{n, draws};
}
inline GenerationModel fixed(ComplexityBits bits) { return FixedCost{bits}; }
inline GenerationModel product(std::vector<GenerationModel> models) {
  return IndependentProduct{std::move(models)};
}
inline GenerationModel any_of(std::vector<GenerationModel> models) {
  return OrNode{std::move(models)};
}
inline GenerationModel all_of(std::vector<GenerationModel> models) {
  return AndNode{std::move(models)};
}
inline GenerationModel scenario_ref(Proposition target) { return ScenarioRef{std::move(target)}; }

// Collects every ScenarioRef target reachable in the model.
inline void collect_scenario_targets(const GenerationModel& m, std::vector<Proposition>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ScenarioRef>) {
          out.push_back(n.target);
        } else if constexpr (std::is_same_v<T, IndependentProduct> || std::is_same_v<T, OrNode> ||
                             std::is_same_v<T, AndNode>) {
          for (const auto& c : n.models) collect_scenario_targets(c, out);
        }
      },
      m.node());
}

} // namespace simplicity
