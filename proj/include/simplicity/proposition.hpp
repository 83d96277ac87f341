#pragma once

// Propositions over named atoms. Values are immutable and share structure;
// construction through negate() keeps them in canonical form (no double
// negation), so structural equality is also logical identity for our needs.

#include <compare>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace simplicity {

class Proposition {
public:
  enum class Kind { Atom, Not, And, Or, Implies };

  static Proposition atom(std::string name) {
    return Proposition(std::make_shared<const Node>(Node{Kind::Atom, std::move(name), {}}));
  }

  static Proposition negate(const Proposition& p) {
    if (p.kind() == Kind::Not) return p.operand(0);
    return Proposition(std::make_shared<const Node>(Node{Kind::Not, {}, {p}}));
  }

  static Proposition conj(const Proposition& a, const Proposition& b) {
    return Proposition(std::make_shared<const Node>(Node{Kind::And, {}, {a, b}}));
  }

  static Proposition disj(const Proposition& a, const Proposition& b) {
    return Proposition(std::make_shared<const Node>(Node{Kind::Or, {}, {a, b}}));
  }

  static Proposition implies(const Proposition& a, const Proposition& b) {
    return Proposition(std::make_shared<const Node>(Node{Kind::Implies, {}, {a, b}}));
  }

  Kind kind() const { return node_->kind; }
  bool is_atom() const { return kind() == Kind::Atom; }
  const std::string& name() const { return node_->name; }
  std::size_t arity() const { return node_->operands.size(); }
  const Proposition& operand(std::size_t i) const { return node_->operands.at(i); }

  friend std::strong_ordering operator<=>(const Proposition& a, const Proposition& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.kind() <=> b.kind(); c != 0) return c;
    if (a.is_atom()) return a.name().compare(b.name()) <=> 0;
    for (std::size_t i = 0; i < a.arity(); ++i)
      if (auto c = a.operand(i) <=> b.operand(i); c != 0) return c;
    return std::strong_ordering::equal;
  }

  friend bool operator==(const Proposition& a, const Proposition& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

  std::string to_string() const {
    switch (kind()) {
    case Kind::Atom: return name();
    case Kind::Not: return "~" + operand(0).to_string();
    case Kind::And: return "(" + operand(0).to_string() + " & " + operand(1).to_string() + ")";
    case Kind::Or: return "(" + operand(0).to_string() + " | " + operand(1).to_string() + ")";
    case Kind::Implies:
      return "(" + operand(0).to_string() + " -> " + operand(1).to_string() + ")";
    }
    return {};
  }

private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Proposition> operands;
  };

  explicit Proposition(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

// a -> b, stored as a belief-base rule.
struct Rule {
  Proposition antecedent;
  Proposition consequent;

  friend auto operator<=>(const Rule&, const Rule&) = default;
  friend bool operator==(const Rule&, const Rule&) = default;
};

} // namespace simplicity
