#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "pla/logic/equality_type.hpp"

namespace pla {

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

namespace ast {

struct Const {
  double value;
};
struct Eq {
  Variable lhs, rhs;
};
struct Atom {
  std::string relation;
  std::vector<Variable> args;
};
struct Not {
  FormulaPtr operand;
};
struct And {
  FormulaPtr lhs, rhs;
};
struct Or {
  FormulaPtr lhs, rhs;
};
struct Implies {
  FormulaPtr lhs, rhs;
};
// weight * first + (1 - weight) * second
struct WeightedMean {
  FormulaPtr weight, first, second;
};
// F(bodies : bound : eq_type). The eq_type ranges over the bound variables
// and the parameters (free variables) of the node.
struct Agg {
  std::string function;
  std::vector<FormulaPtr> bodies;
  std::vector<Variable> bound;
  EqualityType eq_type;
};

}  // namespace ast

// Immutable PLA formula node. Subformulas are shared.
class Formula {
 public:
  using Node = std::variant<ast::Const, ast::Eq, ast::Atom, ast::Not, ast::And,
                            ast::Or, ast::Implies, ast::WeightedMean, ast::Agg>;

  explicit Formula(Node node) : node_(std::move(node)) {}

  const Node& node() const noexcept { return node_; }

  template <typename T>
  const T* as() const noexcept {
    return std::get_if<T>(&node_);
  }
  template <typename T>
  bool is() const noexcept {
    return std::holds_alternative<T>(node_);
  }

 private:
  Node node_;
};

// Builders. `aggregate` validates the binder (distinct bound variables that
// all occur in the equality type, and every free variable of the bodies
// decided by it); it throws InvalidArgument otherwise.
FormulaPtr constant(double value);
FormulaPtr equals(Variable lhs, Variable rhs);
FormulaPtr atom(std::string relation, std::vector<Variable> args);
FormulaPtr negation(FormulaPtr operand);
FormulaPtr conjunction(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr disjunction(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr implication(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr weighted_mean(FormulaPtr weight, FormulaPtr first, FormulaPtr second);
FormulaPtr aggregate(std::string function, std::vector<FormulaPtr> bodies,
                     std::vector<Variable> bound, EqualityType eq_type);

// Free variables in order of first occurrence (left to right). An Agg node
// contributes the free variables of its bodies and of its equality type, minus
// the bound ones.
std::vector<Variable> free_variables(const Formula& f);

bool is_aggregation_free(const Formula& f);

// Function rank: 0 for aggregation-free formulas, max over connectives, and
// max(body ranks) + |bound| for an aggregation node.
std::size_t function_rank(const Formula& f);

// Relation names used anywhere in the formula.
std::vector<std::string> relations_used(const Formula& f);

bool structurally_equal(const Formula& a, const Formula& b);

}  // namespace pla
