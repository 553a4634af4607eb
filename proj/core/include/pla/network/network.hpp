#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pla/aggregators/registry.hpp"
#include "pla/logic/evaluator.hpp"
#include "pla/logic/formula.hpp"
#include "pla/logic/signature.hpp"

namespace pla {

// One vertex of a network: relation R with its parents and theta_R, whose
// free variables are x1..xk for k = arity (positional: xi is coordinate i).
struct RelationSpec {
  std::string name;
  std::size_t arity = 1;
  std::vector<std::string> parents;
  FormulaPtr theta;
};

struct Stratification {
  // Maximal path rank per relation (signature order).
  std::vector<std::size_t> rank;
  // strata[r] lists the relations of rank r in signature order.
  std::vector<std::vector<std::size_t>> strata;
  bool aggregation_free = true;
};

// Free variable names of theta for a relation of arity k.
std::vector<Variable> theta_parameters(std::size_t arity);

// Checks: parents name known relations; the parent graph is acyclic
// (CycleDetected, including self-parents); theta mentions only parents
// (ThetaUsesNonParent) and only the variables x1..xk (ArityMismatch); atoms
// use the right arity (ArityMismatch).
Stratification validate(const std::vector<RelationSpec>& relations,
                        const AggregatorRegistry& registry = AggregatorRegistry::builtins());

class PlaNetwork {
 public:
  // Validates and compiles every theta. The signature follows the order of
  // `relations`.
  explicit PlaNetwork(std::vector<RelationSpec> relations,
                      const AggregatorRegistry& registry = AggregatorRegistry::builtins());

  const SignaturePtr& signature_ptr() const noexcept { return signature_; }
  const Signature& signature() const noexcept { return *signature_; }
  const std::vector<RelationSpec>& relations() const noexcept { return relations_; }
  const Stratification& stratification() const noexcept { return strat_; }
  bool aggregation_free() const noexcept { return strat_.aggregation_free; }
  const std::vector<std::size_t>& parents(std::size_t r) const { return parent_ids_[r]; }
  const CompiledFormula& theta(std::size_t r) const { return *compiled_[r]; }
  // Relations in processing order: by rank, then signature order.
  const std::vector<std::size_t>& order() const noexcept { return order_; }

 private:
  std::vector<RelationSpec> relations_;
  SignaturePtr signature_;
  Stratification strat_;
  std::vector<std::vector<std::size_t>> parent_ids_;
  std::vector<std::shared_ptr<const CompiledFormula>> compiled_;
  std::vector<std::size_t> order_;
};

}  // namespace pla
