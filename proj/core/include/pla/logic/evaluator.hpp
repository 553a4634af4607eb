#pragma once

#include <map>
#include <memory>
#include <span>
#include <vector>

#include "pla/aggregators/registry.hpp"
#include "pla/logic/formula.hpp"
#include "pla/logic/structure.hpp"

namespace pla {

using Assignment = std::map<Variable, Element>;

// A formula resolved against a signature and a fixed order of its free
// variables: relation names become indices, variables become slots, and
// aggregation functions are looked up once. Evaluation is then allocation-light
// and can be shared across threads.
class CompiledFormula {
 public:
  // Throws UnknownRelation, ArityMismatch, UnknownAggregationFunction, or
  // UnboundVariable when a free variable of `f` is missing from `parameters`.
  CompiledFormula(const Formula& f, const Signature& signature,
                  std::vector<Variable> parameters,
                  const AggregatorRegistry& registry = AggregatorRegistry::builtins());
  ~CompiledFormula();
  CompiledFormula(CompiledFormula&&) noexcept;
  CompiledFormula& operator=(CompiledFormula&&) noexcept;

  const std::vector<Variable>& parameters() const noexcept { return parameters_; }
  // True iff no relation atom occurs, so the value depends only on the
  // equality pattern of the arguments (and n).
  bool relation_free() const noexcept { return relation_free_; }

  // values[i] is the element assigned to parameters()[i].
  double evaluate(const Structure& s, std::span<const Element> values) const;

  struct Node;

 private:
  std::vector<Variable> parameters_;
  std::unique_ptr<Node> root_;
  std::size_t slot_count_ = 0;
  bool relation_free_ = true;
};

// Value of `f` in `s` under `a`, which must cover free_variables(f).
double evaluate(const Structure& s, const Formula& f, const Assignment& a,
                const AggregatorRegistry& registry = AggregatorRegistry::builtins());

}  // namespace pla
