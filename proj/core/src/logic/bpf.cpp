#include "pla/logic/bpf.hpp"

#include <algorithm>

#include "pla/error.hpp"
#include "pla/logic/evaluator.hpp"
#include "pla/logic/printer.hpp"

namespace pla {

BasicProbabilityFormula::BasicProbabilityFormula(SignaturePtr signature,
                                                 std::vector<Variable> variables)
    : signature_(std::move(signature)), variables_(std::move(variables)) {}

BasicProbabilityFormula BasicProbabilityFormula::constant(SignaturePtr signature,
                                                          std::vector<Variable> variables,
                                                          double value) {
  BasicProbabilityFormula out(signature, variables);
  out.add(AtomicType(signature, variables), value);
  return out;
}

void BasicProbabilityFormula::add(AtomicType type, double value) {
  if (type.variables() != variables_) {
    throw Error(ErrorCode::InvalidArgument, "conjunct type is over different variables");
  }
  if (!(value >= 0.0 && value <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "conjunct value outside [0,1]");
  }
  if (indexed_) {
    if (!type.is_trivial() && type.is_complete() &&
        index_.emplace(type.key(), conjuncts_.size()).second) {
      // indexed
    } else {
      indexed_ = false;
      index_.clear();
    }
  }
  conjuncts_.push_back({std::move(type), value});
}

bool BasicProbabilityFormula::is_constant() const {
  return conjuncts_.size() == 1 && conjuncts_[0].type.is_trivial();
}

double BasicProbabilityFormula::evaluate(const Structure& s,
                                         std::span<const Element> values) const {
  if (values.size() != variables_.size()) {
    throw Error(ErrorCode::InvalidArgument, "argument count differs from variable count");
  }
  if (indexed_ && !conjuncts_.empty()) {
    AtomicType t = type_of(s, variables_, values);
    auto it = index_.find(t.key());
    return it == index_.end() ? 1.0 : conjuncts_[it->second].value;
  }
  double v = 1.0;
  for (const auto& c : conjuncts_) {
    if (c.type.realized_by(s, values)) v = std::min(v, c.value);
  }
  return v;
}

double BasicProbabilityFormula::value_on(const AtomicType& t) const {
  if (indexed_ && !conjuncts_.empty()) {
    auto it = index_.find(t.key());
    return it == index_.end() ? 1.0 : conjuncts_[it->second].value;
  }
  double v = 1.0;
  for (const auto& c : conjuncts_) {
    if (t.extends(c.type)) v = std::min(v, c.value);
  }
  return v;
}

FormulaPtr BasicProbabilityFormula::to_formula() const {
  FormulaPtr acc;
  for (const auto& c : conjuncts_) {
    FormulaPtr lits = c.type.to_formula();
    FormulaPtr imp = lits->is<ast::Const>() ? pla::constant(c.value)
                                             : implication(lits, pla::constant(c.value));
    acc = acc ? conjunction(acc, imp) : imp;
  }
  return acc ? acc : pla::constant(1.0);
}

std::string BasicProbabilityFormula::to_string() const { return print(*to_formula()); }

BasicProbabilityFormula fold_to_bpf(const Formula& f, const SignaturePtr& signature) {
  return fold_to_bpf(f, signature, free_variables(f));
}

BasicProbabilityFormula fold_to_bpf(const Formula& f, const SignaturePtr& signature,
                                    std::vector<Variable> variables) {
  if (!is_aggregation_free(f)) {
    throw Error(ErrorCode::NotAggregationFree, "formula contains an aggregation");
  }
  for (const auto& v : free_variables(f)) {
    if (std::find(variables.begin(), variables.end(), v) == variables.end()) {
      throw Error(ErrorCode::UnboundVariable, "free variable '" + v + "' not in the fold's variables");
    }
  }
  CompiledFormula cf(f, *signature, variables);
  BasicProbabilityFormula out(signature, variables);
  for (auto& t : enumerate_complete_types(signature, variables)) {
    const Structure s = t.canonical_structure();
    const auto a = t.canonical_assignment();
    const double v = cf.evaluate(s, a);
    out.add(std::move(t), v);
  }
  return out;
}

}  // namespace pla
