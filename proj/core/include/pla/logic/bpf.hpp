#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pla/logic/atomic_type.hpp"
#include "pla/logic/formula.hpp"
#include "pla/logic/structure.hpp"

namespace pla {

// A conjunction of implications (type -> constant) over a fixed variable list.
// Its value at a tuple is the minimum constant over the conjuncts whose type
// the tuple realises, or 1 if there is none.
class BasicProbabilityFormula {
 public:
  struct Conjunct {
    AtomicType type;
    double value;
  };

  BasicProbabilityFormula(SignaturePtr signature, std::vector<Variable> variables);
  // The single conjunct (T -> value).
  static BasicProbabilityFormula constant(SignaturePtr signature,
                                          std::vector<Variable> variables, double value);

  const SignaturePtr& signature_ptr() const noexcept { return signature_; }
  const std::vector<Variable>& variables() const noexcept { return variables_; }
  const std::vector<Conjunct>& conjuncts() const noexcept { return conjuncts_; }
  std::size_t size() const noexcept { return conjuncts_.size(); }

  // Throws InvalidArgument if the type's variables differ from ours.
  void add(AtomicType type, double value);

  // True for a single conjunct with the trivial type.
  bool is_constant() const;

  // values[i] is the element for variables()[i].
  double evaluate(const Structure& s, std::span<const Element> values) const;
  // Value on any tuple realising the complete type `t` over variables().
  double value_on(const AtomicType& t) const;

  FormulaPtr to_formula() const;
  std::string to_string() const;

 private:
  SignaturePtr signature_;
  std::vector<Variable> variables_;
  std::vector<Conjunct> conjuncts_;
  // Key lookup, valid while every conjunct is complete with a unique key.
  std::unordered_map<std::string, std::size_t> index_;
  bool indexed_ = true;
};

// Exact fold of an aggregation-free formula into a basic probability formula
// over `variables` (default: its free variables, which must all be listed).
// One conjunct per complete type, in enumeration order. Throws
// NotAggregationFree on an Agg node.
BasicProbabilityFormula fold_to_bpf(const Formula& f, const SignaturePtr& signature);
BasicProbabilityFormula fold_to_bpf(const Formula& f, const SignaturePtr& signature,
                                    std::vector<Variable> variables);

}  // namespace pla
