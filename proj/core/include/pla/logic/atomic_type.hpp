#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pla/logic/equality_type.hpp"
#include "pla/logic/formula.hpp"
#include "pla/logic/structure.hpp"

namespace pla {

enum class Mark : std::int8_t { Negative = -1, Undecided = 0, Positive = 1 };

// An atomic sigma-type over a variable list: an equality part plus a mark per
// relational literal. Literals are indexed by tuples of equality classes, so
// a type always respects its own equalities and is consistent by construction.
// A type without an equality part is the trivial type (no literals at all).
class AtomicType {
 public:
  // Trivial (empty) type over `variables`.
  AtomicType(SignaturePtr signature, std::vector<Variable> variables);
  // All relational literals undecided.
  AtomicType(SignaturePtr signature, EqualityType eq);

  const Signature& signature() const noexcept { return *signature_; }
  const SignaturePtr& signature_ptr() const noexcept { return signature_; }
  const std::vector<Variable>& variables() const noexcept { return variables_; }
  const std::optional<EqualityType>& eq_part() const noexcept { return eq_; }

  bool is_trivial() const noexcept { return !eq_.has_value(); }
  bool is_complete() const;

  std::size_t num_classes() const { return eq_ ? eq_->num_classes() : 0; }

  // Literal access by relation index and tuple of class ids.
  Mark mark(std::size_t relation, std::span<const int> classes) const;
  void set_mark(std::size_t relation, std::span<const int> classes, Mark m);
  const std::vector<std::vector<Mark>>& marks() const noexcept { return marks_; }
  std::vector<std::vector<Mark>>& mutable_marks() noexcept { return marks_; }

  // True iff every literal of the type holds for the tuple assigned to
  // variables() (values[i] is the element for variables()[i]).
  bool realized_by(const Structure& s, std::span<const Element> values) const;

  // Restriction p|sub: equalities and literals mentioning only `sub`.
  AtomicType restrict(std::span<const Variable> sub) const;

  // True iff every literal of `smaller` (over a subset of our variables)
  // belongs to this type.
  bool extends(const AtomicType& smaller) const;

  // Structure with one element per equality class realising the type; the
  // element of class c is c + 1. Requires a non-trivial type.
  Structure canonical_structure() const;
  // Element assigned to each variable in canonical_structure().
  std::vector<Element> canonical_assignment() const;

  // Byte key identifying the type (equality classes and marks).
  std::string key() const;

  std::string to_string() const;
  // Conjunction of the literals as a formula (constant 1 for no literals).
  // Equality literals are emitted for every pair of variables so the formula
  // mentions all of them.
  FormulaPtr to_formula() const;

  bool operator==(const AtomicType& other) const;

 private:
  std::size_t literal_index(std::size_t relation, std::span<const int> classes) const;

  SignaturePtr signature_;
  std::vector<Variable> variables_;
  std::optional<EqualityType> eq_;
  std::vector<std::vector<Mark>> marks_;
};

// The complete type realised by `values` in `s`.
AtomicType type_of(const Structure& s, std::vector<Variable> variables,
                   std::span<const Element> values);

// All complete atomic types over `variables` extending `constraint` (if any),
// ordered by equality partition then literal bitmask (bit set = positive).
std::vector<AtomicType> enumerate_complete_types(
    const SignaturePtr& signature, const std::vector<Variable>& variables,
    const AtomicType* constraint = nullptr);

}  // namespace pla
