#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pla/logic/structure.hpp"

namespace pla {

using Variable = std::string;

// A complete atomic type over the empty signature: a partition of a variable
// list into equality classes. Class ids are kept in restricted-growth form
// (first occurrence order), so two partitions compare equal iff they are the
// same partition of the same variable list.
class EqualityType {
 public:
  EqualityType() = default;
  // `class_ids[i]` is any label for the class of variables[i]; labels are
  // canonicalised. Throws InvalidArgument on repeated variables.
  EqualityType(std::vector<Variable> variables, std::vector<int> class_ids);

  static EqualityType all_distinct(std::vector<Variable> variables);
  static EqualityType all_equal(std::vector<Variable> variables);

  const std::vector<Variable>& variables() const noexcept { return variables_; }
  std::size_t size() const noexcept { return variables_.size(); }
  std::size_t num_classes() const noexcept { return num_classes_; }
  int class_of(std::size_t position) const { return classes_[position]; }
  const std::vector<int>& class_ids() const noexcept { return classes_; }

  // Position of `v` in variables(), or npos.
  std::size_t position(const Variable& v) const;
  bool contains(const Variable& v) const { return position(v) != npos; }
  bool equal(const Variable& a, const Variable& b) const;

  // Restriction to a sub-list of variables (every one must be present).
  EqualityType restrict(std::span<const Variable> sub) const;

  // True iff `values[i]` (the element assigned to variables()[i]) realise
  // exactly this equality pattern.
  bool holds(std::span<const Element> values) const;

  // The pattern realised by a tuple of elements.
  static EqualityType of_tuple(std::vector<Variable> variables,
                               std::span<const Element> values);

  // Literal listing, e.g. "x!=y, y=z".
  std::string to_string() const;

  bool operator==(const EqualityType&) const = default;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<Variable> variables_;
  std::vector<int> classes_;
  std::size_t num_classes_ = 0;
};

// Every partition of `variables`, in lexicographic order of the
// restricted-growth string.
std::vector<EqualityType> enumerate_equality_types(
    const std::vector<Variable>& variables);

// Restricted-growth key of a tuple of elements (its equality pattern).
std::vector<int> equality_pattern(std::span<const Element> values);

}  // namespace pla
