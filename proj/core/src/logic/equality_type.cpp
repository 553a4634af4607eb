#include "pla/logic/equality_type.hpp"

#include <algorithm>
#include <map>

#include "pla/error.hpp"

namespace pla {

namespace {

std::vector<int> canonical_rgs(const std::vector<int>& labels) {
  std::map<int, int> remap;
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = remap.try_emplace(labels[i], static_cast<int>(remap.size()));
    out[i] = it->second;
  }
  return out;
}

}  // namespace

EqualityType::EqualityType(std::vector<Variable> variables,
                           std::vector<int> class_ids)
    : variables_(std::move(variables)) {
  if (class_ids.size() != variables_.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "equality type: class id count differs from variable count");
  }
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (variables_[i] == variables_[j]) {
        throw Error(ErrorCode::InvalidArgument,
                    "equality type: repeated variable '" + variables_[i] + "'");
      }
    }
  }
  classes_ = canonical_rgs(class_ids);
  num_classes_ = 0;
  for (int c : classes_) num_classes_ = std::max<std::size_t>(num_classes_, c + 1);
}

EqualityType EqualityType::all_distinct(std::vector<Variable> variables) {
  std::vector<int> ids(variables.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
  return EqualityType(std::move(variables), std::move(ids));
}

EqualityType EqualityType::all_equal(std::vector<Variable> variables) {
  std::vector<int> ids(variables.size(), 0);
  return EqualityType(std::move(variables), std::move(ids));
}

std::size_t EqualityType::position(const Variable& v) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i] == v) return i;
  }
  return npos;
}

bool EqualityType::equal(const Variable& a, const Variable& b) const {
  const auto pa = position(a);
  const auto pb = position(b);
  if (pa == npos || pb == npos) {
    throw Error(ErrorCode::UnboundVariable,
                "equality type does not mention '" + (pa == npos ? a : b) + "'");
  }
  return classes_[pa] == classes_[pb];
}

EqualityType EqualityType::restrict(std::span<const Variable> sub) const {
  std::vector<Variable> vars(sub.begin(), sub.end());
  std::vector<int> ids;
  ids.reserve(vars.size());
  for (const auto& v : vars) {
    const auto p = position(v);
    if (p == npos) {
      throw Error(ErrorCode::UnboundVariable,
                  "cannot restrict equality type to unknown variable '" + v + "'");
    }
    ids.push_back(classes_[p]);
  }
  return EqualityType(std::move(vars), std::move(ids));
}

bool EqualityType::holds(std::span<const Element> values) const {
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if ((values[i] == values[j]) != (classes_[i] == classes_[j])) return false;
    }
  }
  return true;
}

EqualityType EqualityType::of_tuple(std::vector<Variable> variables,
                                    std::span<const Element> values) {
  std::vector<int> ids(values.begin(), values.end());
  return EqualityType(std::move(variables), std::move(ids));
}

std::string EqualityType::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    for (std::size_t j = i + 1; j < variables_.size(); ++j) {
      if (!out.empty()) out += ", ";
      out += variables_[i] + (classes_[i] == classes_[j] ? "=" : "!=") + variables_[j];
    }
  }
  return out;
}

std::vector<EqualityType> enumerate_equality_types(
    const std::vector<Variable>& variables) {
  std::vector<EqualityType> out;
  const std::size_t k = variables.size();
  std::vector<int> rgs(k, 0);
  if (k == 0) {
    out.emplace_back(variables, rgs);
    return out;
  }
  // Iterate restricted-growth strings in lexicographic order.
  while (true) {
    out.emplace_back(variables, rgs);
    std::size_t i = k;
    bool advanced = false;
    while (i-- > 1) {
      int prefix_max = 0;
      for (std::size_t j = 0; j < i; ++j) prefix_max = std::max(prefix_max, rgs[j]);
      if (rgs[i] <= prefix_max) {
        ++rgs[i];
        std::fill(rgs.begin() + static_cast<std::ptrdiff_t>(i) + 1, rgs.end(), 0);
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return out;
}

std::vector<int> equality_pattern(std::span<const Element> values) {
  std::vector<int> out(values.size());
  int next = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = -1;
    for (std::size_t j = 0; j < i; ++j) {
      if (values[j] == values[i]) {
        out[i] = out[j];
        break;
      }
    }
    if (out[i] < 0) out[i] = next++;
  }
  return out;
}

}  // namespace pla
