#pragma once

#include <span>
#include <vector>

#include "pla/aggregators/function.hpp"

namespace pla {

// Right-continuous step function on [0,1] with equal-width pieces: piece i
// covers [i/m, (i+1)/m) and takes values[i]; the value at 1 is values.back().
class StepFunction {
 public:
  explicit StepFunction(std::vector<double> values);

  std::size_t pieces() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }
  double operator()(double t) const;

  // Same function on [0,1] (ignores how the pieces are split).
  bool same_function(const StepFunction& other) const;

 private:
  std::vector<double> values_;
};

// Ordered functional representation: piece i takes r[i].
StepFunction ordered_rep(const Sequence& r);
// Unordered representation: the ordered one of r sorted ascending.
StepFunction unordered_rep(const Sequence& r);

// L1 distance, computed exactly on the merged breakpoint grid (integer
// positions in units of 1/(m*m')), and sup distance.
double l1_distance(const StepFunction& f, const StepFunction& g);
double sup_distance(const StepFunction& f, const StepFunction& g);

enum class MetricKind { L1Ordered, L1Unordered, SupOrdered, SupUnordered };

// Pseudometric between two sequences; throws EmptyInput on an empty one.
double mu(MetricKind kind, const Sequence& r, const Sequence& rho);
// k-ary variant: maximum over slots.
double mu(MetricKind kind, std::span<const Sequence> r, std::span<const Sequence> rho);

}  // namespace pla
