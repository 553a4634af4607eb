#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "pla/aggregators/function.hpp"

namespace pla {

using AggregationFunctionPtr = std::shared_ptr<const AggregationFunction>;

// Built-in aggregation functions.
AggregationFunctionPtr make_max();
AggregationFunctionPtr make_min();
AggregationFunctionPtr make_am();
AggregationFunctionPtr make_gm();
AggregationFunctionPtr make_noisy_or();
AggregationFunctionPtr make_invlen();

// A generalized quantifier of k sets: Q(m, X_1..X_k) over the domain [m]
// with X_i subsets given as sorted 0-based index lists.
using QuantifierPredicate =
    std::function<bool(std::size_t m, const std::vector<std::vector<std::size_t>>& sets)>;

// F(r_1..r_k) = 1 iff ([m], X_1..X_k) is in Q, where m is the longest input
// length and X_i holds the indices whose entry in r_i equals 1.
AggregationFunctionPtr quantifier_adapter(std::string name, std::size_t k,
                                          QuantifierPredicate q,
                                          std::optional<double> empty_value = std::nullopt);

// Standard quantifiers: exists and forall (k = 1), and the two-set threshold
// quantifier |X1 n X2| >= p |X1| (false when X1 is empty).
AggregationFunctionPtr exists_adapter();
AggregationFunctionPtr forall_adapter();
AggregationFunctionPtr exists_at_least_adapter(double p);

// Name-keyed lookup. Besides registered names, `find` understands the
// parametrized form "exists_at_least(p)".
class AggregatorRegistry {
 public:
  AggregatorRegistry() = default;

  // Registry preloaded with max, min, am, gm, noisy-or and invlen.
  static AggregatorRegistry with_builtins();
  static const AggregatorRegistry& builtins();

  void add(AggregationFunctionPtr f);
  AggregationFunctionPtr find(const std::string& name) const;
  // Throws UnknownAggregationFunction.
  AggregationFunctionPtr get(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, AggregationFunctionPtr> functions_;
};

}  // namespace pla
