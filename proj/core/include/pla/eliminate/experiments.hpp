#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pla/aggregators/registry.hpp"
#include "pla/logic/bpf.hpp"
#include "pla/network/inference.hpp"
#include "pla/network/network.hpp"
#include "pla/network/value_set.hpp"

namespace pla {

struct ConvergenceOptions {
  std::vector<std::size_t> n_grid;
  double epsilon = 0.05;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::optional<ValueSet> value_set;
};

struct ConvergenceRow {
  std::size_t n = 0;
  double epsilon = 0.0;
  // P(max over tuples of |phi - psi| > epsilon); absent without psi.
  std::optional<Estimate> exceed;
  // Distinct values of psi, ascending, and P(|phi(1..k) - d_i| <= epsilon).
  std::vector<double> d;
  std::vector<Estimate> near;
  // P(phi(1..k) in the value set), if one was given.
  std::optional<Estimate> in_value_set;
};

// Monte Carlo comparison of phi with its elimination psi over a grid of
// domain sizes. The point estimates use the tuple (1, ..., k) for the k free
// variables. Worlds for row n come from the same seed for every n.
std::vector<ConvergenceRow> convergence_experiment(
    const PlaNetwork& net, const Formula& phi, const BasicProbabilityFormula* psi,
    const ConvergenceOptions& options,
    const AggregatorRegistry& registry = AggregatorRegistry::builtins());

// Header n,epsilon,p_exceed,ci_exceed, then d_i,p_near_i,ci_i per value of
// psi, then ci_value_set,p_value_set when a value set was given. Missing
// estimates print as "nan".
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

struct SaturationResult {
  double alpha = 0.0;
  std::size_t dim = 0;
  // Fraction of worlds in which every tuple realising q has between
  // alpha n^dim / (1 + delta) and alpha (1 + delta) n^dim extensions
  // realising p.
  Estimate frequency;
  // Worlds in which no tuple realises q (these pass vacuously).
  std::size_t vacuous = 0;
};

// q must be p restricted to its own variables, which come first in p; the
// remaining variables of p are the bound ones and span dim > 0 new classes.
SaturationResult saturation_diagnostic(const PlaNetwork& net, const AtomicType& p,
                                       const AtomicType& q, double delta, std::size_t n,
                                       std::size_t samples, std::uint64_t seed,
                                       unsigned workers = 1);

}  // namespace pla
