#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "pla/logic/evaluator.hpp"
#include "pla/logic/structure.hpp"
#include "pla/network/network.hpp"
#include "pla/network/value_set.hpp"

namespace pla {

inline constexpr std::size_t kDefaultWorldCap = std::size_t{1} << 20;

// Decorrelated per-sample seed, so sample i is the same world whatever the
// number of workers.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Draws a world from P_n: relations in processing order, tuples in
// lexicographic order, one uniform variate per tuple; a tuple is included
// iff the variate is below theta_R at that tuple. Evaluation errors are
// rethrown with the relation, tuple and n attached.
Structure sample(const PlaNetwork& net, std::size_t n, std::uint64_t seed);
Structure sample(const PlaNetwork& net, std::size_t n, std::mt19937_64& rng);

// Calls visit(worker, index, world) for sample indices 0..samples-1, world
// `index` drawn with derive_seed(seed, index). Workers take interleaved
// indices; visit must only touch state owned by its worker.
void for_each_sample(const PlaNetwork& net, std::size_t n, std::size_t samples,
                     std::uint64_t seed, unsigned workers,
                     const std::function<void(unsigned, std::size_t, const Structure&)>& visit);

// P_n(world), via the stratum-wise product of theta values.
double world_probability(const PlaNetwork& net, const Structure& world);

// Number of worlds in W_n; throws TooManyWorlds above `cap`.
std::size_t world_count(const PlaNetwork& net, std::size_t n, std::size_t cap = kDefaultWorldCap);

// Visits every world of W_n with its probability. World k sets tuple bits in
// signature order, tuples lexicographic, lowest bit first.
void for_each_world(const PlaNetwork& net, std::size_t n,
                    const std::function<void(const Structure&, double)>& visit,
                    std::size_t cap = kDefaultWorldCap);

struct WorldWeight {
  Structure structure;
  double probability;
};

std::vector<WorldWeight> exact_distribution(const PlaNetwork& net, std::size_t n,
                                            std::size_t cap = kDefaultWorldCap);

// Sum of P_n over worlds where phi(a) lands in S.
double exact_event_probability(const PlaNetwork& net, std::size_t n, const Formula& phi,
                               const Assignment& a, const ValueSet& S,
                               std::size_t cap = kDefaultWorldCap,
                               const AggregatorRegistry& registry = AggregatorRegistry::builtins());

struct Estimate {
  double value = 0.0;
  // Half-width of the 95% normal interval, 1.96 sqrt(p(1-p)/N).
  double ci = 0.0;
  std::size_t samples = 0;
};

Estimate binomial_estimate(std::size_t hits, std::size_t samples);

Estimate mc_event_probability(const PlaNetwork& net, std::size_t n, const Formula& phi,
                              const Assignment& a, const ValueSet& S, std::size_t samples,
                              std::uint64_t seed, unsigned workers = 1,
                              const AggregatorRegistry& registry = AggregatorRegistry::builtins());

}  // namespace pla
