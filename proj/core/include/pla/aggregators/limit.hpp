#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pla/aggregators/function.hpp"

namespace pla {

// Counts summing to `length` with counts[i] / length within 1/length of
// proportions[i]; remainders go to the largest fractional parts, ties to the
// lower index.
std::vector<std::size_t> largest_remainder(std::span<const double> proportions,
                                           std::size_t length);

// A length-`length` sequence with exact (largest-remainder) proportions of
// the support values, in ascending order of c.
Sequence realize(const SupportSpectrum& spectrum, std::size_t length);

struct LimitResult {
  double value = 0.0;
  LimitMethod method = LimitMethod::None;
  // Realization length of the last numeric evaluation (0 for closed forms).
  std::size_t length = 0;
};

struct NumericLimitOptions {
  // Large enough that rounding proportions to the length moves the value by
  // well under the tolerance.
  std::size_t start_length = std::size_t{1} << 14;
  std::size_t max_length = std::size_t{1} << 20;
  double tolerance = 1e-4;
};

// Limit of F along convergence-testing sequences with the given per-slot
// spectra. Spectra are normalized first. Throws NoLimitMethod for functions
// without one and NumericNonConvergence if successive numeric estimates at
// N and 2N still differ by at least the tolerance at the maximum length.
LimitResult limit_detail(const AggregationFunction& F, std::span<const SupportSpectrum> spectra,
                         const NumericLimitOptions& options = {});
double limit(const AggregationFunction& F, std::span<const SupportSpectrum> spectra);
double limit(const AggregationFunction& F, const SupportSpectrum& spectrum);

}  // namespace pla
