#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pla/aggregators/function.hpp"

namespace pla {

enum class JitterMode {
  Uniform,  // offsets drawn uniformly from [-jitter, jitter]
  Shift,    // every entry moved by +jitter (or -jitter where that would exceed 1)
};

// A shuffled sequence realising the spectrum at `length` with
// largest-remainder counts, each entry within `jitter` of its support value
// (clamped to [0,1]). Throws JitterTooLarge when 2 * jitter reaches the
// smallest gap between support values.
Sequence gen_convergence_testing(const SupportSpectrum& spectrum, std::size_t length,
                                 double jitter, std::uint64_t seed,
                                 JitterMode mode = JitterMode::Uniform);

// Same, with explicit per-point counts (in ascending order of c).
Sequence gen_with_counts(const SupportSpectrum& spectrum, const std::vector<std::size_t>& counts,
                         double jitter, std::mt19937_64& rng, JitterMode mode);

// One spectrum per input slot.
using SpectrumTuple = std::vector<SupportSpectrum>;

// Random spectrum with 1..max_points support values in [min_c, 1], pairwise
// at least `min_gap` apart, and every proportion at least `min_alpha`.
SupportSpectrum random_spectrum(std::mt19937_64& rng, std::size_t max_points = 3,
                                double min_c = 0.05, double min_gap = 0.05,
                                double min_alpha = 0.05);

struct AdmissibilityOptions {
  std::vector<std::size_t> lengths{10, 100, 1000, 10000};
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  // Pass iff the largest gap at the largest length is below this.
  double threshold = 0.02;
  // Jitter at length m is jitter_scale / m, kept below half the smallest gap.
  double jitter_scale = 1.0;
  // Perturb per-point counts by up to ceil(m^(1/3)) (keeping each >= 1).
  bool perturb_counts = true;
};

struct AdmissibilityRow {
  std::size_t spectrum = 0;
  std::size_t length = 0;
  double max_gap = 0.0;
};

struct AdmissibilityReport {
  std::string function;
  std::vector<SpectrumTuple> spectra;
  std::vector<AdmissibilityRow> rows;
  double threshold = 0.0;
  std::size_t trials = 0;
  // Largest gap over all spectra at the largest length.
  double final_max_gap = 0.0;
  bool pass = false;
};

// Draws `trials` pairs of convergence-testing inputs per spectrum and length
// and records max |F(r) - F(rho)|. Trial 0 is the extremal pair: every entry
// shifted by the jitter against the exact realization; the rest use uniform
// jitter and perturbed counts on both sides.
AdmissibilityReport empirical_admissibility_check(const AggregationFunction& F,
                                                  const std::vector<SpectrumTuple>& spectra,
                                                  const AdmissibilityOptions& options = {});
AdmissibilityReport empirical_admissibility_check(const AggregationFunction& F,
                                                  const std::vector<SupportSpectrum>& spectra,
                                                  const AdmissibilityOptions& options = {});

}  // namespace pla
