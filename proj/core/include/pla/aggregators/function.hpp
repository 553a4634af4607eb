#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pla {

using Sequence = std::vector<double>;

// One support point of a convergence-testing family: entries near `c` make up
// asymptotically the fraction `alpha` of the sequence.
struct SpectrumPoint {
  double c = 0.0;
  double alpha = 0.0;

  bool operator==(const SpectrumPoint&) const = default;
};
using SupportSpectrum = std::vector<SpectrumPoint>;

inline constexpr double kSupportMergeTolerance = 1e-9;

// Drops alpha = 0 points, merges c values closer than 1e-9 (summing alpha) and
// sorts by c. Throws InvalidSpectrum on values outside [0,1], negative alpha,
// or a total alpha differing from 1 by more than 1e-9.
SupportSpectrum normalize_spectrum(const SupportSpectrum& spectrum);

enum class LimitMethod { ClosedForm, Numeric, None };

std::string_view to_string(LimitMethod m);

// A symmetric map from k finite sequences over [0,1] to [0,1].
struct AggregationFunction {
  using ApplyFn = std::function<double(std::span<const Sequence>)>;
  using LimitFn = std::function<double(std::span<const SupportSpectrum>)>;

  std::string name;
  std::size_t arity = 1;
  ApplyFn apply_fn;
  // Value on empty input; none means empty input is an error.
  std::optional<double> empty_value;
  LimitMethod limit_method = LimitMethod::None;
  // Limit over normalized spectra, required for ClosedForm.
  LimitFn closed_form;
};

// Applies F; throws InvalidArgument on a wrong number of sequences and
// EmptyInput when a sequence is empty and F has no empty value.
double apply(const AggregationFunction& F, std::span<const Sequence> seqs);
double apply(const AggregationFunction& F, const Sequence& seq);

}  // namespace pla
