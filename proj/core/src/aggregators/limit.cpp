#include "pla/aggregators/limit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pla/error.hpp"

namespace pla {

std::vector<std::size_t> largest_remainder(std::span<const double> proportions,
                                           std::size_t length) {
  const double total = std::accumulate(proportions.begin(), proportions.end(), 0.0);
  std::vector<std::size_t> counts(proportions.size(), 0);
  if (proportions.empty() || total <= 0.0) return counts;
  std::vector<double> frac(proportions.size());
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < proportions.size(); ++i) {
    const double exact = proportions[i] / total * static_cast<double>(length);
    counts[i] = static_cast<std::size_t>(std::floor(exact));
    frac[i] = exact - static_cast<double>(counts[i]);
    assigned += counts[i];
  }
  std::vector<std::size_t> order(proportions.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
  for (std::size_t k = 0; assigned < length; k = (k + 1) % order.size()) {
    ++counts[order[k]];
    ++assigned;
  }
  while (assigned > length) {
    auto it = std::max_element(counts.begin(), counts.end());
    --*it;
    --assigned;
  }
  return counts;
}

Sequence realize(const SupportSpectrum& spectrum, std::size_t length) {
  const SupportSpectrum s = normalize_spectrum(spectrum);
  std::vector<double> alphas;
  for (const auto& p : s) alphas.push_back(p.alpha);
  const auto counts = largest_remainder(alphas, length);
  Sequence out;
  out.reserve(length);
  for (std::size_t i = 0; i < s.size(); ++i) out.insert(out.end(), counts[i], s[i].c);
  return out;
}

LimitResult limit_detail(const AggregationFunction& F, std::span<const SupportSpectrum> spectra,
                         const NumericLimitOptions& options) {
  if (spectra.size() != F.arity) {
    throw Error(ErrorCode::InvalidArgument, F.name + " expects " + std::to_string(F.arity) +
                                                " spectra, got " + std::to_string(spectra.size()));
  }
  std::vector<SupportSpectrum> normalized;
  for (const auto& s : spectra) {
    normalized.push_back(normalize_spectrum(s));
    if (normalized.back().empty()) throw Error(ErrorCode::InvalidSpectrum, "empty spectrum");
  }
  LimitResult r;
  r.method = F.limit_method;
  switch (F.limit_method) {
    case LimitMethod::None:
      throw Error(ErrorCode::NoLimitMethod, F.name + " has no limit method");
    case LimitMethod::ClosedForm:
      if (!F.closed_form) throw Error(ErrorCode::NoLimitMethod, F.name + " lacks a closed form");
      r.value = std::clamp(F.closed_form(normalized), 0.0, 1.0);
      return r;
    case LimitMethod::Numeric:
      break;
  }
  auto at = [&](std::size_t n) {
    std::vector<Sequence> seqs;
    for (const auto& s : normalized) seqs.push_back(realize(s, n));
    return apply(F, std::span<const Sequence>(seqs));
  };
  std::size_t n = std::max<std::size_t>(options.start_length, 1);
  double prev = at(n);
  while (2 * n <= options.max_length) {
    const double cur = at(2 * n);
    if (std::fabs(cur - prev) < options.tolerance) {
      r.value = cur;
      r.length = 2 * n;
      return r;
    }
    prev = cur;
    n *= 2;
  }
  throw Error(ErrorCode::NumericNonConvergence,
              F.name + " did not stabilize by length " + std::to_string(options.max_length));
}

double limit(const AggregationFunction& F, std::span<const SupportSpectrum> spectra) {
  return limit_detail(F, spectra).value;
}

double limit(const AggregationFunction& F, const SupportSpectrum& spectrum) {
  return limit(F, std::span<const SupportSpectrum>(&spectrum, 1));
}

}  // namespace pla
