#include "pla/aggregators/admissibility.hpp"

#include <algorithm>
#include <cmath>

#include "pla/aggregators/limit.hpp"
#include "pla/error.hpp"
#include "pla/util/numeric.hpp"

namespace pla {

namespace {

double min_gap(const SupportSpectrum& s) {
  double gap = 1.0;
  for (std::size_t i = 1; i < s.size(); ++i) gap = std::min(gap, s[i].c - s[i - 1].c);
  return gap;
}

std::vector<std::size_t> exact_counts(const SupportSpectrum& s, std::size_t length) {
  std::vector<double> alphas;
  for (const auto& p : s) alphas.push_back(p.alpha);
  return largest_remainder(alphas, length);
}

// Moves up to `budget` units between support points, keeping every count >= 1
// (when the length allows it) and the total fixed.
std::vector<std::size_t> perturb(std::vector<std::size_t> counts, std::size_t budget,
                                 std::mt19937_64& rng) {
  if (counts.size() < 2) return counts;
  std::uniform_int_distribution<std::size_t> pick(0, counts.size() - 1);
  std::uniform_int_distribution<std::size_t> amount(0, budget);
  const std::size_t moves = amount(rng);
  for (std::size_t k = 0; k < moves; ++k) {
    const std::size_t from = pick(rng), to = pick(rng);
    if (from != to && counts[from] > 1) {
      --counts[from];
      ++counts[to];
    }
  }
  return counts;
}

}  // namespace

Sequence gen_with_counts(const SupportSpectrum& spectrum, const std::vector<std::size_t>& counts,
                         double jitter, std::mt19937_64& rng, JitterMode mode) {
  if (counts.size() != spectrum.size()) {
    throw Error(ErrorCode::InvalidArgument, "one count per support point required");
  }
  if (jitter < 0.0) throw Error(ErrorCode::InvalidArgument, "negative jitter");
  if (spectrum.size() > 1 && 2.0 * jitter >= min_gap(spectrum)) {
    throw Error(ErrorCode::JitterTooLarge, "jitter " + format_double(jitter) +
                                               " lets neighbouring support intervals overlap");
  }
  std::uniform_real_distribution<double> offset(-jitter, jitter);
  Sequence out;
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const double c = spectrum[i].c;
    for (std::size_t k = 0; k < counts[i]; ++k) {
      double v = c;
      if (jitter > 0.0) {
        if (mode == JitterMode::Shift) {
          v = c + jitter <= 1.0 ? c + jitter : c - jitter;
        } else {
          v = c + offset(rng);
        }
      }
      out.push_back(std::clamp(v, 0.0, 1.0));
    }
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

Sequence gen_convergence_testing(const SupportSpectrum& spectrum, std::size_t length,
                                 double jitter, std::uint64_t seed, JitterMode mode) {
  const SupportSpectrum s = normalize_spectrum(spectrum);
  std::mt19937_64 rng(seed);
  return gen_with_counts(s, exact_counts(s, length), jitter, rng, mode);
}

SupportSpectrum random_spectrum(std::mt19937_64& rng, std::size_t max_points, double min_c,
                                double min_gap, double min_alpha) {
  std::uniform_int_distribution<std::size_t> npts(1, std::max<std::size_t>(max_points, 1));
  const std::size_t k = npts(rng);
  std::uniform_real_distribution<double> cval(min_c, 1.0);
  std::vector<double> cs;
  while (cs.size() < k) {
    const double c = cval(rng);
    bool ok = true;
    for (double o : cs) ok = ok && std::fabs(o - c) >= min_gap;
    if (ok) cs.push_back(c);
  }
  std::sort(cs.begin(), cs.end());
  // Proportions: min_alpha each plus a uniform share of the rest.
  std::vector<double> w(k);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double total = 0.0;
  for (auto& x : w) total += (x = u(rng));
  const double spare = 1.0 - min_alpha * static_cast<double>(k);
  SupportSpectrum out;
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double a = i + 1 == k ? 1.0 - acc : min_alpha + spare * w[i] / total;
    acc += a;
    out.push_back({cs[i], a});
  }
  return out;
}

AdmissibilityReport empirical_admissibility_check(const AggregationFunction& F,
                                                  const std::vector<SpectrumTuple>& spectra,
                                                  const AdmissibilityOptions& options) {
  AdmissibilityReport report;
  report.function = F.name;
  report.threshold = options.threshold;
  report.trials = options.trials;
  std::vector<SpectrumTuple> normalized;
  for (const auto& tuple : spectra) {
    if (tuple.size() != F.arity) {
      throw Error(ErrorCode::InvalidArgument, F.name + " needs one spectrum per input slot");
    }
    SpectrumTuple nt;
    for (const auto& s : tuple) {
      for (const auto& p : s) {
        if (!(p.alpha > 0.0)) {
          throw Error(ErrorCode::InvalidSpectrum, "admissibility spectra need every alpha > 0");
        }
      }
      nt.push_back(normalize_spectrum(s));
    }
    normalized.push_back(std::move(nt));
  }
  report.spectra = normalized;
  const std::size_t largest =
      options.lengths.empty() ? 0 : *std::max_element(options.lengths.begin(), options.lengths.end());
  std::mt19937_64 rng(options.seed);
  for (std::size_t si = 0; si < normalized.size(); ++si) {
    const auto& tuple = normalized[si];
    for (std::size_t length : options.lengths) {
      if (length == 0) continue;
      const auto budget = static_cast<std::size_t>(std::ceil(std::cbrt(static_cast<double>(length))));
      AdmissibilityRow row{si, length, 0.0};
      for (std::size_t t = 0; t < std::max<std::size_t>(options.trials, 1); ++t) {
        std::vector<Sequence> r, rho;
        for (const auto& s : tuple) {
          double jitter = options.jitter_scale / static_cast<double>(length);
          if (s.size() > 1) jitter = std::min(jitter, 0.49 * min_gap(s));
          const auto counts = exact_counts(s, length);
          if (t == 0) {
            r.push_back(gen_with_counts(s, counts, jitter, rng, JitterMode::Shift));
            rho.push_back(gen_with_counts(s, counts, 0.0, rng, JitterMode::Uniform));
          } else {
            const auto cr = options.perturb_counts ? perturb(counts, budget, rng) : counts;
            const auto crho = options.perturb_counts ? perturb(counts, budget, rng) : counts;
            r.push_back(gen_with_counts(s, cr, jitter, rng, JitterMode::Uniform));
            rho.push_back(gen_with_counts(s, crho, jitter, rng, JitterMode::Uniform));
          }
        }
        const double gap = std::fabs(apply(F, std::span<const Sequence>(r)) -
                                     apply(F, std::span<const Sequence>(rho)));
        row.max_gap = std::max(row.max_gap, gap);
      }
      if (length == largest) report.final_max_gap = std::max(report.final_max_gap, row.max_gap);
      report.rows.push_back(row);
    }
  }
  report.pass = !report.rows.empty() && report.final_max_gap < options.threshold;
  return report;
}

AdmissibilityReport empirical_admissibility_check(const AggregationFunction& F,
                                                  const std::vector<SupportSpectrum>& spectra,
                                                  const AdmissibilityOptions& options) {
  std::vector<SpectrumTuple> tuples;
  for (const auto& s : spectra) tuples.push_back({s});
  return empirical_admissibility_check(F, tuples, options);
}

}  // namespace pla
