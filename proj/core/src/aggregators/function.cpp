#include "pla/aggregators/function.hpp"

#include <algorithm>
#include <cmath>

#include "pla/error.hpp"
#include "pla/util/numeric.hpp"

namespace pla {

std::string_view to_string(LimitMethod m) {
  switch (m) {
    case LimitMethod::ClosedForm: return "closed_form";
    case LimitMethod::Numeric: return "numeric";
    case LimitMethod::None: return "none";
  }
  return "none";
}

SupportSpectrum normalize_spectrum(const SupportSpectrum& spectrum) {
  SupportSpectrum pts;
  double total = 0.0;
  for (const auto& p : spectrum) {
    if (!(p.c >= 0.0 && p.c <= 1.0)) {
      throw Error(ErrorCode::InvalidSpectrum, "support value " + format_double(p.c) + " outside [0,1]");
    }
    if (!(p.alpha >= 0.0 && p.alpha <= 1.0 + 1e-9)) {
      throw Error(ErrorCode::InvalidSpectrum, "proportion " + format_double(p.alpha) + " outside [0,1]");
    }
    total += p.alpha;
    if (p.alpha > 0.0) pts.push_back(p);
  }
  if (std::fabs(total - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidSpectrum, "proportions sum to " + format_double(total));
  }
  std::sort(pts.begin(), pts.end(),
            [](const SpectrumPoint& a, const SpectrumPoint& b) { return a.c < b.c; });
  SupportSpectrum out;
  for (const auto& p : pts) {
    if (!out.empty() && p.c - out.back().c < kSupportMergeTolerance) {
      out.back().alpha += p.alpha;
    } else {
      out.push_back(p);
    }
  }
  return out;
}

double apply(const AggregationFunction& F, std::span<const Sequence> seqs) {
  if (seqs.size() != F.arity) {
    throw Error(ErrorCode::InvalidArgument, F.name + " expects " + std::to_string(F.arity) +
                                                " sequence(s), got " + std::to_string(seqs.size()));
  }
  for (const auto& s : seqs) {
    if (s.empty()) {
      if (F.empty_value) return *F.empty_value;
      throw Error(ErrorCode::EmptyInput, F.name + " applied to an empty sequence");
    }
  }
  const double v = F.apply_fn(seqs);
  if (!(v >= -1e-12 && v <= 1.0 + 1e-12)) {
    throw Error(ErrorCode::InvalidArgument, F.name + " returned " + format_double(v));
  }
  return std::clamp(v, 0.0, 1.0);
}

double apply(const AggregationFunction& F, const Sequence& seq) {
  return apply(F, std::span<const Sequence>(&seq, 1));
}

}  // namespace pla
