#include "pla/aggregators/pseudometric.hpp"

#include <algorithm>
#include <cmath>

#include "pla/error.hpp"
#include "pla/util/numeric.hpp"

namespace pla {

namespace {

// Visits the pieces of the common refinement of two equal-width grids as
// (integer length in units of 1/(m*m'), value of f, value of g).
template <class Visit>
void merge_grids(const StepFunction& f, const StepFunction& g, Visit visit) {
  const std::size_t m = f.pieces(), mg = g.pieces();
  // Breakpoint i of f sits at i*mg, breakpoint j of g at j*m.
  std::size_t i = 0, j = 0, pos = 0;
  const std::size_t end = m * mg;
  while (pos < end) {
    const std::size_t next = std::min((i + 1) * mg, (j + 1) * m);
    visit(next - pos, f.values()[i], g.values()[j]);
    pos = next;
    if (pos == (i + 1) * mg) ++i;
    if (pos == (j + 1) * m) ++j;
  }
}

}  // namespace

StepFunction::StepFunction(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorCode::EmptyInput, "step function of an empty sequence");
}

double StepFunction::operator()(double t) const {
  if (t >= 1.0) return values_.back();
  if (t <= 0.0) return values_.front();
  const auto i = static_cast<std::size_t>(std::floor(t * static_cast<double>(values_.size())));
  return values_[std::min(i, values_.size() - 1)];
}

bool StepFunction::same_function(const StepFunction& other) const {
  bool same = true;
  merge_grids(*this, other, [&](std::size_t, double a, double b) { same = same && a == b; });
  return same;
}

StepFunction ordered_rep(const Sequence& r) { return StepFunction(r); }

StepFunction unordered_rep(const Sequence& r) {
  Sequence s = r;
  std::sort(s.begin(), s.end());
  return StepFunction(std::move(s));
}

double l1_distance(const StepFunction& f, const StepFunction& g) {
  std::vector<double> terms;
  merge_grids(f, g, [&](std::size_t len, double a, double b) {
    if (a != b) terms.push_back(static_cast<double>(len) * std::fabs(a - b));
  });
  const double scale = static_cast<double>(f.pieces()) * static_cast<double>(g.pieces());
  return std::min(1.0, compensated_sum(terms) / scale);
}

double sup_distance(const StepFunction& f, const StepFunction& g) {
  double d = 0.0;
  merge_grids(f, g, [&](std::size_t, double a, double b) { d = std::max(d, std::fabs(a - b)); });
  return d;
}

double mu(MetricKind kind, const Sequence& r, const Sequence& rho) {
  if (r.empty() || rho.empty()) throw Error(ErrorCode::EmptyInput, "pseudometric of an empty sequence");
  switch (kind) {
    case MetricKind::L1Ordered: return l1_distance(ordered_rep(r), ordered_rep(rho));
    case MetricKind::L1Unordered: return l1_distance(unordered_rep(r), unordered_rep(rho));
    case MetricKind::SupOrdered: return sup_distance(ordered_rep(r), ordered_rep(rho));
    case MetricKind::SupUnordered: return sup_distance(unordered_rep(r), unordered_rep(rho));
  }
  return 0.0;
}

double mu(MetricKind kind, std::span<const Sequence> r, std::span<const Sequence> rho) {
  if (r.size() != rho.size()) {
    throw Error(ErrorCode::InvalidArgument, "pseudometric of tuples with different arity");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) d = std::max(d, mu(kind, r[i], rho[i]));
  return d;
}

}  // namespace pla
