#include "pla/eliminate/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pla/eliminate/eliminate.hpp"
#include "pla/error.hpp"
#include "pla/logic/evaluator.hpp"
#include "pla/util/numeric.hpp"

namespace pla {

namespace {

bool next_tuple(std::vector<Element>& t, std::size_t n) {
  for (std::size_t i = t.size(); i-- > 0;) {
    if (++t[i] <= n) return true;
    t[i] = 1;
  }
  return false;
}

struct Counters {
  std::size_t exceed = 0;
  std::vector<std::size_t> near;
  std::size_t in_set = 0;
};

std::string num(double v) { return std::isnan(v) ? "nan" : format_double(v); }

}  // namespace

std::vector<ConvergenceRow> convergence_experiment(const PlaNetwork& net, const Formula& phi,
                                                   const BasicProbabilityFormula* psi,
                                                   const ConvergenceOptions& options,
                                                   const AggregatorRegistry& registry) {
  const std::vector<Variable> vars = psi ? psi->variables() : free_variables(phi);
  const CompiledFormula cf(phi, net.signature(), vars, registry);
  const std::size_t k = vars.size();

  std::vector<double> ds;
  if (psi) {
    for (const auto& c : psi->conjuncts()) ds.push_back(c.value);
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  }

  std::vector<ConvergenceRow> rows;
  for (std::size_t n : options.n_grid) {
    if (n < std::max<std::size_t>(k, 1)) {
      throw Error(ErrorCode::InvalidArgument,
                  "domain size " + std::to_string(n) + " is smaller than the tuple size");
    }
    const unsigned workers = std::max(1u, options.workers);
    std::vector<Counters> acc(workers);
    for (auto& a : acc) a.near.assign(ds.size(), 0);

    std::vector<Element> star(k);
    for (std::size_t i = 0; i < k; ++i) star[i] = static_cast<Element>(i + 1);

    for_each_sample(net, n, options.samples, options.seed, workers,
                    [&](unsigned w, std::size_t, const Structure& s) {
                      Counters& c = acc[w];
                      const double v = cf.evaluate(s, star);
                      for (std::size_t i = 0; i < ds.size(); ++i) {
                        if (std::abs(v - ds[i]) <= options.epsilon) ++c.near[i];
                      }
                      if (options.value_set && options.value_set->contains(v)) ++c.in_set;
                      if (!psi) return;
                      std::vector<Element> t(k, 1);
                      do {
                        if (std::abs(cf.evaluate(s, t) - psi->evaluate(s, t)) > options.epsilon) {
                          ++c.exceed;
                          return;
                        }
                      } while (next_tuple(t, n));
                    });

    Counters total;
    total.near.assign(ds.size(), 0);
    for (const auto& a : acc) {
      total.exceed += a.exceed;
      total.in_set += a.in_set;
      for (std::size_t i = 0; i < ds.size(); ++i) total.near[i] += a.near[i];
    }
    ConvergenceRow row;
    row.n = n;
    row.epsilon = options.epsilon;
    if (psi) row.exceed = binomial_estimate(total.exceed, options.samples);
    row.d = ds;
    for (std::size_t hits : total.near) row.near.push_back(binomial_estimate(hits, options.samples));
    if (options.value_set) row.in_value_set = binomial_estimate(total.in_set, options.samples);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::ostringstream out;
  const std::size_t nd = rows.empty() ? 0 : rows.front().d.size();
  const bool has_set = !rows.empty() && rows.front().in_value_set.has_value();
  out << "n,epsilon,p_exceed,ci_exceed";
  for (std::size_t i = 1; i <= nd; ++i) out << ",d_" << i << ",p_near_" << i << ",ci_" << i;
  if (has_set) out << ",ci_value_set,p_value_set";
  out << '\n';
  const double nan = std::nan("");
  for (const auto& r : rows) {
    out << r.n << ',' << num(r.epsilon) << ',' << num(r.exceed ? r.exceed->value : nan) << ','
        << num(r.exceed ? r.exceed->ci : nan);
    for (std::size_t i = 0; i < nd; ++i) {
      out << ',' << num(r.d[i]) << ',' << num(r.near[i].value) << ',' << num(r.near[i].ci);
    }
    if (has_set) out << ',' << num(r.in_value_set->ci) << ',' << num(r.in_value_set->value);
    out << '\n';
  }
  return out.str();
}

SaturationResult saturation_diagnostic(const PlaNetwork& net, const AtomicType& p,
                                       const AtomicType& q, double delta, std::size_t n,
                                       std::size_t samples, std::uint64_t seed,
                                       unsigned workers) {
  const auto& xbar = q.variables();
  const auto& xy = p.variables();
  if (xbar.size() > xy.size() || !std::equal(xbar.begin(), xbar.end(), xy.begin())) {
    throw Error(ErrorCode::InvalidArgument, "q's variables must be a prefix of p's");
  }
  if (!(p.restrict(xbar) == q)) {
    throw Error(ErrorCode::InvalidArgument, "q is not the restriction of p");
  }
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  const std::vector<Variable> ybar(xy.begin() + static_cast<std::ptrdiff_t>(xbar.size()), xy.end());

  SaturationResult res;
  res.dim = dim_y(*p.eq_part(), xbar, ybar);
  if (res.dim == 0) {
    throw Error(ErrorCode::InvalidArgument, "bound variables add no new equality class");
  }
  const double gamma = limit_prob_type(net, q);
  if (gamma <= 0.0) throw Error(ErrorCode::InvalidArgument, "q has limit probability 0");
  res.alpha = limit_prob_type(net, p) / gamma;

  const double scale = std::pow(static_cast<double>(n), static_cast<double>(res.dim));
  const double lo = res.alpha * scale / (1.0 + delta);
  const double hi = res.alpha * (1.0 + delta) * scale;
  const std::size_t kx = xbar.size();
  const std::size_t ky = ybar.size();

  workers = std::max(1u, workers);
  std::vector<std::size_t> pass(workers, 0), vacuous(workers, 0);
  for_each_sample(net, n, samples, seed, workers, [&](unsigned w, std::size_t, const Structure& s) {
    std::vector<Element> t(kx + ky, 1);
    bool any = false;
    bool ok = true;
    std::vector<Element> xa(kx, 1);
    do {
      if (!q.realized_by(s, xa)) continue;
      any = true;
      std::copy(xa.begin(), xa.end(), t.begin());
      std::vector<Element> yb(ky, 1);
      std::size_t count = 0;
      do {
        std::copy(yb.begin(), yb.end(), t.begin() + static_cast<std::ptrdiff_t>(kx));
        if (p.realized_by(s, t)) ++count;
      } while (next_tuple(yb, n));
      const double cnt = static_cast<double>(count);
      if (cnt < lo || cnt > hi) {
        ok = false;
        break;
      }
    } while (next_tuple(xa, n));
    if (!any) ++vacuous[w];
    if (ok) ++pass[w];
  });
  std::size_t total = 0;
  for (unsigned w = 0; w < workers; ++w) {
    total += pass[w];
    res.vacuous += vacuous[w];
  }
  res.frequency = binomial_estimate(total, samples);
  return res;
}

}  // namespace pla
