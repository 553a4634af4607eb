#include "pla/network/inference.hpp"

#include <cmath>
#include <map>
#include <thread>

#include "pla/error.hpp"
#include "pla/logic/equality_type.hpp"

namespace pla {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string tuple_text(const std::string& rel, std::span<const Element> t) {
  std::string s = rel + "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t[i]);
  }
  return s + ")";
}

// theta_R at every tuple of R in lexicographic order, given the parents in s.
class ThetaTable {
 public:
  ThetaTable(const PlaNetwork& net, std::size_t r) : net_(net), r_(r) {}

  double operator()(const Structure& s, std::span<const Element> tuple) {
    const auto& theta = net_.theta(r_);
    try {
      if (theta.relation_free()) {
        auto key = equality_pattern(tuple);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        const double v = theta.evaluate(s, tuple);
        cache_.emplace(std::move(key), v);
        return v;
      }
      return theta.evaluate(s, tuple);
    } catch (const Error& e) {
      throw Error(e.code(), e.detail() + " (theta of " +
                                tuple_text(net_.relations()[r_].name, tuple) + " at n=" +
                                std::to_string(s.domain_size()) + ")");
    }
  }

 private:
  const PlaNetwork& net_;
  std::size_t r_;
  std::map<std::vector<int>, double> cache_;
};

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

Structure sample(const PlaNetwork& net, std::size_t n, std::mt19937_64& rng) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "domain size must be positive");
  Structure s(net.signature_ptr(), n);
  for (std::size_t r : net.order()) {
    ThetaTable theta(net, r);
    const std::size_t arity = net.signature()[r].arity;
    Tuple t(arity, 1);
    const std::size_t count = s.tuple_count(r);
    for (std::size_t idx = 0; idx < count; ++idx) {
      const double u = uniform01(rng);
      const double p = theta(s, t);
      if (u < p) s.set_at(r, idx, true);
      for (std::size_t k = arity; k-- > 0;) {
        if (++t[k] <= n) break;
        t[k] = 1;
      }
    }
  }
  return s;
}

Structure sample(const PlaNetwork& net, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample(net, n, rng);
}

void for_each_sample(const PlaNetwork& net, std::size_t n, std::size_t samples,
                     std::uint64_t seed, unsigned workers,
                     const std::function<void(unsigned, std::size_t, const Structure&)>& visit) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(samples, 1))));
  auto run = [&](unsigned w) {
    for (std::size_t i = w; i < samples; i += workers) {
      const Structure s = sample(net, n, derive_seed(seed, i));
      visit(w, i, s);
    }
  };
  if (workers == 1) {
    run(0);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        run(w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double world_probability(const PlaNetwork& net, const Structure& world) {
  double p = 1.0;
  const std::size_t n = world.domain_size();
  for (std::size_t r : net.order()) {
    ThetaTable theta(net, r);
    const std::size_t arity = net.signature()[r].arity;
    Tuple t(arity, 1);
    for (std::size_t idx = 0; idx < world.tuple_count(r); ++idx) {
      const double v = theta(world, t);
      p *= world.holds_at(r, idx) ? v : 1.0 - v;
      for (std::size_t k = arity; k-- > 0;) {
        if (++t[k] <= n) break;
        t[k] = 1;
      }
    }
  }
  return p;
}

std::size_t world_count(const PlaNetwork& net, std::size_t n, std::size_t cap) {
  std::size_t bits = 0;
  for (const auto& sym : net.signature().symbols()) {
    bits += int_pow(n, sym.arity);
    if (bits >= 63) break;
  }
  if (bits >= 63 || (std::size_t{1} << bits) > cap) {
    throw Error(ErrorCode::TooManyWorlds, "W_" + std::to_string(n) + " has 2^" +
                                              std::to_string(bits) + " worlds, above the cap of " +
                                              std::to_string(cap));
  }
  return std::size_t{1} << bits;
}

void for_each_world(const PlaNetwork& net, std::size_t n,
                    const std::function<void(const Structure&, double)>& visit, std::size_t cap) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "domain size must be positive");
  const std::size_t total = world_count(net, n, cap);
  Structure s(net.signature_ptr(), n);
  for (std::size_t mask = 0; mask < total; ++mask) {
    std::size_t bit = 0;
    for (std::size_t r = 0; r < s.signature().size(); ++r) {
      for (std::size_t idx = 0; idx < s.tuple_count(r); ++idx, ++bit) {
        s.set_at(r, idx, (mask >> bit) & 1U);
      }
    }
    visit(s, world_probability(net, s));
  }
}

std::vector<WorldWeight> exact_distribution(const PlaNetwork& net, std::size_t n, std::size_t cap) {
  std::vector<WorldWeight> out;
  for_each_world(
      net, n, [&](const Structure& s, double p) { out.push_back({s, p}); }, cap);
  return out;
}

namespace {

struct BoundQuery {
  CompiledFormula formula;
  std::vector<Element> values;
};

BoundQuery bind(const PlaNetwork& net, const Formula& phi, const Assignment& a,
                const AggregatorRegistry& registry) {
  auto params = free_variables(phi);
  std::vector<Element> values;
  for (const auto& v : params) {
    auto it = a.find(v);
    if (it == a.end()) {
      throw Error(ErrorCode::UnboundVariable, "free variable '" + v + "' is not assigned");
    }
    values.push_back(it->second);
  }
  return {CompiledFormula(phi, net.signature(), std::move(params), registry), std::move(values)};
}

}  // namespace

double exact_event_probability(const PlaNetwork& net, std::size_t n, const Formula& phi,
                               const Assignment& a, const ValueSet& S, std::size_t cap,
                               const AggregatorRegistry& registry) {
  const BoundQuery q = bind(net, phi, a, registry);
  double total = 0.0;
  for_each_world(
      net, n,
      [&](const Structure& s, double p) {
        if (p > 0.0 && S.contains(q.formula.evaluate(s, q.values))) total += p;
      },
      cap);
  return total;
}

Estimate binomial_estimate(std::size_t hits, std::size_t samples) {
  Estimate e;
  e.samples = samples;
  if (samples == 0) return e;
  e.value = static_cast<double>(hits) / static_cast<double>(samples);
  e.ci = 1.96 * std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(samples));
  return e;
}

Estimate mc_event_probability(const PlaNetwork& net, std::size_t n, const Formula& phi,
                              const Assignment& a, const ValueSet& S, std::size_t samples,
                              std::uint64_t seed, unsigned workers,
                              const AggregatorRegistry& registry) {
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, "at least one sample required");
  const BoundQuery q = bind(net, phi, a, registry);
  for (Element e : q.values) {
    if (e < 1 || e > n) throw Error(ErrorCode::InvalidArgument, "assignment outside [1,n]");
  }
  std::vector<std::size_t> hits(std::max(1u, workers), 0);
  for_each_sample(net, n, samples, seed, workers,
                  [&](unsigned w, std::size_t, const Structure& s) {
                    if (S.contains(q.formula.evaluate(s, q.values))) ++hits[w];
                  });
  std::size_t total = 0;
  for (auto h : hits) total += h;
  return binomial_estimate(total, samples);
}

}  // namespace pla
