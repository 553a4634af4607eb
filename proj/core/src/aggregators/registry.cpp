#include "pla/aggregators/registry.hpp"

#include <algorithm>
#include <cmath>

#include "pla/error.hpp"
#include "pla/util/numeric.hpp"

namespace pla {

namespace {

// Sorting first makes every built-in exactly invariant under permutation.
Sequence sorted_copy(const Sequence& s) {
  Sequence out = s;
  std::sort(out.begin(), out.end());
  return out;
}

AggregationFunctionPtr make(std::string name, AggregationFunction::ApplyFn apply_fn,
                            LimitMethod method, AggregationFunction::LimitFn limit = {}) {
  auto f = std::make_shared<AggregationFunction>();
  f->name = std::move(name);
  f->arity = 1;
  f->apply_fn = std::move(apply_fn);
  f->limit_method = method;
  f->closed_form = std::move(limit);
  return f;
}

}  // namespace

AggregationFunctionPtr make_max() {
  return make(
      "max",
      [](std::span<const Sequence> s) { return *std::max_element(s[0].begin(), s[0].end()); },
      LimitMethod::ClosedForm,
      [](std::span<const SupportSpectrum> sp) { return sp[0].back().c; });
}

AggregationFunctionPtr make_min() {
  return make(
      "min",
      [](std::span<const Sequence> s) { return *std::min_element(s[0].begin(), s[0].end()); },
      LimitMethod::ClosedForm,
      [](std::span<const SupportSpectrum> sp) { return sp[0].front().c; });
}

AggregationFunctionPtr make_am() {
  return make(
      "am",
      [](std::span<const Sequence> s) {
        const Sequence v = sorted_copy(s[0]);
        return compensated_sum(v) / static_cast<double>(v.size());
      },
      LimitMethod::ClosedForm,
      [](std::span<const SupportSpectrum> sp) {
        double acc = 0.0;
        for (const auto& p : sp[0]) acc += p.alpha * p.c;
        return acc;
      });
}

AggregationFunctionPtr make_gm() {
  return make(
      "gm",
      [](std::span<const Sequence> s) {
        Sequence v = sorted_copy(s[0]);
        if (v.front() <= 0.0) return 0.0;
        for (auto& x : v) x = std::log(x);
        return std::exp(compensated_sum(v) / static_cast<double>(v.size()));
      },
      LimitMethod::ClosedForm,
      [](std::span<const SupportSpectrum> sp) {
        double log_acc = 0.0;
        for (const auto& p : sp[0]) {
          if (p.c <= 0.0) return 0.0;
          log_acc += p.alpha * std::log(p.c);
        }
        return std::exp(log_acc);
      });
}

AggregationFunctionPtr make_noisy_or() {
  return make(
      "noisy-or",
      [](std::span<const Sequence> s) {
        Sequence v = sorted_copy(s[0]);
        if (v.back() >= 1.0) return 1.0;
        double prod = 1.0;
        for (double x : v) prod *= 1.0 - x;
        return 1.0 - prod;
      },
      LimitMethod::None);
}

AggregationFunctionPtr make_invlen() {
  return make(
      "invlen",
      [](std::span<const Sequence> s) { return 1.0 / static_cast<double>(s[0].size()); },
      LimitMethod::ClosedForm, [](std::span<const SupportSpectrum>) { return 0.0; });
}

AggregationFunctionPtr quantifier_adapter(std::string name, std::size_t k,
                                          QuantifierPredicate q,
                                          std::optional<double> empty_value) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "quantifier adapter needs k >= 1");
  auto f = std::make_shared<AggregationFunction>();
  f->name = std::move(name);
  f->arity = k;
  f->empty_value = empty_value;
  f->limit_method = LimitMethod::None;
  f->apply_fn = [q = std::move(q)](std::span<const Sequence> seqs) {
    std::size_t m = 0;
    std::vector<std::vector<std::size_t>> sets(seqs.size());
    for (std::size_t i = 0; i < seqs.size(); ++i) {
      m = std::max(m, seqs[i].size());
      for (std::size_t j = 0; j < seqs[i].size(); ++j) {
        if (seqs[i][j] == 1.0) sets[i].push_back(j);
      }
    }
    return q(m, sets) ? 1.0 : 0.0;
  };
  return f;
}

AggregationFunctionPtr exists_adapter() {
  return quantifier_adapter("exists", 1, [](std::size_t, const auto& sets) {
    return !sets[0].empty();
  });
}

AggregationFunctionPtr forall_adapter() {
  return quantifier_adapter("forall", 1, [](std::size_t m, const auto& sets) {
    return sets[0].size() == m;
  });
}

AggregationFunctionPtr exists_at_least_adapter(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "exists_at_least threshold outside [0,1]");
  }
  return quantifier_adapter(
      "exists_at_least(" + format_double(p) + ")", 2,
      [p](std::size_t, const std::vector<std::vector<std::size_t>>& sets) {
        if (sets[0].empty()) return false;
        std::vector<std::size_t> both;
        std::set_intersection(sets[0].begin(), sets[0].end(), sets[1].begin(), sets[1].end(),
                              std::back_inserter(both));
        return static_cast<double>(both.size()) >= p * static_cast<double>(sets[0].size());
      });
}

AggregatorRegistry AggregatorRegistry::with_builtins() {
  AggregatorRegistry r;
  for (auto f : {make_max(), make_min(), make_am(), make_gm(), make_noisy_or(), make_invlen()}) {
    r.add(std::move(f));
  }
  return r;
}

const AggregatorRegistry& AggregatorRegistry::builtins() {
  static const AggregatorRegistry r = with_builtins();
  return r;
}

void AggregatorRegistry::add(AggregationFunctionPtr f) {
  if (!f || f->name.empty()) {
    throw Error(ErrorCode::InvalidArgument, "cannot register an unnamed aggregation function");
  }
  functions_[f->name] = std::move(f);
}

AggregationFunctionPtr AggregatorRegistry::find(const std::string& name) const {
  if (auto it = functions_.find(name); it != functions_.end()) return it->second;
  constexpr std::string_view prefix = "exists_at_least(";
  if (name.size() > prefix.size() + 1 && name.compare(0, prefix.size(), prefix) == 0 &&
      name.back() == ')') {
    const auto arg = std::string_view(name).substr(prefix.size(), name.size() - prefix.size() - 1);
    if (auto p = parse_double(arg); p && *p >= 0.0 && *p <= 1.0) {
      return exists_at_least_adapter(*p);
    }
  }
  return nullptr;
}

AggregationFunctionPtr AggregatorRegistry::get(const std::string& name) const {
  auto f = find(name);
  if (!f) {
    throw Error(ErrorCode::UnknownAggregationFunction,
                "unknown aggregation function '" + name + "'");
  }
  return f;
}

std::vector<std::string> AggregatorRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, f] : functions_) out.push_back(name);
  return out;
}

}  // namespace pla
