#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pla/aggregators/admissibility.hpp"
#include "pla/aggregators/limit.hpp"
#include "pla/aggregators/pseudometric.hpp"
#include "pla/aggregators/registry.hpp"
#include "pla/error.hpp"

namespace pla {
namespace {

const AggregationFunction& builtin(const std::string& name) {
  static const auto& r = AggregatorRegistry::builtins();
  return *r.get(name);
}

Sequence random_sequence(std::mt19937_64& rng, std::size_t len) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Sequence s(len);
  for (auto& x : s) x = u(rng);
  return s;
}

TEST(Apply, Examples) {
  EXPECT_DOUBLE_EQ(pla::apply(builtin("noisy-or"), Sequence{0.5, 0.5}), 0.75);
  EXPECT_DOUBLE_EQ(pla::apply(builtin("gm"), Sequence{0.25, 1.0}), 0.5);
  EXPECT_DOUBLE_EQ(pla::apply(builtin("am"), Sequence{0.0, 1.0}), 0.5);
  EXPECT_DOUBLE_EQ(pla::apply(builtin("invlen"), Sequence{0.3, 0.3, 0.3, 0.3}), 0.25);
  EXPECT_DOUBLE_EQ(pla::apply(builtin("max"), Sequence{0.2, 0.7}), 0.7);
  EXPECT_DOUBLE_EQ(pla::apply(builtin("min"), Sequence{0.2, 0.7}), 0.2);
  EXPECT_DOUBLE_EQ(pla::apply(builtin("gm"), Sequence{0.0, 1.0}), 0.0);
}

TEST(Apply, EmptyInputErrors) {
  try {
    pla::apply(builtin("am"), Sequence{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyInput);
  }
}

TEST(Apply, SymmetricUnderPermutation) {
  std::mt19937_64 rng(1);
  for (const auto& name : AggregatorRegistry::builtins().names()) {
    const auto& F = builtin(name);
    for (int t = 0; t < 50; ++t) {
      Sequence s = random_sequence(rng, 1 + t * 7);
      const double v = pla::apply(F, s);
      std::shuffle(s.begin(), s.end(), rng);
      EXPECT_NEAR(pla::apply(F, s), v, 1e-15) << name;
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(Registry, UnknownAndParametrized) {
  EXPECT_THROW(AggregatorRegistry::builtins().get("median"), Error);
  auto f = AggregatorRegistry::builtins().get("exists_at_least(0.5)");
  EXPECT_EQ(f->arity, 2u);
  EXPECT_EQ(AggregatorRegistry::builtins().find("exists_at_least(2)"), nullptr);
}

TEST(Limit, ClosedForms) {
  const SupportSpectrum s{{0.0, 0.45}, {1.0, 0.55}};
  EXPECT_NEAR(limit(builtin("am"), s), 0.55, 1e-15);
  EXPECT_EQ(limit(builtin("gm"), s), 0.0);
  EXPECT_EQ(limit(builtin("max"), SupportSpectrum{{0.2, 0.5}, {0.7, 0.5}}), 0.7);
  EXPECT_EQ(limit(builtin("min"), SupportSpectrum{{0.2, 0.5}, {0.7, 0.5}}), 0.2);
  EXPECT_NEAR(limit(builtin("gm"), SupportSpectrum{{0.25, 0.5}, {1.0, 0.5}}), 0.5, 1e-15);
  EXPECT_EQ(limit(builtin("invlen"), s), 0.0);
}

TEST(Limit, ZeroAlphaAndMerging) {
  // The 0.9 point carries no mass, so max ignores it.
  EXPECT_EQ(limit(builtin("max"), SupportSpectrum{{0.2, 1.0}, {0.9, 0.0}}), 0.2);
  auto n = normalize_spectrum({{0.5, 0.25}, {0.5 + 1e-12, 0.75}});
  ASSERT_EQ(n.size(), 1u);
  EXPECT_DOUBLE_EQ(n[0].alpha, 1.0);
  EXPECT_THROW(normalize_spectrum({{0.5, 0.5}}), Error);
  EXPECT_THROW(normalize_spectrum({{1.5, 1.0}}), Error);
}

TEST(Limit, NoMethodAndNumeric) {
  try {
    limit(builtin("noisy-or"), SupportSpectrum{{0.0, 1.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoLimitMethod);
  }
  AggregationFunction num = *make_am();
  num.name = "am-numeric";
  num.limit_method = LimitMethod::Numeric;
  const SupportSpectrum s{{0.1, 0.3}, {0.8, 0.7}};
  const SupportSpectrum spectra[] = {s};
  auto r = limit_detail(num, spectra);
  EXPECT_NEAR(r.value, 0.3 * 0.1 + 0.7 * 0.8, 1e-4);
  EXPECT_GT(r.length, 0u);

  AggregationFunction osc = *make_am();
  osc.name = "oscillating";
  osc.limit_method = LimitMethod::Numeric;
  osc.apply_fn = [](std::span<const Sequence> seqs) {
    return (static_cast<std::size_t>(std::log2(seqs[0].size())) % 2) ? 1.0 : 0.0;
  };
  try {
    limit(osc, s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NumericNonConvergence);
  }
}

TEST(Limit, ConsistentWithApplyAtLargeLength) {
  std::mt19937_64 rng(17);
  for (const char* name : {"am", "gm", "max", "min"}) {
    for (int t = 0; t < 10; ++t) {
      auto s = random_spectrum(rng);
      auto seq = gen_convergence_testing(s, 10000, 0.0, 3);
      EXPECT_LE(std::fabs(limit(builtin(name), s) - pla::apply(builtin(name), seq)), 0.01) << name;
    }
  }
}

TEST(LargestRemainder, SumsToLength) {
  const double a[] = {0.29, 0.29, 0.42};
  auto c = largest_remainder(a, 100);
  EXPECT_EQ(c[0] + c[1] + c[2], 100u);
  EXPECT_EQ(c[2], 42u);
  const double b[] = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  auto d = largest_remainder(b, 4);
  EXPECT_EQ(d, (std::vector<std::size_t>{2, 1, 1}));
}

TEST(Representations, Examples) {
  auto f = ordered_rep({0.0, 1.0});
  EXPECT_EQ(f(0.0), 0.0);
  EXPECT_EQ(f(0.49), 0.0);
  EXPECT_EQ(f(0.5), 1.0);
  EXPECT_EQ(f(1.0), 1.0);
  EXPECT_TRUE(unordered_rep({1.0, 0.0}).same_function(unordered_rep({0.0, 1.0})));
  EXPECT_TRUE(unordered_rep({0, 0.5, 1}).same_function(unordered_rep({0, 0, 0.5, 0.5, 1, 1})));
  EXPECT_FALSE(ordered_rep({0.0, 1.0}).same_function(ordered_rep({1.0, 0.0})));
  EXPECT_THROW(ordered_rep({}), Error);
}

TEST(Pseudometrics, Examples) {
  EXPECT_EQ(mu(MetricKind::L1Unordered, {0, 0.5, 1}, {0, 0, 0.5, 0.5, 1, 1}), 0.0);
  EXPECT_NEAR(mu(MetricKind::SupOrdered, {0.2, 0.9}, {0.3, 0.5}), 0.4, 1e-15);
  EXPECT_EQ(mu(MetricKind::L1Ordered, {0.0, 1.0}, {1.0, 0.0}), 1.0);
  EXPECT_NEAR(mu(MetricKind::L1Ordered, {0.0}, {0.0, 1.0}), 0.5, 1e-15);
  EXPECT_THROW(mu(MetricKind::L1Ordered, {}, {1.0}), Error);
}

TEST(Pseudometrics, Laws) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::size_t> len(1, 12);
  for (auto kind : {MetricKind::L1Ordered, MetricKind::L1Unordered, MetricKind::SupOrdered,
                    MetricKind::SupUnordered}) {
    for (int t = 0; t < 200; ++t) {
      auto a = random_sequence(rng, len(rng));
      auto b = random_sequence(rng, len(rng));
      auto c = random_sequence(rng, len(rng));
      EXPECT_EQ(mu(kind, a, a), 0.0);
      EXPECT_EQ(mu(kind, a, b), mu(kind, b, a));
      EXPECT_LE(mu(kind, a, c), mu(kind, a, b) + mu(kind, b, c) + 1e-12);
    }
  }
}

TEST(Pseudometrics, EqualLengthSupIsCoordinateMax) {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 9;
    auto a = random_sequence(rng, n), b = random_sequence(rng, n);
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    EXPECT_EQ(mu(MetricKind::SupOrdered, a, b), m);
  }
}

TEST(Pseudometrics, TupleVariantTakesMaximum) {
  const Sequence r[] = {{0.0}, {1.0}};
  const Sequence rho[] = {{0.5}, {0.9}};
  EXPECT_DOUBLE_EQ(mu(MetricKind::SupOrdered, r, rho), 0.5);
}

TEST(ConvergenceTesting, Examples) {
  EXPECT_EQ(gen_convergence_testing({{0.0, 1.0}}, 4, 0.0, 1), (Sequence{0, 0, 0, 0}));
  auto s = gen_convergence_testing({{0.0, 0.5}, {1.0, 0.5}}, 4, 0.0, 1);
  EXPECT_EQ(std::count(s.begin(), s.end(), 0.0), 2);
  EXPECT_EQ(std::count(s.begin(), s.end(), 1.0), 2);
  auto shifted = gen_convergence_testing({{0.0, 1.0}}, 10, 0.1, 1, JitterMode::Shift);
  for (double v : shifted) EXPECT_DOUBLE_EQ(v, 0.1);
  try {
    gen_convergence_testing({{0.0, 0.5}, {0.1, 0.5}}, 10, 0.05, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::JitterTooLarge);
  }
  auto u = gen_convergence_testing({{0.3, 0.5}, {0.7, 0.5}}, 1000, 0.01, 5);
  for (double v : u) EXPECT_TRUE(std::fabs(v - 0.3) <= 0.01 || std::fabs(v - 0.7) <= 0.01);
}

TEST(Admissibility, AdmissibleFunctionsPass) {
  std::mt19937_64 rng(31);
  std::vector<SupportSpectrum> spectra;
  for (int i = 0; i < 3; ++i) spectra.push_back(random_spectrum(rng));
  AdmissibilityOptions opt;
  opt.lengths = {10, 100, 1000};
  opt.trials = 5;
  for (const char* name : {"am", "gm", "max", "min"}) {
    auto rep = empirical_admissibility_check(builtin(name), spectra, opt);
    EXPECT_TRUE(rep.pass) << name << " gap " << rep.final_max_gap;
  }
}

TEST(Admissibility, NoisyOrFailsOnShiftedZeros) {
  AdmissibilityOptions opt;
  opt.lengths = {10, 100, 1000};
  opt.trials = 3;
  auto rep = empirical_admissibility_check(builtin("noisy-or"),
                                           std::vector<SupportSpectrum>{{{0.0, 1.0}}}, opt);
  EXPECT_FALSE(rep.pass);
  EXPECT_NEAR(rep.final_max_gap, 1.0 - std::pow(1.0 - 1e-3, 1000.0), 1e-9);
}

TEST(Admissibility, MaxGapBoundedByTwiceJitter) {
  AdmissibilityOptions opt;
  opt.lengths = {10, 100};
  opt.trials = 10;
  auto rep = empirical_admissibility_check(builtin("max"),
                                           std::vector<SupportSpectrum>{{{0.3, 1.0}}}, opt);
  for (const auto& row : rep.rows) EXPECT_LE(row.max_gap, 2.0 / row.length + 1e-15);
}

TEST(QuantifierAdapter, Examples) {
  auto ex = exists_adapter();
  auto all = forall_adapter();
  EXPECT_EQ(pla::apply(*ex, Sequence{0, 1, 0}), 1.0);
  EXPECT_EQ(pla::apply(*all, Sequence{1, 1, 0}), 0.0);
  auto half = exists_at_least_adapter(0.5);
  const Sequence args[] = {{1, 1, 1, 0}, {1, 0, 1, 0}};
  EXPECT_EQ(pla::apply(*half, std::span<const Sequence>(args)), 1.0);
  const Sequence none[] = {{0, 0}, {1, 1}};
  EXPECT_EQ(pla::apply(*half, std::span<const Sequence>(none)), 0.0);
}

TEST(QuantifierAdapter, AgreesWithMinMaxOnBooleans) {
  std::mt19937_64 rng(37);
  std::bernoulli_distribution coin(0.5);
  for (int t = 0; t < 200; ++t) {
    Sequence s(1 + t % 8);
    for (auto& x : s) x = coin(rng) ? 1.0 : 0.0;
    EXPECT_EQ(pla::apply(*forall_adapter(), s), pla::apply(builtin("min"), s));
    EXPECT_EQ(pla::apply(*exists_adapter(), s), pla::apply(builtin("max"), s));
  }
}

TEST(QuantifierAdapter, InvariantUnderJointPermutation) {
  std::mt19937_64 rng(41);
  std::bernoulli_distribution coin(0.5);
  auto half = exists_at_least_adapter(0.5);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 7;
    Sequence a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = coin(rng);
      b[i] = coin(rng);
    }
    const Sequence before[] = {a, b};
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Sequence pa(n), pb(n);
    for (std::size_t i = 0; i < n; ++i) {
      pa[i] = a[perm[i]];
      pb[i] = b[perm[i]];
    }
    const Sequence after[] = {pa, pb};
    EXPECT_EQ(pla::apply(*half, std::span<const Sequence>(before)),
              pla::apply(*half, std::span<const Sequence>(after)));
  }
}

}  // namespace
}  // namespace pla
