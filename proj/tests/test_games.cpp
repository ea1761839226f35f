#include <gtest/gtest.h>

#include "cosetlab/games.hpp"
#include "test_util.hpp"

using namespace cosetlab;
using games::GameOptions;
using games::GameResult;

namespace {

GameOptions opts(std::uint64_t trials, std::uint64_t seed = 7, bool sanity = true) {
  GameOptions o;
  o.trials = trials;
  o.seed = seed;
  o.allow_sanity = sanity;
  return o;
}

void expect_matches_exact(const GameResult& r) {
  SCOPED_TRACE(r.game + "/" + r.strategy);
  ASSERT_TRUE(r.exact.has_value());
  EXPECT_NEAR(r.estimate, static_cast<double>(r.successes) / static_cast<double>(r.trials), 1e-11);
  EXPECT_TRUE(oracle::within_4sigma(r.estimate, *r.exact, static_cast<double>(r.trials)))
      << "estimate " << r.estimate << " exact " << *r.exact;
}

// Gaussian binomial coefficient over F_2.
std::uint64_t gaussian_binomial(std::size_t n, std::size_t k) {
  std::uint64_t num = 1;
  std::uint64_t den = 1;
  for (std::size_t i = 0; i < k; ++i) {
    num *= (std::uint64_t{1} << (n - i)) - 1;
    den *= (std::uint64_t{1} << (i + 1)) - 1;
  }
  return num / den;
}

double bound_oracle(std::size_t n) {
  const std::size_t h = n / 2;
  long double binom_n = 1;
  for (std::size_t i = 1; i <= h; ++i) binom_n = binom_n * static_cast<long double>(n - h + i) / i;
  long double sum = 0;
  long double c = 1;
  for (std::size_t t = 0; t <= h; ++t) {
    sum += c * c * std::pow(2.0L, -static_cast<long double>(t));
    c = c * static_cast<long double>(h - t) / static_cast<long double>(t + 1);
  }
  return static_cast<double>(sum / binom_n);
}

}  // namespace

TEST(Games, DirectProductStrategies) {
  for (const auto& s : games::direct_product_strategies()) {
    for (auto mode : {games::OracleMode::kInformationTheoretic, games::OracleMode::kComputational}) {
      GameResult r = games::run_direct_product(4, s, mode, opts(1500));
      if (r.exact) expect_matches_exact(r);
      EXPECT_EQ(r.game, "direct-product");
    }
  }
}

TEST(Games, DirectProductReportsQueriesInItMode) {
  GameResult r = games::run_direct_product(4, "query-search", games::OracleMode::kInformationTheoretic, opts(100));
  ASSERT_TRUE(r.queries.has_value());
  EXPECT_GT(*r.queries, 0u);
  EXPECT_EQ(r.params["budget"], 8);
}

TEST(Games, RevokeAfterSign) {
  expect_matches_exact(games::run_revoke_after_sign(4, opts(2000)));
  expect_matches_exact(games::run_revoke_after_sign(2, opts(2000)));
}

TEST(Games, MonogamyStrategies) {
  for (const auto& s : games::monogamy_strategies()) {
    GameResult r = games::run_monogamy(4, s, opts(2000));
    if (r.exact) expect_matches_exact(r);
    GameResult c = games::run_monogamy(4, s, opts(500), true);
    if (c.exact) expect_matches_exact(c);
  }
}

TEST(Games, StrongMonogamyStrategies) {
  for (const auto& s : games::strong_monogamy_strategies()) {
    GameResult r = games::run_strong_monogamy(4, s, opts(2000));
    ASSERT_TRUE(r.exact.has_value());
    expect_matches_exact(r);
  }
}

TEST(Games, SdePiracy) {
  games::SdeInstance inst;
  for (const auto& p : games::sde_pirates()) {
    for (auto kind : {games::AntiPiracyKind::kCpa, games::AntiPiracyKind::kRandom}) {
      expect_matches_exact(games::run_anti_piracy(kind, inst, p, opts(1500)));
    }
  }
}

TEST(Games, SdeStrongTi) {
  games::SdeInstance inst;
  inst.n = 4;
  for (const auto& p : games::sde_pirates()) {
    GameResult r = games::run_anti_piracy(games::AntiPiracyKind::kStrongTi, inst, p, opts(4));
    ASSERT_TRUE(r.exact.has_value());
    EXPECT_EQ(r.estimate, *r.exact) << p.name;
  }
  inst.gamma = 0.0;
  EXPECT_THROW(games::run_anti_piracy(games::AntiPiracyKind::kStrongTi, inst, games::sde_pirates()[0], opts(1)),
               std::invalid_argument);
}

TEST(Games, CpPiracy) {
  cprf::CpParams params = cprf::CpParams::toy_preset();
  for (const auto& p : games::cp_pirates()) {
    for (auto kind : {games::AntiPiracyKind::kIndCprf, games::AntiPiracyKind::kCopyProtection}) {
      expect_matches_exact(games::run_anti_piracy(kind, params, p, opts(800)));
    }
  }
}

TEST(Games, HiddenTrigger) {
  cprf::CpParams params = cprf::CpParams::toy_preset();
  for (const auto& s : games::hidden_trigger_strategies()) {
    GameResult r = games::run_hidden_trigger_game(params, s, opts(400));
    if (r.exact) expect_matches_exact(r);
    if (s.sanity) {
      EXPECT_GT(r.estimate, 0.9);
    }
  }
}

TEST(Games, SanityStrategiesNeedTheFlag) {
  GameOptions closed = opts(5, 1, false);
  EXPECT_THROW(games::run_direct_product(4, "peek-secret", games::OracleMode::kInformationTheoretic, closed),
               games::InterfaceViolation);
  EXPECT_THROW(games::run_monogamy(4, "peek-secret", closed), games::InterfaceViolation);
  EXPECT_THROW(games::run_strong_monogamy(4, "peek-secret", closed), games::InterfaceViolation);
  EXPECT_THROW(games::run_anti_piracy(games::AntiPiracyKind::kCpa, games::SdeInstance{},
                                      cprf::CpParams::toy_preset(), "peek-secret", closed),
               games::InterfaceViolation);
  EXPECT_THROW(games::run_hidden_trigger_game(cprf::CpParams::toy_preset(), "peek-keys", closed),
               games::InterfaceViolation);
}

TEST(Games, UnknownStrategyIsAnArgumentError) {
  EXPECT_THROW(games::run_monogamy(4, "no-such", opts(1)), std::invalid_argument);
  EXPECT_THROW(games::parse_anti_piracy_kind("nope"), std::invalid_argument);
  EXPECT_EQ(games::parse_anti_piracy_kind("copy-protection"), games::AntiPiracyKind::kCopyProtection);
}

TEST(Games, ResultsDoNotDependOnJobCount) {
  GameOptions one = opts(300, 99);
  GameOptions three = one;
  three.jobs = 3;
  EXPECT_EQ(games::run_monogamy(4, "measure-and-copy", one).to_json().dump(),
            games::run_monogamy(4, "measure-and-copy", three).to_json().dump());
  EXPECT_EQ(games::run_anti_piracy(games::AntiPiracyKind::kCpa, games::SdeInstance{}, cprf::CpParams::toy_preset(),
                                   "guess-both", one)
                .to_json()
                .dump(),
            games::run_anti_piracy(games::AntiPiracyKind::kCpa, games::SdeInstance{}, cprf::CpParams::toy_preset(),
                                   "guess-both", three)
                .to_json()
                .dump());
}

TEST(Games, ResultJsonShape) {
  GameResult r = games::run_strong_monogamy(2, "measure-and-send", opts(10));
  games::Json j = r.to_json();
  for (const char* key : {"game", "params", "strategy", "trials", "successes", "estimate", "exact", "seed"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["trials"], 10);
}

TEST(Bounds, MonogamyBoundSmallCases) {
  EXPECT_EQ(games::monogamy_bound(2).numerator, "3");
  EXPECT_EQ(games::monogamy_bound(2).denominator, "4");
  EXPECT_EQ(games::monogamy_bound(4).numerator, "13");
  EXPECT_EQ(games::monogamy_bound(4).denominator, "24");
  EXPECT_EQ(games::monogamy_bound(6).numerator, "63");
  EXPECT_EQ(games::monogamy_bound(6).denominator, "160");
}

TEST(Bounds, MonogamyBoundMatchesOracleAndDecreases) {
  double prev = 1.0;
  for (std::size_t n = 2; n <= 64; n += 2) {
    games::ExactFraction f = games::monogamy_bound(n);
    games::ExactFraction g = games::monogamy_bound_unsimplified(n);
    EXPECT_EQ(f.numerator, g.numerator) << n;
    EXPECT_EQ(f.denominator, g.denominator) << n;
    EXPECT_NEAR(f.value, bound_oracle(n), 1e-12 * bound_oracle(n)) << n;
    EXPECT_LT(f.value, prev);
    prev = f.value;
  }
  EXPECT_THROW(games::monogamy_bound(3), std::invalid_argument);
}

TEST(Bounds, SubspaceEnumerationCounts) {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t d = 0; d <= n; ++d) {
      EXPECT_EQ(games::enumerate_subspaces(n, d).size(), gaussian_binomial(n, d)) << n << " " << d;
    }
  }
}

TEST(Bounds, OverlapNeverExceedsBound) {
  for (std::size_t n : {2, 4}) {
    games::OverlapReport r = games::overlap_check(n);
    EXPECT_TRUE(r.exhaustive);
    EXPECT_EQ(r.violations, 0u);
    EXPECT_GT(r.equality_cases, 0u);
    EXPECT_LE(r.max_ratio, 1.0 + 1e-9);
  }
  games::OverlapReport s = games::overlap_check(6, 2000, 3);
  EXPECT_FALSE(s.exhaustive);
  EXPECT_EQ(s.pairs, 2000u);
  EXPECT_EQ(s.violations, 0u);
}

TEST(Bounds, EprIdentity) {
  Rng rng(8);
  for (std::size_t n : {2, 4, 6}) {
    for (int rep = 0; rep < 3; ++rep) {
      gf2::Subspace a = gf2::sample_subspace(n, n / 2, rng);
      EXPECT_NEAR(games::epr_identity_fidelity(a), 1.0, 1e-9);
    }
  }
}
