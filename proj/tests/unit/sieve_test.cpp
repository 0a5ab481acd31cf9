#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "oracles.hpp"
#include "triprime/errors.hpp"
#include "triprime/sieve.hpp"

using namespace triprime;

namespace {
SieveConfig small_segments() {
  SieveConfig cfg;
  cfg.segment_odds = 64;  // forces many segment boundaries
  return cfg;
}
}  // namespace

TEST(PrimeStream, MatchesNaiveSieve) {
  const auto expect = oracle::naive_primes(200000);
  EXPECT_EQ(primes_up_to(200000).collect(), expect);
  EXPECT_EQ(primes_up_to(200000, small_segments()).collect(), expect);
}

TEST(PrimeStream, ArbitraryWindows) {
  const auto s = oracle::naive_sieve(30000);
  for (std::uint64_t lo : {0, 1, 2, 3, 4, 97, 1000, 29989})
    for (std::uint64_t hi : {0, 1, 2, 3, 100, 1001, 29989, 30000}) {
      std::vector<std::uint64_t> expect;
      for (std::uint64_t n = lo; n <= hi; ++n)
        if (s[n]) expect.push_back(n);
      EXPECT_EQ(PrimeStream(lo, hi, small_segments()).collect(), expect) << lo << ".." << hi;
    }
}

TEST(PrimeStream, EarlyStop) {
  std::vector<std::uint64_t> got;
  primes_up_to(1000).for_each([&](std::uint64_t p) {
    got.push_back(p);
    return p < 20;
  });
  EXPECT_EQ(got, (std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23}));
}

TEST(PrimeStream, LimitAndMemoryCaps) {
  SieveConfig cfg;
  cfg.max_limit = 1000;
  EXPECT_THROW(PrimeStream(2, 1001, cfg), ResourceError);
  cfg = SieveConfig{};
  cfg.memory_cap_bytes = 16;
  EXPECT_THROW(PrimeStream(2, 1'000'000, cfg), ResourceError);
  EXPECT_THROW(PrimeTable(1'000'000, cfg), ResourceError);
}

TEST(SieveConfig, EnvironmentOverride) {
  ::setenv(kSieveMemoryCapEnv, "4096", 1);
  EXPECT_EQ(SieveConfig::from_env().memory_cap_bytes, 4096u);
  ::setenv(kSieveMemoryCapEnv, "garbage", 1);
  EXPECT_EQ(SieveConfig::from_env().memory_cap_bytes, SieveConfig{}.memory_cap_bytes);
  ::unsetenv(kSieveMemoryCapEnv);
  EXPECT_EQ(SieveConfig::from_env().memory_cap_bytes, SieveConfig{}.memory_cap_bytes);
}

TEST(ForEachPrimeUntil, ReportsStop) {
  std::uint64_t last = 0;
  EXPECT_TRUE(for_each_prime_until(1'000'000, SieveConfig{}, [&](std::uint64_t p) {
    last = p;
    return p < 5000;
  }));
  EXPECT_EQ(last, 5003u);
  std::uint64_t n = 0;
  EXPECT_FALSE(for_each_prime_until(10000, SieveConfig{}, [&](std::uint64_t) { return ++n, true; }));
  EXPECT_EQ(n, 1229u);
}

TEST(PrimeTable, PiAndIsPrime) {
  const auto s = oracle::naive_sieve(100001);
  const PrimeTable t(100001, small_segments());
  std::uint64_t pi = 0;
  for (std::uint64_t n = 0; n <= 100001; ++n) {
    if (s[n]) ++pi;
    ASSERT_EQ(t.is_prime(n), static_cast<bool>(s[n])) << n;
    ASSERT_EQ(t.pi(n), pi) << n;
  }
  EXPECT_THROW(t.is_prime(100002), std::out_of_range);
}

TEST(PrimePi, KnownValues) {
  EXPECT_EQ(prime_pi(0), 0u);
  EXPECT_EQ(prime_pi(2), 1u);
  EXPECT_EQ(prime_pi(100), 25u);
  EXPECT_EQ(prime_pi(1'000'000), 78498u);
  EXPECT_EQ(prime_pi(10'000'000), 664579u);
}

TEST(Dusart, HoldsAtThresholdAndRejectsBelow) {
  EXPECT_TRUE(check_dusart(5393).satisfied);
  EXPECT_TRUE(check_dusart(5393.5).satisfied);
  EXPECT_THROW(check_dusart(5392.99), RegimeError);
  EXPECT_THROW(check_dusart(100), RegimeError);
}

TEST(Dusart, FailsJustBelowItsRange) {
  // 5392 is the last integer where it fails: pi = 710 < 710.27...
  const double x = 5392;
  EXPECT_EQ(prime_pi(5392), 710u);
  EXPECT_LT(710.0, x / (std::log(x) - 1));
}

TEST(CoprimeCount, SubtractsPrimeDivisors) {
  EXPECT_EQ(coprime_prime_count(100, 30).count, 22u);
  EXPECT_EQ(coprime_prime_count(100, 1).count, 25u);
  EXPECT_FALSE(coprime_prime_count(100, 30).report.has_value());
  const auto c = coprime_prime_count(10000, 210);
  ASSERT_TRUE(c.report.has_value());
  EXPECT_TRUE(c.report->satisfied);
  EXPECT_EQ(c.count, 1229u - 4u);
}

TEST(BrunTitchmarsh, ProgressionOneModThree) {
  const auto r = check_brun_titchmarsh(0, 100, 3, 1);
  EXPECT_EQ(r.computed, 11.0);
  EXPECT_NEAR(r.bound, 28.517994833745295, 1e-9);
  EXPECT_TRUE(r.satisfied);
  const PrimeTable t(200);
  EXPECT_EQ(check_brun_titchmarsh(0, 100, 3, 1, t).computed, 11.0);
  EXPECT_EQ(check_brun_titchmarsh(0, 100, 3, -2, t).computed, 11.0);
}

TEST(BrunTitchmarsh, TableAndStreamAgree) {
  const PrimeTable t(4000);
  for (std::uint64_t q = 1; q < 40; ++q)
    for (std::int64_t a = 0; a < static_cast<std::int64_t>(q); ++a) {
      if (std::gcd(static_cast<std::uint64_t>(a), q) != 1) continue;
      for (std::uint64_t y : {0, 17, 1000})
        ASSERT_EQ(check_brun_titchmarsh(y, 2000, q, a, t).computed, check_brun_titchmarsh(y, 2000, q, a).computed);
    }
}

TEST(BrunTitchmarsh, ArgumentErrors) {
  EXPECT_THROW(check_brun_titchmarsh(0, 10, 10, 1), std::invalid_argument);
  EXPECT_THROW(check_brun_titchmarsh(0, 100, 6, 3), std::invalid_argument);
}

TEST(ClassSpectrum, CountsMatchOracle) {
  const auto primes = oracle::naive_primes(5000);
  for (std::uint64_t q : {1, 2, 7, 12, 30, 97}) {
    const auto s = class_spectrum(5000, q);
    std::vector<std::uint64_t> counts(s.counts.size(), 0), least(s.counts.size(), 0);
    const auto g = make_unit_group(q);
    for (auto p : primes)
      if (auto i = g->index_of(p % q)) {
        if (counts[*i]++ == 0) least[*i] = p;
      }
    EXPECT_EQ(s.counts, counts) << q;
    EXPECT_EQ(s.least_prime, least) << q;
    EXPECT_EQ(s.nonempty.count(), static_cast<std::size_t>(std::count_if(counts.begin(), counts.end(),
                                                                          [](auto c) { return c > 0; })));
  }
}

TEST(ClassSpectrum, StrictExcludesThreshold) {
  const auto g = make_unit_group(10);
  EXPECT_EQ(class_spectrum(g, 13, false).total(), 4u);  // 3 7 11 13
  EXPECT_EQ(class_spectrum(g, 13, true).total(), 3u);
}
