#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "triprime/errors.hpp"
#include "triprime/verifier.hpp"

using namespace triprime;

namespace {
// P_min for q = 2..30 from a brute-force triple enumeration (frozen).
const std::map<std::uint64_t, std::uint64_t> kPmin{
    {2, 3},   {3, 7},   {4, 5},   {5, 11},  {6, 7},   {7, 5},   {8, 7},   {9, 7},   {10, 11}, {11, 7},
    {12, 11}, {13, 11}, {14, 11}, {15, 13}, {16, 11}, {17, 13}, {18, 11}, {19, 11}, {20, 13}, {21, 17},
    {22, 13}, {23, 13}, {24, 13}, {25, 19}, {26, 17}, {27, 17}, {28, 17}, {29, 13}, {30, 17}};
}

TEST(MinimalThreshold, FrozenSmallModuli) {
  for (const auto& [q, p] : kPmin) {
    const auto r = minimal_prime_threshold(q);
    EXPECT_EQ(r.p_min, p) << q;
    EXPECT_EQ(r.p_min_strict, p + 1);
    EXPECT_TRUE(r.within_bound);
  }
}

TEST(MinimalThreshold, MatchesBruteForce) {
  for (std::uint64_t q = 31; q <= 70; ++q) EXPECT_EQ(minimal_prime_threshold(q).p_min, oracle::p_min(q)) << q;
}

TEST(MinimalThreshold, PreviousPrimeDoesNotCover) {
  for (std::uint64_t q = 2; q <= 60; ++q) {
    const auto r = minimal_prime_threshold(q);
    EXPECT_TRUE(coverage(q, r.p_min).covered);
    EXPECT_TRUE(oracle::trial_prime(r.p_min));
    if (r.previous_prime) {
      EXPECT_FALSE(coverage(q, r.previous_prime).covered) << q;
    }
    // P_min_strict is the least X with primes p < X covering.
    CoverageOptions strict;
    strict.strict_below = true;
    EXPECT_TRUE(coverage(q, r.p_min_strict, strict).covered);
    EXPECT_FALSE(coverage(q, r.p_min_strict - 1, strict).covered);
  }
}

TEST(MinimalThreshold, FrequentCrossCheck) {
  ScanOptions opts;
  opts.cross_check_every = 1;
  EXPECT_EQ(minimal_prime_threshold(97, opts).p_min, minimal_prime_threshold(97).p_min);
}

TEST(MinimalThreshold, Errors) {
  EXPECT_THROW(minimal_prime_threshold(1), std::invalid_argument);
  ScanOptions opts;
  opts.sieve.max_limit = 5;
  EXPECT_THROW(minimal_prime_threshold(5, opts), ResourceError);
}

TEST(Scan, OrderedAndJobIndependent) {
  const auto one = scan(2, 40, 1);
  const auto four = scan(2, 40, 4);
  ASSERT_EQ(one.size(), 39u);
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].q, 2 + i);
    EXPECT_EQ(one[i].p_min, four[i].p_min);
  }
  EXPECT_THROW(scan(5, 4, 1), std::invalid_argument);
}

TEST(Coverage, MatchesBruteForce) {
  for (std::uint64_t q = 2; q <= 40; ++q)
    for (std::uint64_t x : {2, 3, 5, 7, 13, 23, 41}) {
      const auto c = coverage(q, x);
      const auto brute = oracle::triple_products(q, x);
      EXPECT_EQ(c.covered, brute.size() == oracle::units(q).size()) << q << " " << x;
      for (auto r : residues(c.missing)) EXPECT_EQ(brute.count(r), 0u);
      EXPECT_EQ(c.missing.count() + brute.size(), oracle::units(q).size());
    }
}

TEST(Coverage, WitnessesValidate) {
  CoverageOptions opts;
  opts.with_witnesses = true;
  for (std::uint64_t q = 2; q <= 60; ++q) {
    const auto p = minimal_prime_threshold(q).p_min;
    const auto c = coverage(q, p, opts);
    ASSERT_TRUE(c.witnesses.has_value());
    EXPECT_EQ(c.witnesses->size(), oracle::phi(q));
    for (const auto& [cls, w] : *c.witnesses) {
      EXPECT_EQ(cls, w.residue);
      EXPECT_TRUE(validate_witness(w)) << q << " " << cls;
    }
  }
}

TEST(Coverage, WitnessPolicyIsDeterministic) {
  // 2 = 2*3*5 mod 7: rep(2)=2 first, then the least partner that works.
  const auto w = witness(7, 5, 2);
  EXPECT_EQ(w.primes, (std::array<std::uint64_t, 3>{2, 3, 5}));
  EXPECT_EQ(witness(7, 5, 2), w);
  EXPECT_EQ(witness(7, 5, 9), witness(7, 5, 2));
}

TEST(Coverage, UncoveredClassReportsMissing) {
  try {
    witness(7, 3, 2);
    FAIL() << "expected UncoveredClassError";
  } catch (const UncoveredClassError& e) {
    EXPECT_EQ(e.modulus(), 7u);
    EXPECT_EQ(e.threshold(), 3u);
    EXPECT_EQ(e.residue(), 2u);
    EXPECT_EQ(e.missing(), (std::vector<std::uint64_t>{2, 3}));
  }
  EXPECT_THROW(witness(12, 100, 2), std::invalid_argument);  // 2 is not a unit
}

TEST(Coverage, DistinctPrimes) {
  CoverageOptions distinct;
  distinct.distinct_primes = true;
  for (std::uint64_t q = 2; q <= 25; ++q)
    for (std::uint64_t x : {5, 11, 23, 47}) {
      const auto primes = oracle::naive_primes(x);
      std::set<std::uint64_t> hit;
      for (std::size_t i = 0; i < primes.size(); ++i)
        for (std::size_t j = i + 1; j < primes.size(); ++j)
          for (std::size_t k = j + 1; k < primes.size(); ++k)
            if (std::gcd(primes[i] * primes[j] * primes[k], q) == 1) hit.insert(primes[i] * primes[j] * primes[k] % q);
      EXPECT_EQ(coverage(q, x, distinct).missing.count(), oracle::units(q).size() - hit.size()) << q << " " << x;
    }
  distinct.with_witnesses = true;
  EXPECT_THROW(coverage(7, 11, distinct), std::invalid_argument);
}

TEST(Witness, ValidationRejectsBadTriples) {
  EXPECT_TRUE(validate_witness({7, 2, {2, 3, 5}, 5}));
  EXPECT_FALSE(validate_witness({7, 2, {2, 3, 5}, 3}));         // 5 above threshold
  EXPECT_FALSE(validate_witness({7, 2, {2, 3, 5}, 5}, true));   // strict
  EXPECT_FALSE(validate_witness({7, 3, {2, 3, 5}, 5}));         // wrong class
  EXPECT_FALSE(validate_witness({7, 2, {3, 2, 5}, 5}));         // unsorted
  EXPECT_FALSE(validate_witness({7, 1, {2, 2, 9}, 11}));        // 9 not prime
  EXPECT_FALSE(validate_witness({10, 1, {3, 5, 7}, 7}));        // 5 divides q
}

TEST(Table, SmallModulusRowsHold) {
  const auto rows = small_case_table();
  ASSERT_EQ(rows.size(), 9u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.covered) << r.q;
    EXPECT_TRUE(r.report.satisfied) << r.q;
    EXPECT_EQ(r.p_min, kPmin.at(r.q));
  }
  // Rows where the claimed prime is strictly above P_min.
  EXPECT_EQ(rows[5].claimed_prime, 29u);
  EXPECT_EQ(rows[5].p_min, 5u);
}

TEST(Table, Vacuity) {
  const auto r = vacuity_check();
  EXPECT_TRUE(r.satisfied);
  EXPECT_EQ(r.computed, 24388.0);
  EXPECT_EQ(r.bound, 65536.0);
}

TEST(Density, RegimeAndWaiver) {
  EXPECT_THROW(density_check(2, 1000), RegimeError);
  EXPECT_THROW(density_check(30, 10000), RegimeError);  // 30^16 > 10000^3
  EXPECT_TRUE(density_check(2, 100000).satisfied);
  EXPECT_TRUE(density_check(30, 1000, true).satisfied);
}
