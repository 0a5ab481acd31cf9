#include <gtest/gtest.h>

#include "triprime/lemma_suites.hpp"

using namespace triprime;

TEST(Suites, F0) {
  const auto r = f0_suite(2000);
  EXPECT_EQ(r.cases, 1999u);
  EXPECT_EQ(r.verdict(), Verdict::pass);
}

TEST(Suites, BoundChiSmall) {
  const auto r = boundchi_suite(40, 1, 2);
  EXPECT_GT(r.cases, 0u);
  EXPECT_EQ(r.failures, 0u) << r.first_failure;
}

TEST(Suites, BrunTitchmarshSamplesAreValidAndSeeded) {
  const auto a = brun_titchmarsh_samples(200, 5000, 5000, 42);
  const auto b = brun_titchmarsh_samples(200, 5000, 5000, 42);
  const auto c = brun_titchmarsh_samples(200, 5000, 5000, 43);
  ASSERT_EQ(a.size(), 200u);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].x, b[i].x);
    EXPECT_EQ(a[i].q, b[i].q);
    EXPECT_EQ(a[i].a, b[i].a);
    EXPECT_LT(a[i].q, a[i].x);
    EXPECT_LE(a[i].x, 5000u);
    EXPECT_EQ(std::gcd(static_cast<std::uint64_t>(a[i].a), a[i].q), 1u);
    differs = differs || a[i].x != c[i].x;
  }
  EXPECT_TRUE(differs);
}

TEST(Suites, BrunTitchmarshSmall) {
  const auto r = brun_titchmarsh_suite(500, 20000, 20000, 9);
  EXPECT_EQ(r.cases, 500u);
  EXPECT_EQ(r.failures, 0u) << r.first_failure;
}

TEST(Suites, DusartSmall) {
  const auto r = dusart_suite(20000, 20, 200000, 3);
  EXPECT_EQ(r.failures, 0u) << r.first_failure;
  EXPECT_GT(r.cases, 2u * (20000u - 5393u));
}

TEST(Suites, KneserSmall) {
  const auto r = kneser_suite(300, 30, 1);
  EXPECT_EQ(r.cases, 600u);
  EXPECT_EQ(r.failures, 0u) << r.first_failure;
}

TEST(Suites, RecordKeepsFirstFailure) {
  SuiteResult r{"x", 0, 0, 0, {}};
  r.record(BoundReport::at_most("a", 1, 2));
  r.record(BoundReport::at_most("b", 3, 2));
  r.record(BoundReport::at_most("c", 5, 2));
  EXPECT_EQ(r.cases, 3u);
  EXPECT_EQ(r.failures, 2u);
  EXPECT_EQ(r.first_failure.substr(0, 2), "b:");
  EXPECT_EQ(r.verdict(), Verdict::fail);
}

TEST(BoundReport, SlackDirection) {
  // Slack makes the comparison stricter, never looser.
  EXPECT_FALSE(BoundReport::at_most("x", 1.0, 1.0).satisfied);
  EXPECT_TRUE(BoundReport::at_most("x", 1.0 - 1e-8, 1.0).satisfied);
  EXPECT_FALSE(BoundReport::at_least("x", 1.0, 1.0).satisfied);
  EXPECT_TRUE(BoundReport::at_least("x", 1.0 + 1e-8, 1.0).satisfied);
  EXPECT_TRUE(BoundReport::at_most("x", 1.0, 1.0, 0.0).satisfied);
}
