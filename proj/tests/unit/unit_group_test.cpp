#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "oracles.hpp"
#include "triprime/group_set.hpp"
#include "triprime/unit_group.hpp"

using namespace triprime;

TEST(UnitGroup, UnitsInIncreasingOrder) {
  for (std::uint64_t q = 1; q <= 200; ++q) {
    const UnitGroup g(q);
    EXPECT_EQ(g.units(), oracle::units(q)) << q;
    EXPECT_EQ(g.order(), oracle::phi(q));
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(g.index_of_unit(g.residue(i)), i);
  }
}

TEST(UnitGroup, GeneratorOrdersMultiplyToPhi) {
  for (std::uint64_t q = 1; q <= 500; ++q) {
    const UnitGroup g(q);
    std::uint64_t prod = 1;
    for (const auto& gen : g.generators()) {
      prod *= gen.order;
      // exact multiplicative order
      std::uint64_t k = 1, x = gen.element % q;
      while (x != 1 % q) {
        x = x * gen.element % q;
        ++k;
      }
      EXPECT_EQ(k, gen.order) << "q=" << q << " g=" << gen.element;
    }
    EXPECT_EQ(prod, g.order()) << q;
  }
}

TEST(UnitGroup, ExponentsRoundTrip) {
  for (std::uint64_t q : {2, 8, 9, 15, 16, 24, 49, 64, 100, 105, 128, 360, 1000, 1024, 2310}) {
    const UnitGroup g(q);
    for (auto u : g.units()) {
      const auto e = g.exponents(u);
      EXPECT_EQ(g.element_of(e), u) << q;
      std::uint64_t mask = 0;
      for (std::size_t j = 0; j < e.size(); ++j)
        if (e[j] & 1) mask |= std::uint64_t{1} << j;
      EXPECT_EQ(g.exponent_parity_mask(u), mask);
    }
  }
}

TEST(UnitGroup, OpInverseIdentity) {
  const UnitGroup g(84);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_EQ(g.op(i, g.identity()), i);
    EXPECT_EQ(g.op(i, g.inverse(i)), g.identity());
    for (std::size_t j = 0; j < g.size(); ++j) EXPECT_EQ(g.residue(g.op(i, j)), g.residue(i) * g.residue(j) % 84);
  }
}

TEST(UnitGroup, NonUnitsAndReduce) {
  const UnitGroup g(12);
  EXPECT_FALSE(g.index_of(4).has_value());
  EXPECT_THROW(g.index_of_unit(4), std::invalid_argument);
  EXPECT_EQ(g.reduce(-1), 11u);
  EXPECT_TRUE(g.is_unit(-7));
  EXPECT_FALSE(g.is_unit(-6));
}

TEST(UnitGroup, ModulusOneIsTrivial) {
  const UnitGroup g(1);
  EXPECT_EQ(g.order(), 1u);
  EXPECT_TRUE(g.generators().empty());
  EXPECT_EQ(g.identity(), 0u);
}

TEST(UnitGroup, RejectsOutOfRange) {
  EXPECT_THROW(UnitGroup(0), std::invalid_argument);
  EXPECT_THROW(UnitGroup(std::uint64_t{1} << 32), std::invalid_argument);
}

TEST(PrimitiveRoot, GeneratesModP) {
  for (auto p : oracle::naive_primes(2000)) {
    if (p == 2) continue;
    const auto g = primitive_root(p);
    std::set<std::uint64_t> seen;
    std::uint64_t x = 1;
    for (std::uint64_t i = 0; i < p - 1; ++i) {
      seen.insert(x);
      x = x * g % p;
    }
    EXPECT_EQ(seen.size(), p - 1) << p;
  }
}

TEST(InverseMod, Basic) {
  for (std::uint64_t m = 2; m < 100; ++m)
    for (std::uint64_t a = 1; a < m; ++a)
      if (std::gcd(a, m) == 1) {
        ASSERT_EQ(a * inverse_mod(a, m) % m, 1u);
      }
}

TEST(GroupSet, SetAlgebra) {
  const auto g = make_unit_group(35);
  auto a = class_set_from_residues(g, std::vector<std::uint64_t>{1, 2, 4});
  auto b = class_set_from_residues(g, std::vector<std::uint64_t>{2, 3});
  EXPECT_EQ(residues(a | b), (std::vector<std::uint64_t>{1, 2, 3, 4}));
  EXPECT_EQ(residues(a & b), std::vector<std::uint64_t>{2});
  EXPECT_EQ((a | b).count(), 4u);
  EXPECT_EQ(a.complement().count(), 21u);
  EXPECT_TRUE((a & b).is_subset_of(a));
  EXPECT_TRUE(contains_residue(a, 4));
  EXPECT_FALSE(contains_residue(a, 5));
  EXPECT_TRUE(ClassSet::full(g).is_full());
  EXPECT_TRUE(ClassSet(g).empty());
}

TEST(GroupSet, TranslateAndInverse) {
  const auto g = make_unit_group(11);
  const auto a = class_set_from_residues(g, std::vector<std::uint64_t>{1, 2, 3});
  EXPECT_EQ(residues(a.translate(g->index_of_unit(2))), (std::vector<std::uint64_t>{2, 4, 6}));
  EXPECT_EQ(residues(a.inverse()), (std::vector<std::uint64_t>{1, 4, 6}));
}

TEST(GroupSet, LargeUniverseCrossesWords) {
  const auto g = make_unit_group(1009);
  auto s = ClassSet(g);
  for (std::size_t i = 60; i < 200; i += 3) s.insert(i);
  EXPECT_EQ(s.indices().front(), 60u);
  s.erase(60);
  EXPECT_FALSE(s.contains(60));
  EXPECT_EQ(s.count(), 46u);
}

TEST(GroupSet, DifferentGroupsRejected) {
  const auto a = ClassSet(make_unit_group(7));
  const auto b = ClassSet(make_unit_group(9));
  EXPECT_THROW(a | b, ModulusMismatch);
}

TEST(CyclicGroup, Basic) {
  const auto c = std::make_shared<const CyclicGroup>(10);
  GroupSet<CyclicGroup> s(c);
  s.insert(3);
  EXPECT_EQ(s.translate(9).indices(), std::vector<std::size_t>{2});
  EXPECT_EQ(s.inverse().indices(), std::vector<std::size_t>{7});
}
