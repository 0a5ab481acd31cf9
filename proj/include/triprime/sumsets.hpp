#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "triprime/bound_report.hpp"
#include "triprime/errors.hpp"
#include "triprime/group_set.hpp"

namespace triprime {

using Fraction = boost::rational<std::int64_t>;

/// A subgroup H <= G together with its index [G : H].
template <FiniteAbelianGroup G>
struct Subgroup {
  GroupSet<G> elements;
  std::size_t index = 1;

  std::size_t order() const { return elements.count(); }
};

/// {ab : a in A, b in B}: one translated OR of B per element of A.
template <FiniteAbelianGroup G>
GroupSet<G> product_set(const GroupSet<G>& a, const GroupSet<G>& b) {
  if (!a.same_group(b)) throw ModulusMismatch();
  const bool a_small = a.count() <= b.count();
  const GroupSet<G>& outer = a_small ? a : b;
  const GroupSet<G>& inner = a_small ? b : a;
  GroupSet<G> out(a.group_ptr());
  const std::size_t n = out.universe();
  std::size_t filled = 0;
  outer.for_each([&](std::size_t x) {
    if (filled == n) return;
    out.or_translate(inner, x);
    filled = out.count();
  });
  return out;
}

template <FiniteAbelianGroup G>
bool is_subgroup(const GroupSet<G>& h) {
  const auto& g = h.group();
  if (!h.contains(g.identity())) return false;
  bool closed = true;
  h.for_each([&](std::size_t x) {
    if (!closed) return;
    if (!h.contains(g.inverse(x))) closed = false;
    h.for_each([&](std::size_t y) {
      if (closed && !h.contains(g.op(x, y))) closed = false;
    });
  });
  return closed;
}

/// {h : hS = S}, by direct scan over G.
template <FiniteAbelianGroup G>
Subgroup<G> stabilizer(const GroupSet<G>& s) {
  if (s.empty()) throw std::invalid_argument("stabilizer: set must be nonempty");
  const auto& g = s.group();
  GroupSet<G> h(s.group_ptr());
  for (std::size_t x = 0; x < g.size(); ++x) {
    bool fixes = true;
    // hS is the same size as S, so hS subset of S is enough.
    s.for_each([&](std::size_t y) {
      if (fixes && !s.contains(g.op(x, y))) fixes = false;
    });
    if (fixes) h.insert(x);
  }
  const std::size_t order = h.count();
  return {std::move(h), g.size() / order};
}

/// Subgroup generated by S (S plus the identity, closed under products).
template <FiniteAbelianGroup G>
GroupSet<G> generated_subgroup(const GroupSet<G>& s) {
  GroupSet<G> h(s.group_ptr());
  h.insert(s.group().identity());
  while (true) {
    auto next = h | product_set(h, s);
    if (next == h) return h;
    h = std::move(next);
  }
}

struct KneserCheck {
  std::size_t product_size = 0;
  std::size_t stabilizer_size = 0;
  std::size_t a_h_size = 0;
  std::size_t b_h_size = 0;
  BoundReport report;
};

/// |AB| >= |AH| + |BH| - |H| with H the stabilizer of AB.
template <FiniteAbelianGroup G>
KneserCheck kneser_check(const GroupSet<G>& a, const GroupSet<G>& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("kneser_check: sets must be nonempty");
  const auto ab = product_set(a, b);
  const auto h = stabilizer(ab);
  KneserCheck out;
  out.product_size = ab.count();
  out.stabilizer_size = h.order();
  out.a_h_size = product_set(a, h.elements).count();
  out.b_h_size = product_set(b, h.elements).count();
  const auto rhs = static_cast<std::int64_t>(out.a_h_size + out.b_h_size) -
                   static_cast<std::int64_t>(out.stabilizer_size);
  const auto lhs = static_cast<std::int64_t>(out.product_size);
  out.report = BoundReport::exact("|AB|", static_cast<double>(lhs), static_cast<double>(rhs),
                                  Relation::at_least, lhs >= rhs);
  return out;
}

/// Density below which the product-set argument does not start.
inline const Fraction kDensityThreshold{13, 32};
inline const Fraction kProductDensity{7, 10};

enum class IndexCase { index1, index2, index3, index4, index_large };

inline std::string to_string(IndexCase c) {
  switch (c) {
    case IndexCase::index1: return "index 1";
    case IndexCase::index2: return "index 2";
    case IndexCase::index3: return "index 3";
    case IndexCase::index4: return "index 4";
    case IndexCase::index_large: return "index >= 5";
  }
  return "?";
}

struct CaseAnalysis {
  /// Guaranteed lower bound for |AA| / |G|.
  Fraction fraction{1};
  IndexCase label = IndexCase::index1;
  /// Index of the stabilizer of AA.
  std::size_t index = 1;
};

/// (2 ceil(Y/U) - 1) / Y for a density 1/U given as a fraction.
inline Fraction large_index_fraction(std::int64_t y, const Fraction& density) {
  const Fraction t = density * y;
  const std::int64_t ceil = (t.numerator() + t.denominator() - 1) / t.denominator();
  return Fraction(2 * ceil - 1, y);
}

/// Guaranteed density of AA from Kneser's inequality, split by the index Y
/// of the stabilizer of AA. Requires |A| >= 13/32 |G| and that A generates G.
/// In the index-2 case the conclusion needs AA to meet both cosets of H; that
/// is verified on the data rather than assumed.
template <FiniteAbelianGroup G>
CaseAnalysis case_analysis_lower_bound(const GroupSet<G>& a) {
  const auto n = static_cast<std::int64_t>(a.universe());
  const auto size = static_cast<std::int64_t>(a.count());
  if (Fraction(size, n) < kDensityThreshold)
    throw HypothesisError("case analysis needs |A| >= 13/32 |G|, got " + std::to_string(size) + "/" +
                          std::to_string(n));
  if (!generated_subgroup(a).is_full()) throw HypothesisError("case analysis needs A to generate G");

  const auto aa = product_set(a, a);
  const auto h = stabilizer(aa);
  const auto y = static_cast<std::int64_t>(h.index);
  CaseAnalysis out;
  out.index = h.index;
  switch (y) {
    case 1:
      out.label = IndexCase::index1;
      out.fraction = 1;
      break;
    case 2: {
      // H is the kernel of a quadratic character; AA must hit both values.
      bool in_kernel = false, outside = false;
      aa.for_each([&](std::size_t x) { (h.elements.contains(x) ? in_kernel : outside) = true; });
      if (!(in_kernel && outside))
        throw HypothesisError("index 2: AA lies in one coset of its stabilizer (no kernel element in A)");
      out.label = IndexCase::index2;
      out.fraction = 1;
      break;
    }
    case 3:
      out.label = IndexCase::index3;
      out.fraction = 1;
      break;
    case 4:
      out.label = IndexCase::index4;
      out.fraction = Fraction(3, 4);
      break;
    default: {
      // A meets at least ceil(Y / U) cosets, U = |G| / |A|.
      out.label = IndexCase::index_large;
      out.fraction = large_index_fraction(y, Fraction(size, n));
      if (out.fraction < kProductDensity)
        throw std::logic_error("case analysis: fraction below 7/10 despite density hypothesis");
      break;
    }
  }
  return out;
}

}  // namespace triprime
