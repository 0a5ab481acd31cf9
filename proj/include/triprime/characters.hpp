#pragma once

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include "triprime/arith.hpp"
#include "triprime/bound_report.hpp"
#include "triprime/errors.hpp"
#include "triprime/unit_group.hpp"

namespace triprime {

/// A real Dirichlet character modulo q, given by a sign on each generator of
/// the unit group. Bit j of id() set means chi(g_j) = -1; only generators of
/// even order may carry a sign.
class QuadraticCharacter {
 public:
  QuadraticCharacter(std::shared_ptr<const UnitGroup> group, std::uint64_t id)
      : group_(std::move(group)), id_(id) {
    const auto& gens = group_->generators();
    for (std::size_t j = 0; j < 64; ++j) {
      if (!((id >> j) & 1)) continue;
      if (j >= gens.size() || gens[j].order % 2 != 0)
        throw std::invalid_argument("QuadraticCharacter: sign on a generator of odd order");
    }
    const std::uint64_t q = group_->modulus();
    values_.assign(q, 0);
    prefix_.assign(q + 1, 0);
    for (std::uint64_t r = 0; r < q; ++r) {
      if (group_->index_of(r)) {
        const auto odd = std::popcount(group_->exponent_parity_mask(r) & id_) & 1;
        values_[r] = odd ? -1 : 1;
      }
    }
    // prefix_[n] = chi(1) + ... + chi(n), n = 0..q
    for (std::uint64_t n = 1; n <= q; ++n) prefix_[n] = prefix_[n - 1] + values_[n % q];
  }

  std::uint64_t modulus() const noexcept { return group_->modulus(); }
  std::uint64_t id() const noexcept { return id_; }
  bool is_principal() const noexcept { return id_ == 0; }
  const UnitGroup& group() const noexcept { return *group_; }
  const std::shared_ptr<const UnitGroup>& group_ptr() const noexcept { return group_; }

  /// Sign assigned to each generator.
  std::vector<int> signs() const {
    std::vector<int> out(group_->generators().size(), 1);
    for (std::size_t j = 0; j < out.size(); ++j)
      if ((id_ >> j) & 1) out[j] = -1;
    return out;
  }

  int operator()(std::int64_t n) const noexcept { return values_[group_->reduce(n)]; }
  int at_residue(std::uint64_t r) const noexcept { return values_[r]; }

  /// chi(1) + ... + chi(n mod q); equals the sum up to n for non-principal chi.
  std::int64_t period_prefix(std::int64_t n) const noexcept { return prefix_[group_->reduce(n)]; }

  std::string label() const { return "chi[" + std::to_string(modulus()) + "," + std::to_string(id_) + "]"; }

  /// Equality as functions on the integers.
  friend bool operator==(const QuadraticCharacter& a, const QuadraticCharacter& b) {
    return a.modulus() == b.modulus() && a.values_ == b.values_;
  }

 private:
  std::shared_ptr<const UnitGroup> group_;
  std::uint64_t id_;
  std::vector<std::int8_t> values_;
  std::vector<std::int32_t> prefix_;
};

/// All characters with chi^2 principal, principal first, in increasing id.
inline std::vector<QuadraticCharacter> real_characters(std::shared_ptr<const UnitGroup> group) {
  std::vector<std::size_t> even;
  const auto& gens = group->generators();
  for (std::size_t j = 0; j < gens.size(); ++j)
    if (gens[j].order % 2 == 0) even.push_back(j);
  std::vector<QuadraticCharacter> out;
  out.reserve(std::size_t{1} << even.size());
  for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << even.size()); ++sub) {
    std::uint64_t id = 0;
    for (std::size_t b = 0; b < even.size(); ++b)
      if ((sub >> b) & 1) id |= std::uint64_t{1} << even[b];
    out.emplace_back(group, id);
  }
  return out;
}

inline std::vector<QuadraticCharacter> real_characters(std::uint64_t q) {
  return real_characters(make_unit_group(q));
}

inline int char_eval(const QuadraticCharacter& chi, std::int64_t n) { return chi(n); }

inline void require_non_principal(const QuadraticCharacter& chi) {
  if (chi.is_principal()) throw PrincipalCharacterError();
}

struct IntervalSum {
  std::int64_t sum = 0;
  BoundReport report;
};

/// sum_{lo <= n <= hi} chi(n), compared with phi(q)/2.
inline IntervalSum interval_char_sum(const QuadraticCharacter& chi, std::int64_t lo, std::int64_t hi) {
  require_non_principal(chi);
  if (lo > hi) throw std::invalid_argument("interval_char_sum: lo > hi");
  const std::int64_t s = chi.period_prefix(hi) - chi.period_prefix(lo - 1);
  const double half_phi = static_cast<double>(chi.group().order()) / 2.0;
  // Integer-valued comparison: no slack needed.
  return {s, BoundReport::at_most("|sum chi(n)| on [" + std::to_string(lo) + "," + std::to_string(hi) + "]",
                                  static_cast<double>(std::llabs(s)), half_phi, 0.0)};
}

}  // namespace triprime
