#pragma once

#include <bit>
#include <concepts>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "triprime/errors.hpp"
#include "triprime/unit_group.hpp"

namespace triprime {

/// A finite abelian group whose elements are the indices 0..size()-1.
template <class G>
concept FiniteAbelianGroup = requires(const G& g, std::size_t i) {
  { g.size() } -> std::convertible_to<std::size_t>;
  { g.modulus() } -> std::convertible_to<std::uint64_t>;
  { g.identity() } -> std::convertible_to<std::size_t>;
  { g.op(i, i) } -> std::convertible_to<std::size_t>;
  { g.inverse(i) } -> std::convertible_to<std::size_t>;
};

/// Z/nZ under addition; used to exercise the set machinery on groups other
/// than unit groups.
class CyclicGroup {
 public:
  explicit CyclicGroup(std::uint64_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("CyclicGroup: n must be >= 1");
  }
  std::size_t size() const noexcept { return n_; }
  std::uint64_t modulus() const noexcept { return n_; }
  std::size_t identity() const noexcept { return 0; }
  std::size_t op(std::size_t i, std::size_t j) const noexcept { return (i + j) % n_; }
  std::size_t inverse(std::size_t i) const noexcept { return (n_ - i) % n_; }

 private:
  std::uint64_t n_;
};

/// Subset of a finite abelian group as a bit vector over element indices.
/// Value type; the group itself is shared and immutable.
template <FiniteAbelianGroup G>
class GroupSet {
 public:
  using group_type = G;

  explicit GroupSet(std::shared_ptr<const G> group)
      : group_(std::move(group)), words_((group_->size() + 63) / 64, 0) {}

  static GroupSet full(std::shared_ptr<const G> group) {
    GroupSet s(std::move(group));
    for (std::size_t i = 0; i < s.universe(); ++i) s.insert(i);
    return s;
  }

  template <class Range>
  static GroupSet of(std::shared_ptr<const G> group, const Range& indices) {
    GroupSet s(std::move(group));
    for (auto i : indices) s.insert(static_cast<std::size_t>(i));
    return s;
  }

  const G& group() const noexcept { return *group_; }
  const std::shared_ptr<const G>& group_ptr() const noexcept { return group_; }
  std::size_t universe() const noexcept { return group_->size(); }

  bool contains(std::size_t i) const noexcept { return (words_[i / 64] >> (i % 64)) & 1; }
  void insert(std::size_t i) noexcept { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void erase(std::size_t i) noexcept { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const noexcept {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  bool is_full() const noexcept { return count() == universe(); }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      for (std::uint64_t bits = words_[w]; bits != 0; bits &= bits - 1)
        f(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
    }
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  bool same_group(const GroupSet& other) const noexcept {
    return group_ == other.group_ ||
           (group_->size() == other.group_->size() && group_->modulus() == other.group_->modulus());
  }

  /// h * S
  GroupSet translate(std::size_t h) const {
    GroupSet out(group_);
    for_each([&](std::size_t i) { out.insert(group_->op(h, i)); });
    return out;
  }

  /// Adds h * other to this set.
  GroupSet& or_translate(const GroupSet& other, std::size_t h) {
    require_same(other);
    other.for_each([&](std::size_t i) { insert(group_->op(h, i)); });
    return *this;
  }

  /// S^{-1}
  GroupSet inverse() const {
    GroupSet out(group_);
    for_each([&](std::size_t i) { out.insert(group_->inverse(i)); });
    return out;
  }

  GroupSet complement() const {
    GroupSet out(group_);
    for (std::size_t i = 0; i < universe(); ++i)
      if (!contains(i)) out.insert(i);
    return out;
  }

  bool is_subset_of(const GroupSet& other) const {
    require_same(other);
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & ~other.words_[w]) return false;
    return true;
  }

  GroupSet& operator|=(const GroupSet& other) {
    require_same(other);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
    return *this;
  }
  GroupSet& operator&=(const GroupSet& other) {
    require_same(other);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
    return *this;
  }
  friend GroupSet operator|(GroupSet a, const GroupSet& b) { return a |= b; }
  friend GroupSet operator&(GroupSet a, const GroupSet& b) { return a &= b; }

  friend bool operator==(const GroupSet& a, const GroupSet& b) {
    return a.same_group(b) && a.words_ == b.words_;
  }

  std::span<const std::uint64_t> words() const noexcept { return words_; }

 private:
  void require_same(const GroupSet& other) const {
    if (!same_group(other)) throw ModulusMismatch();
  }

  std::shared_ptr<const G> group_;
  std::vector<std::uint64_t> words_;
};

/// Set of invertible residues modulo q.
using ClassSet = GroupSet<UnitGroup>;

template <class Range>
ClassSet class_set_from_residues(std::shared_ptr<const UnitGroup> group, const Range& residues) {
  ClassSet s(group);
  for (auto r : residues) s.insert(group->index_of_unit(static_cast<std::uint64_t>(r)));
  return s;
}

inline bool contains_residue(const ClassSet& s, std::uint64_t residue) {
  const auto i = s.group().index_of(residue);
  return i && s.contains(*i);
}

inline std::vector<std::uint64_t> residues(const ClassSet& s) {
  std::vector<std::uint64_t> out;
  s.for_each([&](std::size_t i) { out.push_back(s.group().residue(i)); });
  return out;
}

}  // namespace triprime
