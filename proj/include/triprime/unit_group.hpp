#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "triprime/arith.hpp"

namespace triprime {

/// Inverse of a modulo m, for gcd(a, m) = 1.
inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  std::int64_t old_r = static_cast<std::int64_t>(a % m), r = static_cast<std::int64_t>(m);
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t quot = old_r / r;
    old_r = std::exchange(r, old_r - quot * r);
    old_s = std::exchange(s, old_s - quot * s);
  }
  if (old_r != 1) throw std::invalid_argument("inverse_mod: not invertible");
  const auto mm = static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(((old_s % mm) + mm) % mm);
}

/// Least primitive root modulo an odd prime p.
inline std::uint64_t primitive_root(std::uint64_t p) {
  if (p == 2) return 1;
  const auto rad = factor(p - 1).primes();
  for (std::uint64_t g = 2;; ++g) {
    bool ok = true;
    for (auto r : rad)
      if (powmod(g, (p - 1) / r, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
}

struct Generator {
  std::uint64_t element;
  std::uint64_t order;

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// The multiplicative group (Z/qZ)^*, presented as a direct product of
/// cyclic factors (one per odd prime power, {-1, 5} for 2^k with k >= 3).
///
/// Elements are also indexed 0..phi-1 in increasing residue order; that index
/// is the bit position used by GroupSet. Every unit has a unique exponent
/// vector with respect to generators(). The exponent table is precomputed when
/// phi(q) <= 2^20 and computed on demand by per-component discrete logs
/// otherwise.
class UnitGroup {
 public:
  using element_type = std::size_t;

  static constexpr std::uint64_t kExponentTableLimit = std::uint64_t{1} << 20;

  explicit UnitGroup(std::uint64_t q) : q_(q) {
    if (q == 0) throw std::invalid_argument("UnitGroup: q must be >= 1");
    if (q >= (std::uint64_t{1} << 32)) throw std::invalid_argument("UnitGroup: q must be < 2^32");

    index_.assign(q, -1);
    for (std::uint64_t r = 0; r < q; ++r) {
      if (std::gcd(r, q) == 1) {
        index_[r] = static_cast<std::int64_t>(units_.size());
        units_.push_back(r);
      }
    }
    build_generators();
    if (order() <= kExponentTableLimit) build_exponent_table();
  }

  std::uint64_t modulus() const noexcept { return q_; }
  std::size_t order() const noexcept { return units_.size(); }
  std::size_t size() const noexcept { return units_.size(); }
  const std::vector<Generator>& generators() const noexcept { return generators_; }
  /// Units in increasing order.
  const std::vector<std::uint64_t>& units() const noexcept { return units_; }

  std::uint64_t reduce(std::int64_t n) const noexcept {
    const auto m = static_cast<std::int64_t>(q_);
    return static_cast<std::uint64_t>(((n % m) + m) % m);
  }

  bool is_unit(std::int64_t n) const noexcept { return index_[reduce(n)] >= 0; }

  std::optional<std::size_t> index_of(std::uint64_t residue) const noexcept {
    const auto i = index_[residue % q_];
    if (i < 0) return std::nullopt;
    return static_cast<std::size_t>(i);
  }

  std::size_t index_of_unit(std::uint64_t residue) const {
    const auto i = index_[residue % q_];
    if (i < 0) throw std::invalid_argument("UnitGroup: residue is not a unit");
    return static_cast<std::size_t>(i);
  }

  std::uint64_t residue(std::size_t i) const noexcept { return units_[i]; }

  // Group interface used by GroupSet.
  std::size_t identity() const noexcept { return static_cast<std::size_t>(index_[1 % q_]); }
  std::size_t op(std::size_t i, std::size_t j) const noexcept {
    return static_cast<std::size_t>(index_[units_[i] * units_[j] % q_]);
  }
  std::size_t inverse(std::size_t i) const {
    return static_cast<std::size_t>(index_[inverse_mod(units_[i], q_)]);
  }

  bool has_exponent_table() const noexcept { return !exponents_.empty() || generators_.empty(); }

  /// Exponent vector of a unit residue with respect to generators().
  std::vector<std::uint64_t> exponents(std::uint64_t residue) const {
    const auto i = index_of_unit(residue);
    const std::size_t k = generators_.size();
    if (!exponents_.empty()) {
      std::span<const std::uint32_t> row(exponents_.data() + i * k, k);
      return {row.begin(), row.end()};
    }
    return discrete_log(units_[i]);
  }

  /// Parity of each exponent; sufficient for evaluating real characters.
  std::uint64_t exponent_parity_mask(std::uint64_t residue) const {
    if (!parity_.empty()) return parity_[index_of_unit(residue)];
    std::uint64_t mask = 0;
    const auto e = exponents(residue);
    for (std::size_t j = 0; j < e.size(); ++j)
      if (e[j] & 1) mask |= std::uint64_t{1} << j;
    return mask;
  }

  std::uint64_t element_of(std::span<const std::uint64_t> exps) const {
    std::uint64_t acc = 1 % q_;
    for (std::size_t j = 0; j < generators_.size(); ++j)
      acc = mulmod(acc, powmod(generators_[j].element, exps[j], q_), q_);
    return acc;
  }

 private:
  struct Component {
    std::uint64_t prime;
    std::uint64_t prime_power;
    std::size_t first_generator;
    // Generator residues modulo prime_power, parallel to the global list.
    std::vector<std::uint64_t> local;
  };

  std::uint64_t lift(std::uint64_t local, std::uint64_t pk) const {
    // x = 1 (mod q/pk), x = local (mod pk)
    const std::uint64_t m = q_ / pk;
    if (m == 1) return local % q_;
    const std::uint64_t t = mulmod((local + pk - 1) % pk, inverse_mod(m % pk, pk), pk);
    return (1 + m * t) % q_;
  }

  void build_generators() {
    for (const auto& [p, e] : factor(q_).factors) {
      std::uint64_t pk = 1;
      for (unsigned i = 0; i < e; ++i) pk *= p;
      Component c{p, pk, generators_.size(), {}};
      if (p == 2) {
        if (e >= 2) {
          c.local.push_back(pk - 1);
          generators_.push_back({lift(pk - 1, pk), 2});
        }
        if (e >= 3) {
          c.local.push_back(5);
          generators_.push_back({lift(5, pk), pk / 4});
        }
      } else {
        std::uint64_t g = primitive_root(p);
        if (e >= 2 && powmod(g, p - 1, p * p) == 1) g += p;
        c.local.push_back(g);
        generators_.push_back({lift(g, pk), pk / p * (p - 1)});
      }
      if (!c.local.empty()) components_.push_back(std::move(c));
    }
  }

  void build_exponent_table() {
    const std::size_t k = generators_.size();
    if (k == 0) return;
    exponents_.assign(order() * k, 0);
    parity_.assign(order(), 0);
    std::vector<std::uint32_t> digits(k, 0);
    std::uint64_t cur = 1 % q_;
    for (std::size_t step = 0; step < order(); ++step) {
      const auto i = static_cast<std::size_t>(index_[cur]);
      std::copy(digits.begin(), digits.end(), exponents_.begin() + static_cast<std::ptrdiff_t>(i * k));
      std::uint64_t mask = 0;
      for (std::size_t j = 0; j < k; ++j)
        if (digits[j] & 1) mask |= std::uint64_t{1} << j;
      parity_[i] = mask;
      // Odometer increment: multiplying by g_j and wrapping at its order
      // leaves g_j^{order} = 1 behind, so no correction is needed.
      for (std::size_t j = 0; j < k; ++j) {
        cur = cur * generators_[j].element % q_;
        if (++digits[j] < generators_[j].order) break;
        digits[j] = 0;
      }
    }
  }

  std::vector<std::uint64_t> discrete_log(std::uint64_t u) const {
    std::vector<std::uint64_t> out(generators_.size(), 0);
    for (const auto& c : components_) {
      std::uint64_t x = u % c.prime_power;
      std::size_t j = c.first_generator;
      if (c.prime == 2) {
        // x = (-1)^a 5^b; the sign is read off modulo 4.
        if (x % 4 == 3) {
          out[j] = 1;
          x = c.prime_power - x;
        }
        if (c.local.size() == 2) out[j + 1] = brute_log(c.local[1], x, c.prime_power);
      } else {
        out[j] = brute_log(c.local[0], x, c.prime_power);
      }
    }
    return out;
  }

  static std::uint64_t brute_log(std::uint64_t g, std::uint64_t x, std::uint64_t m) {
    std::uint64_t acc = 1 % m;
    for (std::uint64_t e = 0; e < m; ++e) {
      if (acc == x) return e;
      acc = mulmod(acc, g, m);
    }
    throw std::logic_error("UnitGroup: discrete log failed");
  }

  std::uint64_t q_;
  std::vector<std::int64_t> index_;
  std::vector<std::uint64_t> units_;
  std::vector<Generator> generators_;
  std::vector<Component> components_;
  std::vector<std::uint32_t> exponents_;
  std::vector<std::uint64_t> parity_;
};

inline UnitGroup unit_group(std::uint64_t q) { return UnitGroup(q); }

inline std::shared_ptr<const UnitGroup> make_unit_group(std::uint64_t q) {
  return std::make_shared<const UnitGroup>(q);
}

}  // namespace triprime
