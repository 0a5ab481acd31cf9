#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "triprime/bound_report.hpp"

namespace triprime {

using BigInt = boost::multiprecision::cpp_int;

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// n = product of prime^exponent, primes strictly increasing.
struct Factorization {
  std::uint64_t n = 1;
  std::vector<PrimePower> factors;

  std::vector<std::uint64_t> primes() const {
    std::vector<std::uint64_t> out;
    out.reserve(factors.size());
    for (const auto& f : factors) out.push_back(f.prime);
    return out;
  }
};

/// Trial division with a mod-30 wheel. Adequate for every modulus this
/// library works with; worst case (a prime near 2^63) takes a few seconds.
inline Factorization factor(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factor: n must be positive");
  if (n > (std::uint64_t{1} << 63)) throw std::invalid_argument("factor: n exceeds 2^63");

  Factorization out;
  out.n = n;
  auto take = [&](std::uint64_t p) {
    if (n % p != 0) return;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.factors.push_back({p, e});
  };
  take(2);
  take(3);
  take(5);
  static constexpr std::array<std::uint64_t, 8> kGaps{4, 2, 4, 2, 4, 6, 2, 6};
  std::uint64_t d = 7;
  for (std::size_t i = 0; d <= n / d; d += kGaps[i], i = (i + 1) % kGaps.size()) take(d);
  if (n > 1) out.factors.push_back({n, 1});
  return out;
}

inline std::uint64_t euler_phi(const Factorization& f) {
  std::uint64_t phi = 1;
  for (const auto& [p, e] : f.factors) {
    phi *= p - 1;
    for (unsigned i = 1; i < e; ++i) phi *= p;
  }
  return phi;
}

inline std::uint64_t euler_phi(std::uint64_t n) { return euler_phi(factor(n)); }

/// prod_{p | q} (1 - 1/sqrt(p))^{-1}
inline double f0(std::uint64_t q) {
  if (q < 2) throw std::invalid_argument("f0: q must be >= 2");
  double acc = 1.0;
  for (const auto& pp : factor(q).factors) acc /= 1.0 - 1.0 / std::sqrt(static_cast<double>(pp.prime));
  return acc;
}

inline BoundReport check_f0_bound(std::uint64_t q) {
  return BoundReport::at_most("f0(" + std::to_string(q) + ")", f0(q),
                              3.32 * std::sqrt(static_cast<double>(q)));
}

/// Jacobi symbol (a | n) for odd n >= 1.
inline int jacobi(std::int64_t a, std::uint64_t n) {
  if (n % 2 == 0) throw std::invalid_argument("jacobi: n must be odd");
  std::int64_t r = a % static_cast<std::int64_t>(n);
  std::uint64_t x = r < 0 ? static_cast<std::uint64_t>(r + static_cast<std::int64_t>(n))
                          : static_cast<std::uint64_t>(r);
  int sign = 1;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      if (n % 8 == 3 || n % 8 == 5) sign = -sign;
    }
    std::swap(x, n);
    if (x % 4 == 3 && n % 4 == 3) sign = -sign;
    x %= n;
  }
  return n == 1 ? sign : 0;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Deterministic primality by trial division; used to revalidate witnesses
/// independently of any sieve.
inline bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2)
    if (n % d == 0) return false;
  return true;
}

// Exact big-integer helpers.

inline BigInt ipow(const BigInt& base, unsigned exp) { return boost::multiprecision::pow(base, exp); }

/// floor(x^(1/k)) for x >= 0, by Newton iteration on integers.
inline BigInt iroot(const BigInt& x, unsigned k) {
  if (k == 0) throw std::invalid_argument("iroot: k must be positive");
  if (x < 2 || k == 1) return x;
  // Start above the root: 2^ceil(bits/k).
  const auto bits = boost::multiprecision::msb(x) + 1;
  BigInt r = BigInt{1} << ((bits + k - 1) / k);
  while (true) {
    BigInt next = ((k - 1) * r + x / ipow(r, k - 1)) / k;
    if (next >= r) break;
    r = next;
  }
  while (ipow(r + 1, k) <= x) ++r;
  while (ipow(r, k) > x) --r;
  return r;
}

/// floor(q^(16/3)): the largest prime threshold P for which q <= (P^3)^(1/16).
inline BigInt theorem_threshold(std::uint64_t q) { return iroot(ipow(BigInt{q}, 16), 3); }

/// True when q <= x^(1/16), compared exactly as q^16 <= x.
inline bool modulus_admissible(std::uint64_t q, const BigInt& x) { return ipow(BigInt{q}, 16) <= x; }

}  // namespace triprime
