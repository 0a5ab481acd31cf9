#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "triprime/arith.hpp"
#include "triprime/bound_report.hpp"
#include "triprime/errors.hpp"
#include "triprime/group_set.hpp"
#include "triprime/unit_group.hpp"

namespace triprime {

inline constexpr const char* kSieveMemoryCapEnv = "TRIPRIME_SIEVE_MEMORY_CAP";

struct SieveConfig {
  /// Odd numbers per segment.
  std::uint64_t segment_odds = std::uint64_t{1} << 20;
  /// Upper bound on bytes held by any one sieve object.
  std::uint64_t memory_cap_bytes = std::uint64_t{1} << 30;
  std::uint64_t max_limit = 10'000'000'000ULL;

  /// Defaults, with the memory cap overridden by TRIPRIME_SIEVE_MEMORY_CAP
  /// when that variable holds a positive integer.
  static SieveConfig from_env() {
    SieveConfig cfg;
    if (const char* v = std::getenv(kSieveMemoryCapEnv)) {
      char* end = nullptr;
      const auto parsed = std::strtoull(v, &end, 10);
      if (end != v && *end == '\0' && parsed > 0) cfg.memory_cap_bytes = parsed;
    }
    return cfg;
  }
};

inline std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

namespace detail {

/// Odd primes up to n by a plain sieve; n stays below 10^5 for every
/// segmented use.
inline std::vector<std::uint32_t> small_odd_primes(std::uint64_t n) {
  std::vector<std::uint32_t> out;
  if (n < 3) return out;
  std::vector<bool> composite(n + 1, false);
  for (std::uint64_t i = 3; i <= n; i += 2) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= n; j += 2 * i) composite[j] = true;
  }
  return out;
}

/// Bit i of `bits` is set iff first_odd + 2i is prime (1 excluded).
inline void sieve_odd_segment(std::uint64_t first_odd, std::uint64_t count,
                              const std::vector<std::uint32_t>& base,
                              std::vector<std::uint64_t>& bits) {
  bits.assign((count + 63) / 64, ~std::uint64_t{0});
  if (count % 64) bits.back() = (std::uint64_t{1} << (count % 64)) - 1;
  const std::uint64_t last = first_odd + 2 * (count - 1);
  for (std::uint32_t p32 : base) {
    const std::uint64_t p = p32;
    if (p * p > last) break;
    std::uint64_t start = std::max(p * p, (first_odd + p - 1) / p * p);
    if (start % 2 == 0) start += p;
    for (std::uint64_t i = (start - first_odd) / 2; i < count; i += p)
      bits[i / 64] &= ~(std::uint64_t{1} << (i % 64));
  }
  if (first_odd == 1) bits[0] &= ~std::uint64_t{1};
}

inline std::uint64_t estimated_base_bytes(std::uint64_t hi) {
  const double r = std::sqrt(static_cast<double>(hi)) + 2.0;
  return static_cast<std::uint64_t>(1.3 * r / std::max(1.0, std::log(r))) * sizeof(std::uint32_t) + 64;
}

inline void require_limit(std::uint64_t hi, const SieveConfig& cfg) {
  if (hi > cfg.max_limit)
    throw ResourceError("sieve limit " + std::to_string(hi) + " exceeds configured maximum " +
                        std::to_string(cfg.max_limit));
}

inline void require_memory(std::uint64_t bytes, const SieveConfig& cfg) {
  if (bytes > cfg.memory_cap_bytes)
    throw ResourceError("sieve needs " + std::to_string(bytes) + " bytes, cap is " +
                        std::to_string(cfg.memory_cap_bytes));
}

}  // namespace detail

/// Primes in [lo, hi], increasing, each exactly once. Segmented sieve of
/// Eratosthenes over odd numbers; only one segment is resident at a time.
class PrimeStream {
 public:
  PrimeStream(std::uint64_t lo, std::uint64_t hi, const SieveConfig& cfg = SieveConfig::from_env())
      : lo_(lo), hi_(hi) {
    detail::require_limit(hi, cfg);
    std::uint64_t seg = std::max<std::uint64_t>(64, cfg.segment_odds);
    if (hi >= lo) seg = std::min(seg, (hi - lo) / 2 + 64);
    detail::require_memory(seg / 8 + detail::estimated_base_bytes(hi), cfg);
    segment_odds_ = seg;
    if (hi < lo || hi < 2) {
      done_ = true;
      return;
    }
    base_ = detail::small_odd_primes(isqrt(hi));
    emit_two_ = lo <= 2;
    next_odd_ = std::max<std::uint64_t>(lo | 1, 1);
  }

  std::uint64_t limit() const noexcept { return hi_; }
  std::uint64_t lower() const noexcept { return lo_; }
  std::uint64_t segment_odds() const noexcept { return segment_odds_; }

  std::optional<std::uint64_t> next() {
    if (emit_two_) {
      emit_two_ = false;
      return 2;
    }
    while (!done_) {
      if (cursor_ < bits_.size() * 64) {
        // Find the next set bit at or after cursor_.
        std::size_t w = cursor_ / 64;
        std::uint64_t word = bits_[w] & (~std::uint64_t{0} << (cursor_ % 64));
        while (word == 0 && ++w < bits_.size()) word = bits_[w];
        if (word != 0) {
          const std::size_t i = w * 64 + static_cast<std::size_t>(std::countr_zero(word));
          cursor_ = i + 1;
          return seg_first_ + 2 * i;
        }
        cursor_ = bits_.size() * 64;
      }
      load_next_segment();
    }
    return std::nullopt;
  }

  /// Calls f(p) for each remaining prime until f returns false.
  template <class F>
  void for_each(F&& f) {
    while (auto p = next())
      if (!f(*p)) return;
  }

  std::vector<std::uint64_t> collect() {
    std::vector<std::uint64_t> out;
    for_each([&](std::uint64_t p) {
      out.push_back(p);
      return true;
    });
    return out;
  }

 private:
  void load_next_segment() {
    if (next_odd_ > hi_) {
      done_ = true;
      bits_.clear();
      return;
    }
    const std::uint64_t count = std::min(segment_odds_, (hi_ - next_odd_) / 2 + 1);
    detail::sieve_odd_segment(next_odd_, count, base_, bits_);
    seg_first_ = next_odd_;
    cursor_ = 0;
    next_odd_ += 2 * count;
  }

  std::uint64_t lo_, hi_;
  std::uint64_t segment_odds_ = 0;
  std::vector<std::uint32_t> base_;
  std::vector<std::uint64_t> bits_;
  std::uint64_t seg_first_ = 1;
  std::size_t cursor_ = 0;
  std::uint64_t next_odd_ = 1;
  bool emit_two_ = false;
  bool done_ = false;
};

inline PrimeStream primes_up_to(std::uint64_t n, const SieveConfig& cfg = SieveConfig::from_env()) {
  return PrimeStream(2, n, cfg);
}

/// Feeds the primes in [2, hi] to f until f returns false, sieving in
/// geometrically growing windows so that an early stop stays cheap.
/// Returns true when f stopped the iteration.
template <class F>
bool for_each_prime_until(std::uint64_t hi, const SieveConfig& cfg, F&& f) {
  detail::require_limit(hi, cfg);
  bool stopped = false;
  for (std::uint64_t lo = 2, whi = std::min<std::uint64_t>(hi, 1 << 12); lo <= hi;
       lo = whi + 1, whi = std::min(hi, whi * 4)) {
    PrimeStream(lo, whi, cfg).for_each([&](std::uint64_t p) {
      stopped = !f(p);
      return !stopped;
    });
    if (stopped || whi == hi) break;
  }
  return stopped;
}

/// Resident primality bitmap with O(1) prime counting, for sweeps that ask
/// many questions below one limit.
class PrimeTable {
 public:
  explicit PrimeTable(std::uint64_t limit, const SieveConfig& cfg = SieveConfig::from_env())
      : limit_(limit) {
    detail::require_limit(limit, cfg);
    const std::uint64_t odds = limit / 2 + 1;  // 1, 3, ..., covering limit
    const std::uint64_t words = (odds + 63) / 64;
    detail::require_memory(words * 12 + detail::estimated_base_bytes(limit), cfg);
    bits_.assign(words, 0);
    const auto base = detail::small_odd_primes(isqrt(limit));
    const std::uint64_t seg = std::max<std::uint64_t>(64, cfg.segment_odds / 64 * 64);
    std::vector<std::uint64_t> chunk;
    for (std::uint64_t first = 0; first < odds; first += seg) {
      const std::uint64_t count = std::min(seg, odds - first);
      detail::sieve_odd_segment(2 * first + 1, count, base, chunk);
      std::copy(chunk.begin(), chunk.end(), bits_.begin() + static_cast<std::ptrdiff_t>(first / 64));
    }
    // Drop the odd number above the limit, if the last slot overshoots.
    if (2 * (odds - 1) + 1 > limit) bits_[(odds - 1) / 64] &= ~(std::uint64_t{1} << ((odds - 1) % 64));
    rank_.resize(words + 1, 0);
    for (std::uint64_t w = 0; w < words; ++w)
      rank_[w + 1] = rank_[w] + static_cast<std::uint32_t>(std::popcount(bits_[w]));
  }

  std::uint64_t limit() const noexcept { return limit_; }

  bool is_prime(std::uint64_t n) const {
    check(n);
    if (n < 3) return n == 2;
    if (n % 2 == 0) return false;
    const std::uint64_t i = n / 2;
    return (bits_[i / 64] >> (i % 64)) & 1;
  }

  /// Number of primes <= n.
  std::uint64_t pi(std::uint64_t n) const {
    check(n);
    if (n < 2) return 0;
    const std::uint64_t i = (n - 1) / 2;  // last odd index <= n
    const std::uint64_t w = i / 64, b = i % 64;
    const std::uint64_t mask = b == 63 ? ~std::uint64_t{0} : (std::uint64_t{2} << b) - 1;
    return 1 + rank_[w] + static_cast<std::uint64_t>(std::popcount(bits_[w] & mask));
  }

 private:
  void check(std::uint64_t n) const {
    if (n > limit_) throw std::out_of_range("PrimeTable: query beyond limit");
  }

  std::uint64_t limit_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint32_t> rank_;
};

/// pi(x) by streaming.
inline std::uint64_t prime_pi(std::uint64_t x, const SieveConfig& cfg = SieveConfig::from_env()) {
  std::uint64_t n = 0;
  PrimeStream(2, x, cfg).for_each([&](std::uint64_t) {
    ++n;
    return true;
  });
  return n;
}

inline constexpr double kDusartThreshold = 5393.0;

namespace detail {
inline BoundReport dusart_report(double x, std::uint64_t pi_x) {
  if (!(x >= kDusartThreshold)) throw RegimeError("check_dusart: x must be >= 5393");
  return BoundReport::at_least("pi(" + std::to_string(static_cast<std::uint64_t>(x)) + ")",
                               static_cast<double>(pi_x), x / (std::log(x) - 1.0));
}
}  // namespace detail

/// pi(x) >= x / (log x - 1), x >= 5393. pi(x) means pi(floor x).
inline BoundReport check_dusart(double x, const SieveConfig& cfg = SieveConfig::from_env()) {
  if (!(x >= kDusartThreshold)) throw RegimeError("check_dusart: x must be >= 5393");
  return detail::dusart_report(x, prime_pi(static_cast<std::uint64_t>(std::floor(x)), cfg));
}

inline BoundReport check_dusart(double x, const PrimeTable& table) {
  if (!(x >= kDusartThreshold)) throw RegimeError("check_dusart: x must be >= 5393");
  return detail::dusart_report(x, table.pi(static_cast<std::uint64_t>(std::floor(x))));
}

struct CoprimePrimeCount {
  std::uint64_t count = 0;
  /// Comparison with X / log X; only present when X >= 5393.
  std::optional<BoundReport> report;
};

namespace detail {
inline CoprimePrimeCount coprime_from_pi(std::uint64_t x, std::uint64_t q, std::uint64_t pi_x) {
  CoprimePrimeCount out;
  std::uint64_t shared = 0;
  if (q > 1)
    for (auto p : factor(q).primes())
      if (p <= x) ++shared;
  out.count = pi_x - shared;
  if (x >= 5393) {
    const double xd = static_cast<double>(x);
    out.report = BoundReport::at_least(
        "pi_" + std::to_string(q) + "(" + std::to_string(x) + ")", static_cast<double>(out.count),
        xd / std::log(xd));
  }
  return out;
}
}  // namespace detail

/// Number of primes p <= X with gcd(p, q) = 1.
inline CoprimePrimeCount coprime_prime_count(std::uint64_t x, std::uint64_t q,
                                             const SieveConfig& cfg = SieveConfig::from_env()) {
  if (q == 0) throw std::invalid_argument("coprime_prime_count: q must be >= 1");
  return detail::coprime_from_pi(x, q, prime_pi(x, cfg));
}

inline CoprimePrimeCount coprime_prime_count(std::uint64_t x, std::uint64_t q, const PrimeTable& table) {
  if (q == 0) throw std::invalid_argument("coprime_prime_count: q must be >= 1");
  return detail::coprime_from_pi(x, q, table.pi(x));
}

namespace detail {
inline void require_bt_args(std::uint64_t x, std::uint64_t q, std::int64_t a) {
  if (q == 0 || q >= x) throw std::invalid_argument("check_brun_titchmarsh: need 1 <= q < x");
  const auto m = static_cast<std::int64_t>(q);
  if (std::gcd(static_cast<std::uint64_t>(((a % m) + m) % m), q) != 1)
    throw std::invalid_argument("check_brun_titchmarsh: a must be coprime to q");
}

inline BoundReport bt_report(std::uint64_t count, std::uint64_t x, std::uint64_t q) {
  const double xd = static_cast<double>(x);
  const double bound =
      2.0 * xd / (static_cast<double>(euler_phi(q)) * std::log(xd / static_cast<double>(q)));
  return BoundReport::at_most("primes = a mod " + std::to_string(q) + " in interval of length " +
                                  std::to_string(x),
                              static_cast<double>(count), bound);
}

inline std::uint64_t first_in_class(std::uint64_t start, std::uint64_t q, std::int64_t a) {
  const auto m = static_cast<std::int64_t>(q);
  const auto target = static_cast<std::uint64_t>(((a % m) + m) % m);
  return start + (target + q - start % q) % q;
}
}  // namespace detail

/// #{y < p <= y + x : p = a mod q} against 2x / (phi(q) log(x/q)).
inline BoundReport check_brun_titchmarsh(std::uint64_t y, std::uint64_t x, std::uint64_t q,
                                         std::int64_t a,
                                         const SieveConfig& cfg = SieveConfig::from_env()) {
  detail::require_bt_args(x, q, a);
  const auto m = static_cast<std::int64_t>(q);
  const auto target = static_cast<std::uint64_t>(((a % m) + m) % m);
  std::uint64_t count = 0;
  PrimeStream(y + 1, y + x, cfg).for_each([&](std::uint64_t p) {
    if (p % q == target) ++count;
    return true;
  });
  return detail::bt_report(count, x, q);
}

inline BoundReport check_brun_titchmarsh(std::uint64_t y, std::uint64_t x, std::uint64_t q,
                                         std::int64_t a, const PrimeTable& table) {
  detail::require_bt_args(x, q, a);
  std::uint64_t count = 0;
  for (std::uint64_t n = detail::first_in_class(y + 1, q, a); n <= y + x; n += q)
    if (table.is_prime(n)) ++count;
  return detail::bt_report(count, x, q);
}

/// Per-class prime counts below a threshold.
struct ClassSpectrum {
  std::uint64_t q = 1;
  std::uint64_t threshold = 0;
  /// Indexed by unit index.
  std::vector<std::uint64_t> counts;
  /// Least prime in each class, 0 when the class is empty.
  std::vector<std::uint64_t> least_prime;
  ClassSet nonempty;

  std::uint64_t total() const { return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}); }
};

/// Spectrum of the primes p <= X (p < X when `strict`) coprime to q.
inline ClassSpectrum class_spectrum(std::shared_ptr<const UnitGroup> group, std::uint64_t x,
                                    bool strict = false,
                                    const SieveConfig& cfg = SieveConfig::from_env()) {
  const std::uint64_t q = group->modulus();
  ClassSpectrum s{q, x, std::vector<std::uint64_t>(group->size(), 0),
                  std::vector<std::uint64_t>(group->size(), 0), ClassSet(group)};
  const std::uint64_t hi = strict ? (x == 0 ? 0 : x - 1) : x;
  PrimeStream(2, hi, cfg).for_each([&](std::uint64_t p) {
    if (const auto i = group->index_of(p % q)) {
      if (s.counts[*i]++ == 0) {
        s.least_prime[*i] = p;
        s.nonempty.insert(*i);
      }
    }
    return true;
  });
  return s;
}

inline ClassSpectrum class_spectrum(std::uint64_t x, std::uint64_t q,
                                    const SieveConfig& cfg = SieveConfig::from_env()) {
  return class_spectrum(make_unit_group(q), x, false, cfg);
}

}  // namespace triprime
