#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "triprime/arith.hpp"
#include "triprime/bound_report.hpp"
#include "triprime/errors.hpp"
#include "triprime/group_set.hpp"
#include "triprime/parallel.hpp"
#include "triprime/sieve.hpp"
#include "triprime/sumsets.hpp"
#include "triprime/unit_group.hpp"

namespace triprime {

/// p1 * p2 * p3 = residue (mod q), p1 <= p2 <= p3 <= threshold.
struct Witness {
  std::uint64_t q = 1;
  std::uint64_t residue = 0;
  std::array<std::uint64_t, 3> primes{};
  std::uint64_t threshold = 0;

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Rechecks a witness from scratch (trial division, no sieve, no tables).
inline bool validate_witness(const Witness& w, bool strict_below = false) {
  if (w.q == 0) return false;
  if (!std::is_sorted(w.primes.begin(), w.primes.end())) return false;
  for (auto p : w.primes) {
    if (!is_prime_trial(p) || std::gcd(p, w.q) != 1) return false;
    if (strict_below ? p >= w.threshold : p > w.threshold) return false;
  }
  const unsigned __int128 prod =
      static_cast<unsigned __int128>(w.primes[0]) * w.primes[1] % w.q * w.primes[2] % w.q;
  return static_cast<std::uint64_t>(prod) == w.residue % w.q;
}

struct CoverageOptions {
  bool with_witnesses = false;
  /// Use primes p < P instead of p <= P.
  bool strict_below = false;
  /// Require three distinct primes (no witnesses in this mode).
  bool distinct_primes = false;
  SieveConfig sieve = SieveConfig::from_env();
};

struct CoverageResult {
  std::uint64_t q = 1;
  std::uint64_t threshold = 0;
  bool covered = false;
  /// Classes containing a prime within the threshold.
  ClassSet prime_classes;
  ClassSet missing;
  std::optional<std::map<std::uint64_t, Witness>> witnesses;
};

namespace detail {

/// Least-prime representatives, ordered by that prime.
inline std::vector<std::size_t> by_representative(const ClassSpectrum& s) {
  auto order = s.nonempty.indices();
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return s.least_prime[a] < s.least_prime[b]; });
  return order;
}

/// b = a * a1 * a2 with (rep(a), rep(a1)) lexicographically least.
inline std::optional<Witness> find_witness(const ClassSpectrum& s, const ClassSet& aa,
                                           const std::vector<std::size_t>& order, std::size_t target) {
  const auto& g = s.nonempty.group();
  for (auto a : order) {
    const auto t = g.op(target, g.inverse(a));
    if (!aa.contains(t)) continue;
    for (auto a1 : order) {
      const auto a2 = g.op(t, g.inverse(a1));
      if (!s.nonempty.contains(a2)) continue;
      Witness w{s.q, g.residue(target), {s.least_prime[a], s.least_prime[a1], s.least_prime[a2]}, s.threshold};
      std::sort(w.primes.begin(), w.primes.end());
      return w;
    }
  }
  return std::nullopt;
}

/// Classes of products of three distinct primes, from per-class counts.
inline ClassSet distinct_triples(const ClassSpectrum& s) {
  const auto& g = s.nonempty.group();
  const auto idx = s.nonempty.indices();
  ClassSet out(s.nonempty.group_ptr());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = i; j < idx.size(); ++j) {
      if (j == i && s.counts[idx[i]] < 2) continue;
      const auto ij = g.op(idx[i], idx[j]);
      for (std::size_t k = j; k < idx.size(); ++k) {
        const std::uint64_t need_k = 1 + (k == j) + (k == i);
        if (s.counts[idx[k]] < need_k) continue;
        out.insert(g.op(ij, idx[k]));
      }
    }
  }
  return out;
}

}  // namespace detail

/// Which invertible classes mod q are products of three primes <= P.
inline CoverageResult coverage(std::shared_ptr<const UnitGroup> group, std::uint64_t p,
                               const CoverageOptions& opts = {}) {
  const auto spectrum = class_spectrum(group, p, opts.strict_below, opts.sieve);
  CoverageResult out{group->modulus(), p, false, spectrum.nonempty, ClassSet(group), std::nullopt};
  const auto& a = spectrum.nonempty;
  const auto aa = product_set(a, a);
  const auto aaa = opts.distinct_primes ? detail::distinct_triples(spectrum) : product_set(aa, a);
  out.missing = aaa.complement();
  out.covered = out.missing.empty();
  if (opts.with_witnesses) {
    if (opts.distinct_primes) throw std::invalid_argument("coverage: witnesses are not produced for distinct primes");
    out.witnesses.emplace();
    const auto order = detail::by_representative(spectrum);
    aaa.for_each([&](std::size_t b) {
      if (auto w = detail::find_witness(spectrum, aa, order, b)) out.witnesses->emplace(w->residue, *w);
    });
  }
  return out;
}

inline CoverageResult coverage(std::uint64_t q, std::uint64_t p, const CoverageOptions& opts = {}) {
  return coverage(make_unit_group(q), p, opts);
}

/// Deterministic witness for class a mod q with primes <= P.
inline Witness witness(std::uint64_t q, std::uint64_t p, std::uint64_t a, const CoverageOptions& opts = {}) {
  const auto group = make_unit_group(q);
  const auto target = group->index_of_unit(a % q);
  const auto spectrum = class_spectrum(group, p, opts.strict_below, opts.sieve);
  const auto aa = product_set(spectrum.nonempty, spectrum.nonempty);
  if (auto w = detail::find_witness(spectrum, aa, detail::by_representative(spectrum), target)) return *w;
  const auto missing = product_set(aa, spectrum.nonempty).complement();
  throw UncoveredClassError(q, p, a % q, residues(missing));
}

struct ScanRecord {
  std::uint64_t q = 0;
  /// Least prime P such that primes p <= P cover every class.
  std::uint64_t p_min = 0;
  /// Least integer X such that primes p < X cover every class.
  std::uint64_t p_min_strict = 0;
  /// Largest prime below p_min (0 if none); coverage fails there.
  std::uint64_t previous_prime = 0;
  /// floor(q^(16/3))
  BigInt theorem_bound;
  bool within_bound = false;
  /// theorem_bound / p_min
  double margin_ratio = 0.0;
};

struct ScanOptions {
  SieveConfig sieve = SieveConfig::from_env();
  /// Full recomputation of AA and AAA after this many new classes.
  std::size_t cross_check_every = 64;
};

/// Smallest prime threshold covering every class mod q, by adding one prime
/// at a time:  A' = A + {c},  A'A' = AA | cA',  A'A'A' = AAA | c A'A'.
inline ScanRecord minimal_prime_threshold(std::uint64_t q, const ScanOptions& opts = {}) {
  if (q < 2) throw std::invalid_argument("minimal_prime_threshold: q must be >= 2");
  const auto group = make_unit_group(q);
  ScanRecord rec;
  rec.q = q;
  rec.theorem_bound = theorem_threshold(q);
  const BigInt cap_big = std::min<BigInt>(rec.theorem_bound, BigInt{opts.sieve.max_limit});
  const auto cap = cap_big.convert_to<std::uint64_t>();

  ClassSet a(group), aa(group), aaa(group);
  std::size_t added = 0;
  std::uint64_t last = 0;
  auto cross_check = [&] {
    const auto aa_full = product_set(a, a);
    const auto aaa_full = product_set(aa_full, a);
    if (!(aa_full == aa && aaa_full == aaa))
      throw std::logic_error("minimal_prime_threshold: incremental product sets diverged");
  };
  const bool stopped = for_each_prime_until(cap, opts.sieve, [&](std::uint64_t p) {
    const auto c = group->index_of(p % q);
    if (c && !a.contains(*c)) {
      a.insert(*c);
      aa.or_translate(a, *c);
      aaa.or_translate(aa, *c);
      if (++added % opts.cross_check_every == 0) cross_check();
    }
    if (aaa.is_full()) {
      rec.p_min = p;
      return false;
    }
    last = p;
    return true;
  });
  if (!stopped) {
    if (cap_big == rec.theorem_bound)
      throw CounterexampleError("q = " + std::to_string(q) + " not covered by primes <= q^(16/3)");
    throw ResourceError("minimal_prime_threshold: sieve limit reached before coverage");
  }
  cross_check();
  rec.previous_prime = last;
  rec.p_min_strict = rec.p_min + 1;
  rec.within_bound = BigInt{rec.p_min} <= rec.theorem_bound;
  rec.margin_ratio = rec.theorem_bound.convert_to<double>() / static_cast<double>(rec.p_min);
  return rec;
}

/// Scan records for q_lo..q_hi in q order, computed on up to `jobs` threads.
inline std::vector<ScanRecord> scan(std::uint64_t q_lo, std::uint64_t q_hi, unsigned jobs,
                                    const ScanOptions& opts = {}) {
  if (q_lo < 2 || q_hi < q_lo) throw std::invalid_argument("scan: need 2 <= q_lo <= q_hi");
  return parallel_map<ScanRecord>(q_hi - q_lo + 1, jobs,
                                  [&](std::size_t i) { return minimal_prime_threshold(q_lo + i, opts); });
}

/// Rows (q, p): coverage of every class mod q by primes <= p is claimed.
inline constexpr std::array<std::pair<std::uint64_t, std::uint64_t>, 9> kSmallModulusTable{{
    {2, 3}, {3, 7}, {4, 5}, {5, 19}, {6, 11}, {7, 29}, {8, 23}, {9, 23}, {10, 19}}};

struct TableRow {
  std::uint64_t q = 0;
  std::uint64_t claimed_prime = 0;
  bool covered = false;
  std::uint64_t p_min = 0;
  /// Holds when coverage(q, claimed_prime) is complete and P_min <= claimed_prime.
  BoundReport report;
};

inline std::vector<TableRow> small_case_table(const SieveConfig& cfg = SieveConfig::from_env()) {
  std::vector<TableRow> rows;
  for (const auto& [q, p] : kSmallModulusTable) {
    TableRow row{q, p, false, 0, {}};
    CoverageOptions copts;
    copts.sieve = cfg;
    row.covered = coverage(q, p, copts).covered;
    ScanOptions sopts;
    sopts.sieve = cfg;
    row.p_min = minimal_prime_threshold(q, sopts).p_min;
    row.report = BoundReport::exact("q=" + std::to_string(q) + ": x >= " + std::to_string(p) + "^3",
                                    static_cast<double>(row.p_min), static_cast<double>(p), Relation::at_most,
                                    row.covered && row.p_min <= p);
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Below 29^3 no modulus q >= 2 satisfies q <= x^(1/16): 2^16 > 29^3 - 1.
inline BoundReport vacuity_check() {
  const BigInt x = ipow(BigInt{29}, 3) - 1;
  const BigInt two16 = ipow(BigInt{2}, 16);
  return BoundReport::exact("29^3 - 1", x.convert_to<double>(), two16.convert_to<double>(), Relation::at_most,
                            x < two16 && !modulus_admissible(2, x));
}

/// |A(X, q)| >= 13/32 phi(q), with A(X, q) the classes holding a prime <= X.
/// Outside X >= 5393 and q^16 <= X^3 a RegimeError is thrown unless waived.
inline BoundReport density_check(std::uint64_t q, std::uint64_t x, bool waive_regime = false,
                                 const SieveConfig& cfg = SieveConfig::from_env()) {
  if (!waive_regime) {
    if (x < 5393) throw RegimeError("density_check: X must be >= 5393");
    if (!modulus_admissible(q, ipow(BigInt{x}, 3))) throw RegimeError("density_check: need q^16 <= X^3");
  }
  const auto group = make_unit_group(q);
  const auto size = class_spectrum(group, x, false, cfg).nonempty.count();
  const auto phi = group->order();
  const bool holds = Fraction(static_cast<std::int64_t>(size), static_cast<std::int64_t>(phi)) >= kDensityThreshold;
  return BoundReport::exact("|A(" + std::to_string(x) + "," + std::to_string(q) + ")|", static_cast<double>(size),
                            13.0 * static_cast<double>(phi) / 32.0, Relation::at_least, holds);
}

}  // namespace triprime
