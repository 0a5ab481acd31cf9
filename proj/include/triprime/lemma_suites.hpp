#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "triprime/arith.hpp"
#include "triprime/bound_report.hpp"
#include "triprime/characters.hpp"
#include "triprime/group_set.hpp"
#include "triprime/sieve.hpp"
#include "triprime/sumsets.hpp"

namespace triprime {

/// Outcome of one seeded property sweep.
struct SuiteResult {
  std::string name;
  std::uint64_t seed = 0;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::string first_failure;

  Verdict verdict() const { return failures == 0 ? Verdict::pass : Verdict::fail; }

  void record(const BoundReport& r) {
    ++cases;
    if (!r.satisfied && failures++ == 0)
      first_failure = r.quantity + ": " + std::to_string(r.computed) + " " + to_string(r.relation) + " " +
                      std::to_string(r.bound);
  }
};

/// Portable seeded sampling: mt19937_64 output is fixed by the standard,
/// and the reduction below does not depend on the library's distributions.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) { return lo + engine_() % (hi - lo + 1); }
  /// Roughly log-uniform in [lo, hi], lo >= 1.
  std::uint64_t log_uniform(std::uint64_t lo, std::uint64_t hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1p-53;
    const double v = std::exp(std::log(static_cast<double>(lo)) +
                              u * (std::log(static_cast<double>(hi) + 1) - std::log(static_cast<double>(lo))));
    return std::clamp(static_cast<std::uint64_t>(v), lo, hi);
  }
  bool coin() { return engine_() >> 63; }

 private:
  std::mt19937_64 engine_;
};

/// f0(q) <= 3.32 sqrt(q) for 2 <= q <= q_max.
inline SuiteResult f0_suite(std::uint64_t q_max) {
  SuiteResult r{"f0", 0, 0, 0, {}};
  for (std::uint64_t q = 2; q <= q_max; ++q) r.record(check_f0_bound(q));
  return r;
}

/// |sum_{n in I} chi(n)| <= phi(q)/2 over every subinterval I of [1, q], for
/// every non-principal real chi mod q <= q_max, plus `random_intervals`
/// seeded long intervals per modulus.
inline SuiteResult boundchi_suite(std::uint64_t q_max, std::uint64_t seed = 0, std::uint64_t random_intervals = 0) {
  SuiteResult r{"boundchi", seed, 0, 0, {}};
  SeededRng rng(seed);
  for (std::uint64_t q = 3; q <= q_max; ++q) {
    const auto chars = real_characters(q);
    for (const auto& chi : chars) {
      if (chi.is_principal()) continue;
      const auto phi = static_cast<std::int64_t>(chi.group().order());
      // Exhaustive: track running sums directly.
      for (std::uint64_t lo = 1; lo <= q; ++lo) {
        std::int64_t s = 0;
        for (std::uint64_t hi = lo; hi <= q; ++hi) {
          s += chi(static_cast<std::int64_t>(hi));
          ++r.cases;
          if (2 * std::llabs(s) > phi && r.failures++ == 0)
            r.first_failure = chi.label() + " on [" + std::to_string(lo) + "," + std::to_string(hi) + "]";
        }
      }
      for (std::uint64_t k = 0; k < random_intervals; ++k) {
        const auto lo = static_cast<std::int64_t>(rng.uniform(0, 1'000'000)) - 500'000;
        const auto hi = lo + static_cast<std::int64_t>(rng.uniform(0, 1'000'000));
        r.record(interval_char_sum(chi, lo, hi).report);
      }
    }
  }
  return r;
}

struct BrunTitchmarshSample {
  std::uint64_t y, x, q;
  std::int64_t a;
};

/// Seeded (y, x, q, a) with 2 <= x <= x_max, y <= y_max, 1 <= q < x, a a unit mod q.
inline std::vector<BrunTitchmarshSample> brun_titchmarsh_samples(std::uint64_t count, std::uint64_t x_max,
                                                                  std::uint64_t y_max, std::uint64_t seed) {
  SeededRng rng(seed);
  std::vector<BrunTitchmarshSample> out;
  out.reserve(count);
  while (out.size() < count) {
    const auto x = rng.log_uniform(2, x_max);
    const auto y = rng.uniform(0, y_max);
    const auto q = rng.log_uniform(1, x - 1);
    const auto a = rng.uniform(0, q - 1);
    if (std::gcd(a, q) != 1) continue;
    out.push_back({y, x, q, static_cast<std::int64_t>(a)});
  }
  return out;
}

inline SuiteResult brun_titchmarsh_suite(std::uint64_t count, std::uint64_t x_max, std::uint64_t y_max,
                                         std::uint64_t seed, const SieveConfig& cfg = SieveConfig::from_env()) {
  SuiteResult r{"brun_titchmarsh", seed, 0, 0, {}};
  const PrimeTable table(x_max + y_max, cfg);
  for (const auto& s : brun_titchmarsh_samples(count, x_max, y_max, seed))
    r.record(check_brun_titchmarsh(s.y, s.x, s.q, s.a, table));
  return r;
}

inline const std::vector<std::uint64_t>& dusart_moduli() {
  static const std::vector<std::uint64_t> q{2, 6, 30, 210};
  return q;
}

/// pi(x) >= x/(log x - 1) and pi_q(x) >= x/log x for q in {2, 6, 30, 210}:
/// every integer x in [5393, exhaustive_max], plus `samples` seeded x up to
/// sample_max. For integer x the left limit at x + 1 is checked as well,
/// since pi is constant on [x, x + 1) while the bound grows.
inline SuiteResult dusart_suite(std::uint64_t exhaustive_max, std::uint64_t samples, std::uint64_t sample_max,
                                std::uint64_t seed, const SieveConfig& cfg = SieveConfig::from_env()) {
  SuiteResult r{"dusart", seed, 0, 0, {}};
  const PrimeTable table(std::max(exhaustive_max, sample_max) + 1, cfg);
  auto check_at = [&](std::uint64_t x) {
    r.record(check_dusart(static_cast<double>(x), table));
    const double next = static_cast<double>(x + 1);
    r.record(BoundReport::at_least("pi(" + std::to_string(x + 1) + "-)", static_cast<double>(table.pi(x)),
                                   next / (std::log(next) - 1.0)));
    for (auto q : dusart_moduli())
      if (q < x)
        if (auto rep = coprime_prime_count(x, q, table).report) r.record(*rep);
  };
  for (std::uint64_t x = 5393; x <= exhaustive_max; ++x) check_at(x);
  SeededRng rng(seed);
  for (std::uint64_t k = 0; k < samples; ++k) check_at(rng.uniform(5393, sample_max));
  return r;
}

/// Random subset of a group: each element kept with probability ~density.
template <FiniteAbelianGroup G>
GroupSet<G> random_subset(std::shared_ptr<const G> group, SeededRng& rng) {
  GroupSet<G> s(group);
  const auto keep = rng.uniform(1, 100);
  for (std::size_t i = 0; i < group->size(); ++i)
    if (rng.uniform(1, 100) <= keep) s.insert(i);
  if (s.empty()) s.insert(rng.uniform(0, group->size() - 1));
  return s;
}

/// Kneser's inequality on `pairs` random (A, B) in (Z/qZ)^* and the same
/// number in Z/nZ, q, n <= n_max.
inline SuiteResult kneser_suite(std::uint64_t pairs, std::uint64_t n_max, std::uint64_t seed) {
  SuiteResult r{"kneser", seed, 0, 0, {}};
  SeededRng rng(seed);
  std::vector<std::shared_ptr<const UnitGroup>> units;
  std::vector<std::shared_ptr<const CyclicGroup>> cyclic;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    units.push_back(make_unit_group(n));
    cyclic.push_back(std::make_shared<const CyclicGroup>(n));
  }
  for (std::uint64_t k = 0; k < pairs; ++k) {
    const auto& g = units[rng.uniform(0, n_max - 1)];
    r.record(kneser_check(random_subset(g, rng), random_subset(g, rng)).report);
    const auto& c = cyclic[rng.uniform(0, n_max - 1)];
    r.record(kneser_check(random_subset(c, rng), random_subset(c, rng)).report);
  }
  return r;
}

}  // namespace triprime
