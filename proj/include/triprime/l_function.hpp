#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "triprime/arith.hpp"
#include "triprime/bound_report.hpp"
#include "triprime/characters.hpp"
#include "triprime/errors.hpp"
#include "triprime/sieve.hpp"

namespace triprime {

/// A closed interval guaranteed to contain some real quantity.
struct CertifiedValue {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  double width() const noexcept { return hi - lo; }
  double midpoint() const noexcept { return lo + (hi - lo) / 2; }
  bool within(const CertifiedValue& outer) const noexcept { return outer.lo <= lo && hi <= outer.hi; }
};

enum class LSeriesMethod {
  /// Sum to N = Kq, then bound the tail block by block using the first
  /// moments of chi over a period and two-sided Hurwitz zeta bounds.
  block_corrected,
  /// Sum to N with the plain tail radius phi(q)/(2N).
  partial_sum,
};

struct AnalyticConfig {
  /// Truncation cap for every series (L-sums, S(alpha)).
  std::uint64_t max_terms = 10'000'000;
  LSeriesMethod method = LSeriesMethod::block_corrected;
};

namespace detail {

inline constexpr double kUnitRoundoff = 0x1p-53;

/// Neumaier summation.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
    abs_ += std::fabs(x);
    ++n_;
  }
  double value() const noexcept { return sum_ + comp_; }
  double abs_total() const noexcept { return abs_; }
  /// Rigorous (generous) bound on |value() - exact sum of the added doubles|.
  double error_bound() const noexcept {
    const double u = kUnitRoundoff;
    const double n = static_cast<double>(n_);
    return 4 * u * std::fabs(value()) + 4 * n * u * u * abs_ + 4 * u * abs_;
  }

 private:
  double sum_ = 0.0, comp_ = 0.0, abs_ = 0.0;
  std::uint64_t n_ = 0;
};

/// Two-sided bounds for sum_{k >= K} k^{-s}, s >= 2, K >= 1: the
/// Euler-Maclaurin truncations bracket the sum for completely monotone terms.
inline double hurwitz_lower(unsigned s, double k) {
  return std::pow(k, 1.0 - s) / (s - 1) + std::pow(k, -static_cast<double>(s)) / 2;
}
inline double hurwitz_upper(unsigned s, double k) {
  return hurwitz_lower(s, k) + s * std::pow(k, -static_cast<double>(s) - 1) / 12;
}

struct PartialSum {
  double value;
  double error;
};

inline PartialSum l_partial_sum(const QuadraticCharacter& chi, std::uint64_t n) {
  const std::uint64_t q = chi.modulus();
  CompensatedSum acc;
  std::uint64_t r = 1 % q;
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (const int c = chi.at_residue(r)) acc.add(c / static_cast<double>(d));
    if (++r == q) r = 0;
  }
  // The extra 2u * abs term covers the rounding of each 1/d.
  return {acc.value(), acc.error_bound() + 2 * kUnitRoundoff * acc.abs_total()};
}

struct TailBound {
  double lo;
  double hi;
};

/// Bounds for sum_{d > Kq} chi(d)/d from the exact expansion
///   1/(m+r) = 1/m - r/m^2 + r^2/m^3 - r^3/(m^3 (m+r)),  m = kq,
/// summed over each full period with sum chi(r) = 0.
class BlockTail {
 public:
  explicit BlockTail(const QuadraticCharacter& chi) : q_(static_cast<double>(chi.modulus())) {
    __int128 c1 = 0, c2 = 0;
    const std::uint64_t q = chi.modulus();
    for (std::uint64_t r = 1; r <= q; ++r) {
      const __int128 v = chi.at_residue(r % q);
      c1 += v * static_cast<__int128>(r);
      c2 += v * static_cast<__int128>(r) * static_cast<__int128>(r);
    }
    a2_ = -static_cast<double>(c1) / (q_ * q_);
    a3_ = static_cast<double>(c2) / (q_ * q_ * q_);
    const double s3 = q_ * (q_ + 1) / 2;
    r4_ = (s3 / (q_ * q_)) * (s3 / (q_ * q_));
  }

  TailBound at(std::uint64_t k) const {
    const double kd = static_cast<double>(k);
    const auto [lo2, hi2] = scaled(a2_, hurwitz_lower(2, kd), hurwitz_upper(2, kd));
    const auto [lo3, hi3] = scaled(a3_, hurwitz_lower(3, kd), hurwitz_upper(3, kd));
    const double rem = r4_ * hurwitz_upper(4, kd);
    const double slack = 16 * kUnitRoundoff *
                             (std::fabs(a2_) * hurwitz_upper(2, kd) + std::fabs(a3_) * hurwitz_upper(3, kd) + rem) +
                         std::numeric_limits<double>::denorm_min();
    return {lo2 + lo3 - rem - slack, hi2 + hi3 + rem + slack};
  }

 private:
  static std::pair<double, double> scaled(double a, double lo, double hi) {
    return a >= 0 ? std::pair{a * lo, a * hi} : std::pair{a * hi, a * lo};
  }

  double q_;
  double a2_ = 0, a3_ = 0, r4_ = 0;
};

/// Inner intervals are computed to this width whenever the requested
/// tolerance allows it, which makes results at different tolerances nested.
inline constexpr double kLInnerWidth = 1e-10;

inline CertifiedValue outward_to_grid(double lo, double hi, double tolerance) {
  const double grid = std::exp2(std::floor(std::log2(tolerance / 4)));
  return {std::floor(lo / grid) * grid, std::ceil(hi / grid) * grid};
}

inline CertifiedValue l_one_block(const QuadraticCharacter& chi, double tolerance, const AnalyticConfig& cfg) {
  const double target = std::min(tolerance / 2, kLInnerWidth);
  const std::uint64_t q = chi.modulus();
  const BlockTail tail(chi);
  std::uint64_t k = 4;
  while (true) {
    if (k > cfg.max_terms / q)
      throw ResourceError("l_one_certified: tolerance needs more than " + std::to_string(cfg.max_terms) + " terms");
    const auto t = tail.at(k);
    if (t.hi - t.lo <= 0.75 * target) {
      const auto ps = l_partial_sum(chi, k * q);
      const double lo = ps.value - ps.error + t.lo;
      const double hi = ps.value + ps.error + t.hi;
      if (hi - lo <= target) return outward_to_grid(lo, hi, tolerance);
    }
    k *= 2;
  }
}

inline CertifiedValue l_one_partial(const QuadraticCharacter& chi, double tolerance, const AnalyticConfig& cfg) {
  const double phi = static_cast<double>(chi.group().order());
  auto n = static_cast<std::uint64_t>(std::ceil(phi / (0.99 * tolerance)));
  while (true) {
    if (n > cfg.max_terms)
      throw ResourceError("l_one_certified: tolerance needs more than " + std::to_string(cfg.max_terms) + " terms");
    const auto ps = l_partial_sum(chi, n);
    const double radius = phi / (2.0 * static_cast<double>(n)) + ps.error;
    if (2 * radius <= tolerance) return {ps.value - radius, ps.value + radius};
    n *= 2;
  }
}

}  // namespace detail

/// Interval of width <= tolerance containing L(1, chi).
inline CertifiedValue l_one_certified(const QuadraticCharacter& chi, double tolerance,
                                      const AnalyticConfig& cfg = {}) {
  require_non_principal(chi);
  if (!(tolerance > 0)) throw std::invalid_argument("l_one_certified: tolerance must be positive");
  return cfg.method == LSeriesMethod::block_corrected ? detail::l_one_block(chi, tolerance, cfg)
                                                      : detail::l_one_partial(chi, tolerance, cfg);
}

/// pi/(4 phi(q)) - pi/phi(q)^2
inline double gelfond_lower_bound(std::uint64_t q) {
  const double phi = static_cast<double>(euler_phi(q));
  return std::numbers::pi / (4 * phi) - std::numbers::pi / (phi * phi);
}

struct GelfondCheck {
  Verdict verdict = Verdict::inconclusive;
  BoundReport report;
  std::optional<CertifiedValue> l_value;
  double tolerance = 0.0;
};

/// Decides L(1, chi) >= gelfond_lower_bound(q), tightening the interval
/// until the comparison is decided or the term cap is hit.
inline GelfondCheck check_gelfond(const QuadraticCharacter& chi, double tolerance = 1e-6,
                                  const AnalyticConfig& cfg = {}) {
  require_non_principal(chi);
  GelfondCheck out;
  const double bound = gelfond_lower_bound(chi.modulus());
  const std::string name = "L(1," + chi.label() + ")";
  for (double tol = tolerance;; tol /= 16) {
    CertifiedValue l;
    try {
      l = l_one_certified(chi, tol, cfg);
    } catch (const ResourceError&) {
      out.verdict = Verdict::inconclusive;
      return out;
    }
    out.l_value = l;
    out.tolerance = tol;
    out.report = BoundReport::at_least(name, l.lo, bound);
    if (out.report.satisfied) {
      out.verdict = Verdict::pass;
      return out;
    }
    if (l.hi < bound) {
      out.verdict = Verdict::fail;
      return out;
    }
  }
}

/// (1 * chi)(n) = sum_{d | n} chi(d) for n = 0..m (entry 0 unused).
inline std::vector<std::int32_t> one_star_chi(const QuadraticCharacter& chi, std::uint64_t m) {
  std::vector<std::int32_t> out(m + 1, 0);
  for (std::uint64_t d = 1; d <= m; ++d) {
    const int c = chi(static_cast<std::int64_t>(d % chi.modulus()));
    if (c == 0) continue;
    for (std::uint64_t n = d; n <= m; n += d) out[n] += c;
  }
  return out;
}

struct DivisorSumCheck {
  std::uint64_t x = 0;
  /// sum_{n <= x} (1 * chi)(n), summed term by term.
  std::int64_t direct = 0;
  /// sum_{d <= x} chi(d) floor(x/d)
  std::int64_t hyperbola = 0;
  /// #{m <= sqrt(x) : gcd(m, q) = 1}
  std::int64_t coprime_squares = 0;
  bool identity_holds = false;
  bool squares_bound_holds = false;
  /// No prime p <= x has chi(p) = 1, so the smooth-square bound applies.
  bool no_kernel_prime = false;
  std::optional<BoundReport> smooth_square_bound;

  bool passed() const {
    return identity_holds && squares_bound_holds && (!smooth_square_bound || smooth_square_bound->satisfied);
  }
};

inline DivisorSumCheck divisor_sum_check(const QuadraticCharacter& chi, std::uint64_t x) {
  require_non_principal(chi);
  if (x == 0) throw std::invalid_argument("divisor_sum_check: x must be positive");
  DivisorSumCheck out;
  out.x = x;
  const auto conv = one_star_chi(chi, x);
  for (std::uint64_t n = 1; n <= x; ++n) out.direct += conv[n];
  for (std::uint64_t d = 1; d <= x; ++d)
    out.hyperbola += chi(static_cast<std::int64_t>(d % chi.modulus())) * static_cast<std::int64_t>(x / d);
  const std::uint64_t root = isqrt(x);
  for (std::uint64_t m = 1; m <= root; ++m)
    if (std::gcd(m, chi.modulus()) == 1) ++out.coprime_squares;
  out.identity_holds = out.direct == out.hyperbola;
  out.squares_bound_holds = out.direct >= out.coprime_squares;

  out.no_kernel_prime = true;
  PrimeStream(2, x).for_each([&](std::uint64_t p) {
    if (chi(static_cast<std::int64_t>(p % chi.modulus())) == 1) out.no_kernel_prime = false;
    return out.no_kernel_prime;
  });
  if (out.no_kernel_prime) {
    out.smooth_square_bound = BoundReport::at_most(
        "sum_{n<=" + std::to_string(x) + "} (1*chi)(n)", static_cast<double>(out.direct),
        std::sqrt(static_cast<double>(x)) * f0(chi.modulus()));
  }
  return out;
}

struct GelfondSeriesCheck {
  double alpha = 0.0;
  std::uint64_t terms = 0;
  /// Certified bounds on 1 + S(alpha).
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  double rhs = 0.0;
  Verdict verdict = Verdict::inconclusive;
};

/// Checks 1 + S(alpha) >= sqrt(pi) / (2 sqrt(alpha)), where
/// S(alpha) = sum_{n >= 1} (1 * chi)(n) e^{-n alpha}.
inline GelfondSeriesCheck gelfond_series_check(const QuadraticCharacter& chi, double alpha,
                                               const AnalyticConfig& cfg = {}) {
  require_non_principal(chi);
  if (!(alpha > 0)) throw std::invalid_argument("gelfond_series_check: alpha must be positive");
  GelfondSeriesCheck out;
  out.alpha = alpha;
  out.rhs = std::sqrt(std::numbers::pi) / (2 * std::sqrt(alpha));

  // (1 * chi)(n) <= n gives the tail sum_{n > M} n r^n, r = e^{-alpha}.
  const double r = std::exp(-alpha);
  const double one_minus_r = -std::expm1(-alpha);
  auto tail = [&](double m) {
    return std::exp(-(m + 1) * alpha) * ((m + 1) - m * r) / (one_minus_r * one_minus_r);
  };
  auto m = std::max<std::uint64_t>(16, static_cast<std::uint64_t>(std::ceil(1 / alpha)));
  while (m < cfg.max_terms && tail(static_cast<double>(m)) > 1e-9 * out.rhs) m *= 2;
  m = std::min(m, cfg.max_terms);
  out.terms = m;

  const auto conv = one_star_chi(chi, m);
  double sum = 0.0;
  for (std::uint64_t n = 1; n <= m; ++n)
    if (conv[n] != 0) sum += conv[n] * std::exp(-static_cast<double>(n) * alpha);
  // Terms are non-negative; per-term exp error is at most (n alpha + 2) u.
  const double rel = (static_cast<double>(m) + static_cast<double>(m) * alpha + 4) * detail::kUnitRoundoff * 1.01;
  out.lower = 1 + sum - rel * sum;
  out.upper = 1 + sum + rel * sum + tail(static_cast<double>(m)) * (1 + 1e-12);
  if (out.lower >= out.rhs + kComparisonSlack)
    out.verdict = Verdict::pass;
  else if (out.upper < out.rhs - kComparisonSlack)
    out.verdict = Verdict::fail;
  return out;
}

struct KernelPrimeResult {
  std::uint64_t q = 0;
  std::uint64_t character_id = 0;
  std::uint64_t prime = 0;
  /// q^4, saturated at 2^64 - 1.
  std::uint64_t bound = 0;
  bool within_bound = false;
};

inline std::uint64_t saturating_pow4(std::uint64_t q) {
  const unsigned __int128 v = static_cast<unsigned __int128>(q) * q;
  if (v > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  const unsigned __int128 v4 = v * v;
  if (v4 > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(v4);
}

/// Least prime p with chi(p) = 1.
inline KernelPrimeResult least_kernel_prime(const QuadraticCharacter& chi,
                                            const SieveConfig& cfg = SieveConfig::from_env()) {
  require_non_principal(chi);
  const std::uint64_t q = chi.modulus();
  if (q < 3) throw std::invalid_argument("least_kernel_prime: q must be >= 3");
  KernelPrimeResult out{q, chi.id(), 0, saturating_pow4(q), false};
  const std::uint64_t cap = std::min(out.bound, cfg.max_limit);
  for (std::uint64_t lo = 2, hi = std::min<std::uint64_t>(cap, 1 << 16);; lo = hi + 1, hi = std::min(cap, hi * 4)) {
    PrimeStream(lo, hi, cfg).for_each([&](std::uint64_t p) {
      if (chi(static_cast<std::int64_t>(p % q)) == 1) out.prime = p;
      return out.prime == 0;
    });
    if (out.prime != 0) break;
    if (hi == cap) {
      if (cap == out.bound)
        throw CounterexampleError("no prime p <= q^4 with chi(p) = 1 for " + chi.label());
      throw ResourceError("least_kernel_prime: search reached the sieve limit");
    }
  }
  out.within_bound = out.prime <= out.bound;
  return out;
}

/// Least prime p = 1 (mod q).
inline std::uint64_t least_prime_one_mod_q(std::uint64_t q) {
  if (q < 2) throw std::invalid_argument("least_prime_one_mod_q: q must be >= 2");
  for (std::uint64_t p = q + 1;; p += q)
    if (is_prime_trial(p)) return p;
}

}  // namespace triprime
