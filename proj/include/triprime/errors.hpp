#pragma once

#include <stdexcept>
#include <string>
#include <vector>
#include <cstdint>

namespace triprime {

/// A computation needed more memory or more terms than the configured cap
/// allows. Never a mathematical verdict.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Analytic operations require a non-principal character.
class PrincipalCharacterError : public std::invalid_argument {
 public:
  PrincipalCharacterError()
      : std::invalid_argument("operation requires a non-principal character") {}
};

class ModulusMismatch : public std::invalid_argument {
 public:
  ModulusMismatch() : std::invalid_argument("sets live in different groups") {}
};

/// The density hypothesis |A| >= 13/32 phi(q) (or another proof hypothesis)
/// does not hold, so the case analysis cannot be applied.
class HypothesisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input lies outside the range in which the checked statement is claimed.
class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A search ran to the bound a proven statement guarantees and found
/// nothing. Seeing this means a bug, not a theorem failure.
class CounterexampleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A residue class is not covered at the requested threshold.
class UncoveredClassError : public std::runtime_error {
 public:
  UncoveredClassError(std::uint64_t q, std::uint64_t threshold, std::uint64_t residue,
                      std::vector<std::uint64_t> missing)
      : std::runtime_error("class " + std::to_string(residue) + " mod " + std::to_string(q) +
                           " is not a product of three primes <= " +
                           std::to_string(threshold)),
        q_(q),
        threshold_(threshold),
        residue_(residue),
        missing_(std::move(missing)) {}

  std::uint64_t modulus() const noexcept { return q_; }
  std::uint64_t threshold() const noexcept { return threshold_; }
  std::uint64_t residue() const noexcept { return residue_; }
  const std::vector<std::uint64_t>& missing() const noexcept { return missing_; }

 private:
  std::uint64_t q_;
  std::uint64_t threshold_;
  std::uint64_t residue_;
  std::vector<std::uint64_t> missing_;
};

}  // namespace triprime
