#pragma once

#include <string>
#include <utility>

namespace triprime {

/// Absolute slack applied to floating-point bound comparisons. It always
/// makes the comparison stricter, so rounding can never hide a violation.
inline constexpr double kComparisonSlack = 1e-9;

enum class Verdict { pass, fail, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

/// Which way the inequality between `computed` and `bound` must go.
enum class Relation { at_most, at_least };

inline const char* to_string(Relation r) { return r == Relation::at_most ? "<=" : ">="; }

/// One numeric inequality check: `computed <= bound` or `computed >= bound`.
struct BoundReport {
  std::string quantity;
  double computed = 0.0;
  double bound = 0.0;
  Relation relation = Relation::at_most;
  bool satisfied = false;

  static BoundReport at_most(std::string name, double computed, double bound,
                             double slack = kComparisonSlack) {
    return {std::move(name), computed, bound, Relation::at_most, computed <= bound - slack};
  }
  static BoundReport at_least(std::string name, double computed, double bound,
                              double slack = kComparisonSlack) {
    return {std::move(name), computed, bound, Relation::at_least, computed >= bound + slack};
  }
  /// For exact (integer or rational) comparisons done by the caller.
  static BoundReport exact(std::string name, double computed, double bound, Relation rel,
                           bool holds) {
    return {std::move(name), computed, bound, rel, holds};
  }

  Verdict verdict() const { return satisfied ? Verdict::pass : Verdict::fail; }
};

}  // namespace triprime
