#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "triprime/bound_report.hpp"
#include "triprime/characters.hpp"
#include "triprime/l_function.hpp"
#include "triprime/lemma_suites.hpp"
#include "triprime/verifier.hpp"

namespace triprime {

using Json = nlohmann::ordered_json;

enum class OutputFormat { json, csv, text };

/// Rounds to 12 significant digits so that serialized reals are stable
/// across print/parse cycles.
inline double round_sig12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

inline std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline Json to_json(const BoundReport& r) {
  return Json{{"quantity", r.quantity},
              {"computed", round_sig12(r.computed)},
              {"relation", to_string(r.relation)},
              {"bound", round_sig12(r.bound)},
              {"satisfied", r.satisfied}};
}

inline Json witnesses_json(const std::optional<std::map<std::uint64_t, Witness>>& ws) {
  Json arr = Json::array();
  if (ws)
    for (const auto& [cls, w] : *ws)
      arr.push_back(Json{{"class", cls}, {"primes", {w.primes[0], w.primes[1], w.primes[2]}}});
  return arr;
}

inline std::string witnesses_csv(const std::optional<std::map<std::uint64_t, Witness>>& ws) {
  std::string out;
  if (!ws) return out;
  for (const auto& [cls, w] : *ws) {
    if (!out.empty()) out += ';';
    out += std::to_string(w.primes[0]) + "*" + std::to_string(w.primes[1]) + "*" + std::to_string(w.primes[2]);
  }
  return out;
}

inline std::string join(const std::vector<std::uint64_t>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

inline Json big_json(const BigInt& v) {
  if (v <= std::numeric_limits<std::uint64_t>::max()) return v.convert_to<std::uint64_t>();
  return v.str();
}

/// P_min^3 <= q^16, compared exactly.
inline BoundReport theorem_report(const ScanRecord& r) {
  const bool holds = ipow(BigInt{r.p_min}, 3) <= ipow(BigInt{r.q}, 16);
  return BoundReport::exact("P_min^3 <= q^16", static_cast<double>(r.p_min), r.theorem_bound.convert_to<double>(),
                            Relation::at_most, holds);
}

inline Json to_json(const CoverageResult& c) {
  return Json{{"q", c.q},
              {"P", c.threshold},
              {"covered", c.covered},
              {"missing", residues(c.missing)},
              {"witnesses", witnesses_json(c.witnesses)},
              {"bound_checks", Json::array()}};
}

inline Json to_json(const ScanRecord& r, const std::optional<std::map<std::uint64_t, Witness>>& ws = std::nullopt) {
  return Json{{"q", r.q},
              {"P_min", r.p_min},
              {"P_min_strict", r.p_min_strict},
              {"previous_prime", r.previous_prime},
              {"theorem_bound", big_json(r.theorem_bound)},
              {"margin_ratio", round_sig12(r.margin_ratio)},
              {"covered", true},
              {"missing", Json::array()},
              {"witnesses", witnesses_json(ws)},
              {"bound_checks", Json::array({to_json(theorem_report(r))})}};
}

inline Json to_json(const TableRow& row) {
  return Json{{"q", row.q},
              {"P", row.claimed_prime},
              {"P_min", row.p_min},
              {"covered", row.covered},
              {"missing", Json::array()},
              {"witnesses", Json::array()},
              {"bound_checks", Json::array({to_json(row.report)})}};
}

inline Json to_json(const SuiteResult& s) {
  return Json{{"suite", s.name},
              {"seed", s.seed},
              {"cases", s.cases},
              {"failures", s.failures},
              {"verdict", to_string(s.verdict())},
              {"first_failure", s.first_failure}};
}

inline Json to_json(const KernelPrimeResult& k) {
  return Json{{"q", k.q},
              {"character", k.character_id},
              {"prime", k.prime},
              {"bound", k.bound},
              {"within_bound", k.within_bound}};
}

struct LBoundRecord {
  std::uint64_t q = 0;
  std::uint64_t character = 0;
  std::vector<int> signs;
  GelfondCheck check;
};

inline Json to_json(const LBoundRecord& r) {
  Json j{{"q", r.q}, {"character", r.character}, {"signs", r.signs}};
  if (r.check.l_value) {
    j["L_lo"] = round_sig12(r.check.l_value->lo);
    j["L_hi"] = round_sig12(r.check.l_value->hi);
  } else {
    j["L_lo"] = nullptr;
    j["L_hi"] = nullptr;
  }
  j["gelfond_bound"] = round_sig12(gelfond_lower_bound(r.q));
  j["verdict"] = to_string(r.check.verdict);
  j["bound_checks"] = r.check.l_value ? Json::array({to_json(r.check.report)}) : Json::array();
  return j;
}

/// One JSON object per line.
inline std::string json_line(const Json& j) { return j.dump() + "\n"; }

}  // namespace triprime
