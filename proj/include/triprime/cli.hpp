#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "triprime/characters.hpp"
#include "triprime/errors.hpp"
#include "triprime/l_function.hpp"
#include "triprime/lemma_suites.hpp"
#include "triprime/parallel.hpp"
#include "triprime/report.hpp"
#include "triprime/verifier.hpp"

namespace triprime::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;

enum class Command { verify, scan, table, lbound, kernel_prime, lemmas };

struct RunConfig {
  Command command = Command::table;
  std::uint64_t q = 0;
  std::uint64_t threshold = 0;
  std::uint64_t q_lo = 2;
  std::uint64_t q_hi = 2;
  double tolerance = 1e-6;
  std::optional<std::uint64_t> sieve_memory_cap;
  OutputFormat format = OutputFormat::text;
  unsigned jobs = 1;
  bool witness = false;
  bool strict_below = false;
  bool distinct_primes = false;
  std::uint64_t seed = 0;
  bool quick = false;

  SieveConfig sieve() const {
    SieveConfig cfg = SieveConfig::from_env();
    if (sieve_memory_cap) cfg.memory_cap_bytes = *sieve_memory_cap;
    return cfg;
  }
};

struct ParseOutcome {
  std::optional<RunConfig> config;
  /// Exit status to use when config is empty (help: 0, bad usage: 64).
  int exit_code = kExitUsage;
};

/// Parses argv. Usage errors go to `err`, help text to `out`.
inline ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Checks that every invertible class mod q is a product of three small primes"};
  app.set_config("--config", "", "TOML/INI file mirroring the command-line flags");
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  std::uint64_t cap = 0;
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app.add_option("--sieve-memory-cap", cap, "Sieve memory cap in bytes (overrides TRIPRIME_SIEVE_MEMORY_CAP)")
      ->check(CLI::PositiveNumber);
  app.add_option("--jobs,-j", cfg.jobs, "Worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Coverage of every class mod q by primes <= P");
  verify->add_option("q", cfg.q)->required()->check(CLI::Range(std::uint64_t{1}, (std::uint64_t{1} << 32) - 1));
  verify->add_option("P", cfg.threshold)->required()->check(CLI::Range(std::uint64_t{2}, std::uint64_t{10'000'000'000ULL}));
  verify->add_flag("--witness", cfg.witness, "Emit one witness per class");
  verify->add_flag("--strict-below", cfg.strict_below, "Use primes p < P");
  verify->add_flag("--distinct", cfg.distinct_primes, "Require three distinct primes");

  auto* scan_cmd = app.add_subcommand("scan", "Minimal prime thresholds for q_lo..q_hi");
  scan_cmd->add_option("q_lo", cfg.q_lo)->required()->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 31));
  scan_cmd->add_option("q_hi", cfg.q_hi)->required()->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 31));
  scan_cmd->add_flag("--witness", cfg.witness, "Emit witnesses at P_min");

  app.add_subcommand("table", "Check the small-modulus thresholds and the vacuity bound");

  auto* lbound = app.add_subcommand("lbound", "Certified L(1, chi) and the Gel'fond lower bound for real chi mod q");
  lbound->add_option("q", cfg.q)->required()->check(CLI::Range(std::uint64_t{3}, std::uint64_t{1} << 24));
  lbound->add_option("--tolerance", cfg.tolerance)->check(CLI::PositiveNumber)->capture_default_str();

  auto* kernel = app.add_subcommand("kernel-prime", "Least prime p with chi(p) = 1 for each real chi mod q");
  kernel->add_option("q", cfg.q)->required()->check(CLI::Range(std::uint64_t{3}, std::uint64_t{1} << 24));

  auto* lemmas = app.add_subcommand("lemmas", "Seeded property sweeps of the supporting inequalities");
  lemmas->add_option("--seed", cfg.seed)->capture_default_str();
  lemmas->add_flag("--quick", cfg.quick, "Smaller sweeps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return {std::nullopt, 0};
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << "Run with --help for usage.\n";
    return {std::nullopt, kExitUsage};
  }

  if (*verify) cfg.command = Command::verify;
  else if (*scan_cmd) cfg.command = Command::scan;
  else if (*lbound) cfg.command = Command::lbound;
  else if (*kernel) cfg.command = Command::kernel_prime;
  else if (*lemmas) cfg.command = Command::lemmas;
  else cfg.command = Command::table;

  cfg.format = format == "json" ? OutputFormat::json : format == "csv" ? OutputFormat::csv : OutputFormat::text;
  if (cap > 0) cfg.sieve_memory_cap = cap;
  if (cfg.command == Command::scan && cfg.q_hi < cfg.q_lo) {
    err << "scan: q_hi must be >= q_lo\n";
    return {std::nullopt, kExitUsage};
  }
  if (cfg.command == Command::verify && cfg.witness && cfg.distinct_primes) {
    err << "verify: --witness cannot be combined with --distinct\n";
    return {std::nullopt, kExitUsage};
  }
  return {cfg, kExitPass};
}

namespace detail {

/// Worst verdict seen so far.
struct Status {
  bool failed = false;
  bool inconclusive = false;

  void add(Verdict v) {
    if (v == Verdict::fail) failed = true;
    if (v == Verdict::inconclusive) inconclusive = true;
  }
  void add(bool ok) { failed = failed || !ok; }
  int exit_code() const { return failed ? kExitFail : inconclusive ? kExitInconclusive : kExitPass; }
};

inline const char* mark(bool ok) { return ok ? "PASS" : "FAIL"; }

inline int run_verify(const RunConfig& cfg, std::ostream& out) {
  CoverageOptions opts;
  opts.with_witnesses = cfg.witness;
  opts.strict_below = cfg.strict_below;
  opts.distinct_primes = cfg.distinct_primes;
  opts.sieve = cfg.sieve();
  const auto res = coverage(cfg.q, cfg.threshold, opts);
  Status st;
  st.add(res.covered);
  if (res.witnesses)
    for (const auto& [cls, w] : *res.witnesses) st.add(validate_witness(w, cfg.strict_below));

  switch (cfg.format) {
    case OutputFormat::json: out << json_line(to_json(res)); break;
    case OutputFormat::csv:
      out << "q,P,covered,missing,witnesses\n"
          << res.q << ',' << res.threshold << ',' << (res.covered ? "true" : "false") << ','
          << join(residues(res.missing), ';') << ',' << witnesses_csv(res.witnesses) << '\n';
      break;
    case OutputFormat::text:
      out << "q=" << res.q << " P=" << res.threshold << (cfg.strict_below ? " (p < P)" : " (p <= P)")
          << (cfg.distinct_primes ? " distinct" : "") << ": " << (res.covered ? "covered" : "NOT covered") << "\n";
      if (!res.covered) out << "  missing: " << join(residues(res.missing), ' ') << "\n";
      if (res.witnesses)
        for (const auto& [cls, w] : *res.witnesses)
          out << "  " << cls << " = " << w.primes[0] << "*" << w.primes[1] << "*" << w.primes[2] << "\n";
      break;
  }
  return st.exit_code();
}

inline int run_scan(const RunConfig& cfg, std::ostream& out) {
  ScanOptions opts;
  opts.sieve = cfg.sieve();
  using Item = std::pair<ScanRecord, std::optional<std::map<std::uint64_t, Witness>>>;
  const auto items = parallel_map<Item>(cfg.q_hi - cfg.q_lo + 1, cfg.jobs, [&](std::size_t i) {
    const auto rec = minimal_prime_threshold(cfg.q_lo + i, opts);
    std::optional<std::map<std::uint64_t, Witness>> ws;
    if (cfg.witness) {
      CoverageOptions copts;
      copts.with_witnesses = true;
      copts.sieve = opts.sieve;
      ws = coverage(rec.q, rec.p_min, copts).witnesses;
    }
    return Item{rec, ws};
  });
  Status st;
  if (cfg.format == OutputFormat::csv) out << "q,P_min,P_min_strict,previous_prime,theorem_bound,margin_ratio,within_bound,witnesses\n";
  for (const auto& [rec, ws] : items) {
    const auto thm = theorem_report(rec);
    st.add(thm.satisfied && rec.within_bound);
    if (ws)
      for (const auto& [cls, w] : *ws) st.add(validate_witness(w));
    switch (cfg.format) {
      case OutputFormat::json: out << json_line(to_json(rec, ws)); break;
      case OutputFormat::csv:
        out << rec.q << ',' << rec.p_min << ',' << rec.p_min_strict << ',' << rec.previous_prime << ','
            << rec.theorem_bound.str() << ',' << format_real(rec.margin_ratio) << ','
            << (rec.within_bound ? "true" : "false") << ',' << witnesses_csv(ws) << '\n';
        break;
      case OutputFormat::text:
        out << "q=" << rec.q << " P_min=" << rec.p_min << " (strict " << rec.p_min_strict << ")"
            << " bound=" << rec.theorem_bound.str() << " margin=" << format_real(rec.margin_ratio) << " "
            << mark(thm.satisfied) << "\n";
        break;
    }
  }
  return st.exit_code();
}

inline int run_table(const RunConfig& cfg, std::ostream& out) {
  const auto rows = small_case_table(cfg.sieve());
  const auto vac = vacuity_check();
  Status st;
  if (cfg.format == OutputFormat::csv) out << "q,P,P_min,covered,satisfied\n";
  for (const auto& row : rows) {
    st.add(row.report.satisfied);
    switch (cfg.format) {
      case OutputFormat::json: out << json_line(to_json(row)); break;
      case OutputFormat::csv:
        out << row.q << ',' << row.claimed_prime << ',' << row.p_min << ',' << (row.covered ? "true" : "false") << ','
            << (row.report.satisfied ? "true" : "false") << '\n';
        break;
      case OutputFormat::text:
        out << mark(row.report.satisfied) << "  q=" << row.q << ": primes <= " << row.claimed_prime
            << (row.covered ? " cover" : " do NOT cover") << " every class (P_min=" << row.p_min << ")\n";
        break;
    }
  }
  st.add(vac.satisfied);
  switch (cfg.format) {
    case OutputFormat::json:
      out << json_line(Json{{"check", "vacuity"}, {"bound_checks", Json::array({to_json(vac)})}});
      break;
    case OutputFormat::csv:
      out << "vacuity," << format_real(vac.computed) << ',' << format_real(vac.bound) << ",,"
          << (vac.satisfied ? "true" : "false") << '\n';
      break;
    case OutputFormat::text:
      out << mark(vac.satisfied) << "  x < 29^3 admits no modulus q >= 2 (2^16 = 65536 > 24388)\n";
      break;
  }
  return st.exit_code();
}

inline int run_lbound(const RunConfig& cfg, std::ostream& out) {
  Status st;
  if (cfg.format == OutputFormat::csv) out << "q,character,L_lo,L_hi,gelfond_bound,verdict\n";
  for (const auto& chi : real_characters(cfg.q)) {
    if (chi.is_principal()) continue;
    const LBoundRecord rec{cfg.q, chi.id(), chi.signs(), check_gelfond(chi, cfg.tolerance)};
    st.add(rec.check.verdict);
    switch (cfg.format) {
      case OutputFormat::json: out << json_line(to_json(rec)); break;
      case OutputFormat::csv:
        out << rec.q << ',' << rec.character << ','
            << (rec.check.l_value ? format_real(rec.check.l_value->lo) : "") << ','
            << (rec.check.l_value ? format_real(rec.check.l_value->hi) : "") << ','
            << format_real(gelfond_lower_bound(rec.q)) << ',' << to_string(rec.check.verdict) << '\n';
        break;
      case OutputFormat::text:
        out << chi.label() << ": L(1,chi) in ";
        if (rec.check.l_value)
          out << "[" << format_real(rec.check.l_value->lo) << ", " << format_real(rec.check.l_value->hi) << "]";
        else
          out << "(not computed)";
        out << " >= " << format_real(gelfond_lower_bound(rec.q)) << " : " << to_string(rec.check.verdict) << "\n";
        break;
    }
  }
  return st.exit_code();
}

inline int run_kernel_prime(const RunConfig& cfg, std::ostream& out) {
  Status st;
  const auto sieve = cfg.sieve();
  if (cfg.format == OutputFormat::csv) out << "q,character,prime,bound,within_bound\n";
  for (const auto& chi : real_characters(cfg.q)) {
    if (chi.is_principal()) continue;
    const auto k = least_kernel_prime(chi, sieve);
    st.add(k.within_bound);
    switch (cfg.format) {
      case OutputFormat::json: out << json_line(to_json(k)); break;
      case OutputFormat::csv:
        out << k.q << ',' << k.character_id << ',' << k.prime << ',' << k.bound << ','
            << (k.within_bound ? "true" : "false") << '\n';
        break;
      case OutputFormat::text:
        out << chi.label() << ": least p with chi(p)=1 is " << k.prime << " (q^4 = " << k.bound << ") "
            << mark(k.within_bound) << "\n";
        break;
    }
  }
  return st.exit_code();
}

inline int run_lemmas(const RunConfig& cfg, std::ostream& out) {
  const auto sieve = cfg.sieve();
  const bool quick = cfg.quick;
  std::vector<SuiteResult> suites;
  suites.push_back(boundchi_suite(quick ? 60 : 300, cfg.seed, quick ? 2 : 8));
  suites.push_back(brun_titchmarsh_suite(quick ? 500 : 10'000, 1'000'000, 1'000'000, cfg.seed, sieve));
  suites.push_back(dusart_suite(quick ? 20'000 : 1'000'000, quick ? 50 : 1'000, quick ? 1'000'000 : 100'000'000,
                                cfg.seed, sieve));
  suites.push_back(f0_suite(quick ? 10'000 : 1'000'000));
  suites.push_back(kneser_suite(quick ? 500 : 10'000, 60, cfg.seed));
  Status st;
  if (cfg.format == OutputFormat::csv) out << "suite,seed,cases,failures,verdict\n";
  for (const auto& s : suites) {
    st.add(s.verdict());
    switch (cfg.format) {
      case OutputFormat::json: out << json_line(to_json(s)); break;
      case OutputFormat::csv:
        out << s.name << ',' << s.seed << ',' << s.cases << ',' << s.failures << ',' << to_string(s.verdict()) << '\n';
        break;
      case OutputFormat::text:
        out << mark(s.verdict() == Verdict::pass) << "  " << s.name << ": " << s.cases << " cases, " << s.failures
            << " failures";
        if (!s.first_failure.empty()) out << " (first: " << s.first_failure << ")";
        out << "\n";
        break;
    }
  }
  return st.exit_code();
}

}  // namespace detail

/// Runs one subcommand. Exit status: 0 when every assertion passed, 1 on a
/// failed assertion, 2 when something could not be decided within the
/// configured resource caps.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::verify: return detail::run_verify(cfg, out);
      case Command::scan: return detail::run_scan(cfg, out);
      case Command::table: return detail::run_table(cfg, out);
      case Command::lbound: return detail::run_lbound(cfg, out);
      case Command::kernel_prime: return detail::run_kernel_prime(cfg, out);
      case Command::lemmas: return detail::run_lemmas(cfg, out);
    }
  } catch (const ResourceError& e) {
    err << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const CounterexampleError& e) {
    err << "failure: " << e.what() << "\n";
    return kExitFail;
  } catch (const std::invalid_argument& e) {
    err << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "usage: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitFail;
}

inline int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const auto parsed = parse_args(argc, argv, out, err);
  if (!parsed.config) return parsed.exit_code;
  return run(*parsed.config, out, err);
}

}  // namespace triprime::cli
