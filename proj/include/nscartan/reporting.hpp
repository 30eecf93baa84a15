#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "nscartan/analytic.hpp"
#include "nscartan/classnumber.hpp"
#include "nscartan/padic.hpp"

namespace nscartan {

/// One row of the embedded reference table of factored class numbers.
struct ReferenceTableRow {
    std::uint64_t p;
    std::vector<std::pair<std::string, unsigned>> factors; // (prime, exponent)
};

/// The eight reference rows (p = 23 ... 101) the verify-table command
/// recomputes from scratch.
const std::vector<ReferenceTableRow>& reference_table();

struct RunOptions {
    bool analytic = false;
    unsigned padic_precision = 4;
    bool use_cache = true;
    std::string cache_dir; // resolved: flag > CACHE_DIR env > default
};

/// Scalar analytic fields that go into the JSON report.
struct AnalyticSummary {
    double product_abs = 0;
    bool lower_ok = false;
    bool upper_ok = false;
    double gauss_moduli_max_err = 0;
    double fe_max_residual = 0;
    double pv_max_ratio = 0;
    double ln_order = 0;
    double identity_rel_err = 0;
};

struct RunReport {
    std::uint64_t p = 0;
    mpz_class order;
    FactoredInteger factors;
    std::vector<mpz_class> elementary_divisors;
    unsigned ord_p = 0;
    unsigned floor_rank = 0; // [p/4] - 1
    unsigned irr = 0;
    std::string classification;
    std::vector<ValuationRow> langata; // wire name of the per-j valuation rows
    std::optional<bool> q_parity;            // absent for p = 3 mod 4
    std::optional<AnalyticSummary> analytic; // present with --analytic
    std::map<std::string, std::int64_t> timings_ms;
    std::string code_version;

    bool cache_hit = false; // in-memory marker, not serialized
};

/// Canonical JSON body (sorted keys, all integers as decimal strings).
std::string report_to_json(const RunReport& r);
RunReport report_from_json(const std::string& text);

/// Report bodies compared with timings excluded.
bool reports_equivalent(const RunReport& a, const RunReport& b);

/// Full pipeline for one prime: both order paths, valuation report,
/// classification, parity check, optional analytic verification.
RunReport run_pipeline(std::uint64_t p, const RunOptions& opts);

/// Cache-aware wrapper around run_pipeline; files live one per
/// (p, code_version), written atomically.
RunReport run_cached(std::uint64_t p, const RunOptions& opts);

std::string resolve_cache_dir(const RunOptions& opts);

struct TableCheckRow {
    std::uint64_t p = 0;
    std::string expected;
    std::string computed;
    bool pass = false;
    bool cache_hit = false;
};

struct TableCheck {
    std::vector<TableCheckRow> rows;
    bool all_pass = false;
};

/// Exact comparison of a computed factorization against a fixture row;
/// uncertified factors never match.
bool factorization_matches(const FactoredInteger& got,
                           const std::vector<std::pair<std::string, unsigned>>& expected);

/// Recomputes all reference rows and diffs the factored orders.
TableCheck verify_reference_table(const RunOptions& opts);

struct ScanSummary {
    std::map<std::string, unsigned> classification_counts;
    std::vector<std::uint64_t> irregular_primes;
    unsigned computed = 0;
    unsigned failed = 0;
};

/// Runs the pipeline on every prime in [lo, hi], `jobs` primes in flight at
/// a time; `sink` observes reports in ascending-p order regardless of the
/// completion order. Per-prime failures are recorded and the scan continues.
ScanSummary scan_range(std::uint64_t lo, std::uint64_t hi, unsigned jobs, const RunOptions& opts,
                       const std::function<void(const RunReport&)>& sink,
                       const std::function<void(std::uint64_t, const std::string&)>& on_error);

struct GrowthRow {
    std::uint64_t p = 0;
    AnalyticSummary analytic;
    double theta_band = 0; // (ln order - p ln p) / p
};

std::vector<GrowthRow> growth_table(std::uint64_t pmax, const RunOptions& opts);

} // namespace nscartan
