#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nscartan/errors.hpp"
#include "nscartan/factorization.hpp"
#include "nscartan/reporting.hpp"
#include "nscartan/version.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_mismatch = 1;
constexpr int exit_invalid = 2;
constexpr int exit_internal = 3;

void print_error_object(const std::string& kind, const std::string& what) {
    nlohmann::json j;
    j["error"] = kind;
    j["message"] = what;
    std::cerr << j.dump() << "\n";
}

int cmd_compute(std::uint64_t p, const nscartan::RunOptions& opts, const std::string& out_file) {
    const nscartan::RunReport report = nscartan::run_cached(p, opts);
    const std::string body = nscartan::report_to_json(report);
    if (out_file.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(out_file);
        out << body;
    }
    return exit_ok;
}

int cmd_verify_table(const nscartan::RunOptions& opts) {
    const nscartan::TableCheck check = nscartan::verify_reference_table(opts);
    unsigned passed = 0;
    for (const auto& row : check.rows) {
        std::cout << (row.pass ? "PASS" : "FAIL") << "  p=" << row.p
                  << (row.cache_hit ? "  [cached]" : "") << "\n";
        if (row.pass) {
            ++passed;
        } else {
            std::cout << "      expected: " << row.expected << "\n";
            std::cout << "      computed: " << row.computed << "\n";
        }
    }
    std::cout << passed << "/" << check.rows.size() << " rows match\n";
    return check.all_pass ? exit_ok : exit_mismatch;
}

int cmd_scan(std::uint64_t lo, std::uint64_t hi, unsigned jobs, const nscartan::RunOptions& opts) {
    bool any_failed = false;
    const nscartan::ScanSummary summary = nscartan::scan_range(
        lo, hi, jobs, opts,
        [](const nscartan::RunReport& r) { std::cout << nscartan::report_to_json(r); },
        [&](std::uint64_t p, const std::string& err) {
            any_failed = true;
            print_error_object("prime_failed", "p=" + std::to_string(p) + ": " + err);
        });
    std::cerr << "scanned " << summary.computed << " primes, " << summary.failed << " failures\n";
    std::cerr << "classifications:";
    for (const auto& [k, v] : summary.classification_counts) std::cerr << " " << k << "=" << v;
    std::cerr << "\nirregular primes:";
    for (auto p : summary.irregular_primes) std::cerr << " " << p;
    std::cerr << "\n";
    return any_failed ? exit_internal : exit_ok;
}

int cmd_growth(std::uint64_t pmax, const nscartan::RunOptions& opts) {
    const auto rows = nscartan::growth_table(pmax, opts);
    std::cout << std::setw(5) << "p" << std::setw(8) << "lower" << std::setw(8) << "upper"
              << std::setw(14) << "|tau|err" << std::setw(14) << "fe_resid" << std::setw(10)
              << "pv" << std::setw(14) << "id_rel_err" << std::setw(12) << "band\n";
    double band_lo = 0, band_hi = 0;
    bool first = true;
    for (const auto& r : rows) {
        std::cout << std::setw(5) << r.p << std::setw(8) << (r.analytic.lower_ok ? "ok" : "FAIL")
                  << std::setw(8) << (r.analytic.upper_ok ? "ok" : "FAIL") << std::setw(14)
                  << std::scientific << std::setprecision(2) << r.analytic.gauss_moduli_max_err
                  << std::setw(14) << r.analytic.fe_max_residual << std::setw(10) << std::fixed
                  << std::setprecision(4) << r.analytic.pv_max_ratio << std::setw(14)
                  << std::scientific << std::setprecision(2) << r.analytic.identity_rel_err
                  << std::setw(12) << std::fixed << std::setprecision(4) << r.theta_band << "\n";
        if (first) {
            band_lo = band_hi = r.theta_band;
            first = false;
        } else {
            band_lo = std::min(band_lo, r.theta_band);
            band_hi = std::max(band_hi, r.theta_band);
        }
    }
    if (!rows.empty())
        std::cout << "theta band (ln|C| - p ln p)/p observed in [" << std::setprecision(4)
                  << band_lo << ", " << band_hi << "]\n";
    return exit_ok;
}

int cmd_factor(const std::string& n) {
    const mpz_class value(n);
    const nscartan::FactoredInteger f = nscartan::factorize(value);
    std::cout << f.to_string() << "\n";
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computation of cuspidal divisor class numbers of non-split Cartan "
                 "modular curves"};
    app.require_subcommand(1);

    nscartan::RunOptions opts;
    std::uint64_t p = 0, lo = 5, hi = 0, pmax = 0;
    unsigned jobs = 1;
    std::string out_file, number, cache_dir;
    bool no_cache = false;

    auto add_cache_flags = [&](CLI::App* sub) {
        sub->add_option("--cache-dir", cache_dir, "cache directory (overrides CACHE_DIR)");
        sub->add_flag("--no-cache", no_cache, "recompute, ignore the cache");
    };

    auto* compute = app.add_subcommand("compute", "full report for one prime");
    compute->add_option("-p,--prime", p, "prime level")->required();
    compute->add_flag("--analytic", opts.analytic, "include the numeric verification layer");
    compute->add_option("--precision", opts.padic_precision, "starting p-adic precision");
    compute->add_option("--out", out_file, "write the JSON report to a file");
    add_cache_flags(compute);

    auto* verify = app.add_subcommand("verify-table", "recompute the embedded reference table");
    add_cache_flags(verify);

    auto* scan = app.add_subcommand("scan", "all primes in a range");
    scan->add_option("--min", lo, "lower bound")->required();
    scan->add_option("--max", hi, "upper bound")->required();
    scan->add_option("--jobs", jobs, "parallel pipelines");
    scan->add_flag("--analytic", opts.analytic, "include the numeric verification layer");
    add_cache_flags(scan);

    auto* growth = app.add_subcommand("growth", "analytic flags and ln-order residuals");
    growth->add_option("--max", pmax, "largest prime")->required();
    add_cache_flags(growth);

    auto* factor = app.add_subcommand("factor", "factor a positive integer");
    factor->add_option("n", number, "integer to factor")->required();

    CLI11_PARSE(app, argc, argv);

    opts.cache_dir = cache_dir;
    opts.use_cache = !no_cache;

    try {
        if (compute->parsed()) return cmd_compute(p, opts, out_file);
        if (verify->parsed()) return cmd_verify_table(opts);
        if (scan->parsed()) return cmd_scan(lo, hi, jobs, opts);
        if (growth->parsed()) {
            if (pmax > 1000) {
                print_error_object("invalid_input", "growth: --max above the analytic limit (1000)");
                return exit_invalid;
            }
            return cmd_growth(pmax, opts);
        }
        if (factor->parsed()) return cmd_factor(number);
    } catch (const nscartan::HardError& e) {
        print_error_object("internal_hard_error", e.what());
        return exit_internal;
    } catch (const nscartan::InsufficientPrecision& e) {
        print_error_object("insufficient_precision", e.what());
        return exit_internal;
    } catch (const std::invalid_argument& e) {
        print_error_object("invalid_input", e.what());
        return exit_invalid;
    } catch (const std::exception& e) {
        print_error_object("internal_error", e.what());
        return exit_internal;
    }
    return exit_ok;
}
