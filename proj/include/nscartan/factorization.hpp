#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace nscartan {

struct PrimeFactor {
    mpz_class prime;
    unsigned exponent = 1;
    bool certified = true;

    friend bool operator==(const PrimeFactor&, const PrimeFactor&) = default;
};

/// A positive integer together with its prime factorization. Factors that
/// resisted the effort budget are kept with certified = false rather than
/// being silently assumed prime.
struct FactoredInteger {
    mpz_class value;
    std::vector<PrimeFactor> factors; // sorted by prime, product reassembles value

    mpz_class reassemble() const;
    bool fully_certified() const;
    std::string to_string() const; // "23^4 * 37181"
};

struct FactorConfig {
    std::uint64_t trial_bound = 1'000'000;
    std::uint64_t rho_iterations = 50'000'000; // per-number budget across restarts
    int mr_rounds_large = 64;                  // extra rounds above 2^64
};

/// Deterministic Miller-Rabin below 2^64; above, BPSW-style strong test plus
/// mr_rounds_large random-base rounds. Composite inputs never pass.
bool is_probable_prime(const mpz_class& n, int mr_rounds_large = 64);

/// True when n passes the primality certification used for the certified flag.
bool is_certified_prime(const mpz_class& n, int mr_rounds_large = 64);

/// Trial division, perfect-power detection, then Pollard rho (Brent) with
/// restarts under the configured budget.
FactoredInteger factorize(const mpz_class& n, const FactorConfig& cfg = {});

/// Primes in [lo, hi], by sieve. Intended for scan drivers, not bulk sieving.
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

} // namespace nscartan
