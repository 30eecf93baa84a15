#include "nscartan/factorization.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace nscartan {

mpz_class FactoredInteger::reassemble() const {
    mpz_class acc(1);
    for (const auto& f : factors) {
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
        acc *= pe;
    }
    return acc;
}

bool FactoredInteger::fully_certified() const {
    return std::all_of(factors.begin(), factors.end(),
                       [](const PrimeFactor& f) { return f.certified; });
}

std::string FactoredInteger::to_string() const {
    if (factors.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& f : factors) {
        if (!first) os << " * ";
        first = false;
        os << f.prime.get_str();
        if (f.exponent > 1) os << "^" << f.exponent;
        if (!f.certified) os << "?";
    }
    return os.str();
}

namespace {

bool miller_rabin_witness(const mpz_class& n, const mpz_class& a, const mpz_class& d, unsigned r) {
    mpz_class x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < r; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return true;
    }
    return false;
}

bool miller_rabin(const mpz_class& n, const std::vector<mpz_class>& bases) {
    mpz_class d = n - 1;
    unsigned r = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d >>= 1;
        ++r;
    }
    for (const auto& a : bases) {
        mpz_class b = a % n;
        if (b == 0) continue;
        if (!miller_rabin_witness(n, b, d, r)) return false;
    }
    return true;
}

// Strong Lucas test with Selfridge parameters (the Lucas half of BPSW).
bool strong_lucas(const mpz_class& n) {
    if (mpz_perfect_square_p(n.get_mpz_t())) return false;
    long dsign = 5;
    mpz_class D;
    for (;;) {
        D = dsign;
        const int jac = mpz_jacobi(D.get_mpz_t(), n.get_mpz_t());
        if (jac == -1) break;
        if (jac == 0 && mpz_cmpabs(D.get_mpz_t(), n.get_mpz_t()) != 0) return false;
        dsign = dsign > 0 ? -(dsign + 2) : -(dsign - 2);
    }
    // P = 1, Q = (1 - D)/4
    mpz_class Q = (1 - D) / 4;
    mpz_class d = n + 1;
    unsigned s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d >>= 1;
        ++s;
    }
    // compute U_d, V_d mod n by binary chain
    mpz_class U(1), V(1), Qk(Q % n);
    const std::size_t bits = mpz_sizeinbase(d.get_mpz_t(), 2);
    for (std::size_t i = bits - 1; i-- > 0;) {
        // double: U_{2k} = U V, V_{2k} = V^2 - 2 Q^k
        U = (U * V) % n;
        V = (V * V - 2 * Qk) % n;
        Qk = (Qk * Qk) % n;
        if (mpz_tstbit(d.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
            // increment: U_{k+1} = (P U + V)/2, V_{k+1} = (D U + P V)/2
            mpz_class U2 = U + V;
            if (mpz_odd_p(U2.get_mpz_t())) U2 += n;
            U2 = (U2 >> 1) % n;
            mpz_class V2 = D * U + V;
            if (mpz_odd_p(V2.get_mpz_t())) V2 += n;
            V2 = (V2 >> 1) % n;
            U = U2;
            V = V2;
            Qk = (Qk * Q) % n;
        }
    }
    if (U % n == 0) return true;
    for (unsigned i = 0; i < s; ++i) {
        if (V % n == 0) return true;
        V = (V * V - 2 * Qk) % n;
        Qk = (Qk * Qk) % n;
    }
    return false;
}

const std::vector<mpz_class>& small_bases() {
    // deterministic witness set for n < 2^64
    static const std::vector<mpz_class> b = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    return b;
}

} // namespace

bool is_probable_prime(const mpz_class& n, int mr_rounds_large) {
    if (n < 2) return false;
    for (unsigned long q : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul}) {
        if (n == q) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), q)) return false;
    }
    if (!miller_rabin(n, small_bases())) return false;
    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) return true; // deterministic set suffices
    if (!strong_lucas(n)) return false;
    static thread_local gmp_randclass rng(gmp_randinit_default);
    static thread_local bool seeded = [] {
        rng.seed(0xC0FFEEul);
        return true;
    }();
    (void)seeded;
    std::vector<mpz_class> extra;
    extra.reserve(static_cast<std::size_t>(mr_rounds_large));
    for (int i = 0; i < mr_rounds_large; ++i) extra.push_back(rng.get_z_range(n - 3) + 2);
    return miller_rabin(n, extra);
}

bool is_certified_prime(const mpz_class& n, int mr_rounds_large) {
    return is_probable_prime(n, mr_rounds_large);
}

namespace {

// Pollard rho, Brent variant. Returns a nontrivial factor or 0 on budget exhaustion.
mpz_class pollard_rho(const mpz_class& n, std::uint64_t budget) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0x5EEDul + static_cast<unsigned long>(mpz_fdiv_ui(n.get_mpz_t(), 104729ul)));
    std::uint64_t spent = 0;
    while (spent < budget) {
        mpz_class y = rng.get_z_range(n - 3) + 2;
        mpz_class c = rng.get_z_range(n - 2) + 1;
        mpz_class x = y, q(1), g(1), ys;
        const unsigned long m = 128;
        unsigned long r = 1;
        while (g == 1 && spent < budget) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
            for (unsigned long k = 0; k < r && g == 1 && spent < budget; k += m) {
                ys = y;
                const unsigned long lim = std::min(m, r - k);
                for (unsigned long i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    mpz_class diff = x - y;
                    q = (q * abs(diff)) % n;
                }
                spent += lim;
                g = gcd(q, n);
            }
            r <<= 1;
        }
        if (g == n) {
            // backtrack one step at a time
            do {
                ys = (ys * ys + c) % n;
                mpz_class diff = x - ys;
                g = gcd(abs(diff), n);
            } while (g == 1);
        }
        if (g != n && g > 1) return g;
        // cycle degenerated; restart with new parameters
    }
    return 0;
}

void split_or_record(const mpz_class& n, const FactorConfig& cfg, std::map<mpz_class, unsigned>& out,
                     std::map<mpz_class, unsigned>& stubborn) {
    if (n == 1) return;
    if (is_probable_prime(n, cfg.mr_rounds_large)) {
        ++out[n];
        return;
    }
    // perfect powers first: table cofactors include squares of large primes.
    // stubborn parts of the root must carry the exponent too.
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned long k = 2; k <= mpz_sizeinbase(n.get_mpz_t(), 2); ++k) {
            mpz_class root;
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
                std::map<mpz_class, unsigned> sub, sub_stubborn;
                split_or_record(root, cfg, sub, sub_stubborn);
                for (const auto& [pr, e] : sub) out[pr] += e * static_cast<unsigned>(k);
                for (const auto& [c, e] : sub_stubborn)
                    stubborn[c] += e * static_cast<unsigned>(k);
                return;
            }
        }
    }
    const mpz_class g = pollard_rho(n, cfg.rho_iterations);
    if (g == 0) {
        ++stubborn[n];
        return;
    }
    split_or_record(g, cfg, out, stubborn);
    split_or_record(n / g, cfg, out, stubborn);
}

} // namespace

FactoredInteger factorize(const mpz_class& n, const FactorConfig& cfg) {
    if (n < 1) throw std::invalid_argument("factorize: input must be >= 1");
    FactoredInteger result;
    result.value = n;
    mpz_class rest = n;
    std::map<mpz_class, unsigned> found;
    // trial division
    for (std::uint64_t q = 2; q <= cfg.trial_bound && rest > 1; q += (q == 2 ? 1 : 2)) {
        if (q * q > rest) break;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(q))) {
            ++found[mpz_class(static_cast<unsigned long>(q))];
            rest /= static_cast<unsigned long>(q);
        }
    }
    std::map<mpz_class, unsigned> stubborn;
    if (rest > 1) split_or_record(rest, cfg, found, stubborn);
    for (const auto& [prime, exp] : found)
        result.factors.push_back({prime, exp, is_certified_prime(prime, cfg.mr_rounds_large)});
    for (const auto& [c, exp] : stubborn) result.factors.push_back({c, exp, false});
    std::sort(result.factors.begin(), result.factors.end(),
              [](const PrimeFactor& a, const PrimeFactor& b) { return a.prime < b.prime; });
    if (result.reassemble() != n)
        throw std::logic_error("factorize: reassembly mismatch");
    return result;
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    if (hi < 2 || hi < lo) return out;
    std::vector<bool> sieve(static_cast<std::size_t>(hi) + 1, true);
    sieve[0] = false;
    if (hi >= 1) sieve[1] = false;
    for (std::uint64_t i = 2; i * i <= hi; ++i)
        if (sieve[static_cast<std::size_t>(i)])
            for (std::uint64_t j = i * i; j <= hi; j += i) sieve[static_cast<std::size_t>(j)] = false;
    for (std::uint64_t i = std::max<std::uint64_t>(lo, 2); i <= hi; ++i)
        if (sieve[static_cast<std::size_t>(i)]) out.push_back(i);
    return out;
}

} // namespace nscartan
