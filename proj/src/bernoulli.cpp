#include "nscartan/bernoulli.hpp"

#include <mutex>
#include <stdexcept>

#include "nscartan/factorization.hpp"

namespace nscartan {

mpq_class make_rational(long num, long den) {
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

namespace {

struct BernoulliCache {
    std::vector<mpq_class> values; // values[n] = b_n
    std::mutex lock;

    BernoulliCache() {
        values.emplace_back(1);
        values.push_back(make_rational(-1, 2));
    }

    // Extends through index n using sum_{k<=i} C(i+1,k) b_k = 0.
    void extend(unsigned n) {
        while (values.size() <= n) {
            const unsigned i = static_cast<unsigned>(values.size());
            mpq_class acc(0);
            mpz_class binom(1); // C(i+1, k), updated incrementally
            for (unsigned k = 0; k < i; ++k) {
                acc += mpq_class(binom) * values[k];
                binom *= (i + 1 - k);
                binom /= (k + 1);
            }
            // binom is now C(i+1, i) = i+1
            mpq_class v = -acc / mpq_class(binom);
            v.canonicalize();
            values.push_back(v);
        }
    }
};

BernoulliCache& cache() {
    static BernoulliCache c;
    return c;
}

} // namespace

const mpq_class& bernoulli(unsigned n) {
    auto& c = cache();
    std::scoped_lock guard(c.lock);
    c.extend(n);
    return c.values[n];
}

mpq_class bernoulli_poly2(const mpq_class& u) {
    mpq_class v = u * u - u + make_rational(1, 6);
    v.canonicalize();
    return v;
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m) {
    // extended Euclid; m need not be prime but gcd(a, m) must be 1
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(m), newr = static_cast<std::int64_t>(a % m);
    while (newr != 0) {
        const std::int64_t q = r / newr;
        t = std::exchange(newt, t - q * newt);
        r = std::exchange(newr, r - q * newr);
    }
    if (r != 1) throw std::domain_error("invmod: arguments not coprime");
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t);
}

std::vector<std::uint64_t> bernoulli_mod_p(std::uint64_t p) {
    if (p < 5 || !is_certified_prime(mpz_class(static_cast<unsigned long>(p))))
        throw std::invalid_argument("bernoulli_mod_p: p must be a prime >= 5");
    const std::size_t count = static_cast<std::size_t>(p) - 2; // n = 0 .. p-3
    std::vector<std::uint64_t> b(count, 0);
    b[0] = 1;
    b[1] = p - invmod_u64(2, p); // -1/2
    std::vector<std::uint64_t> row = {1, 1}; // Pascal row 1
    for (std::size_t n = 2; n < count; ++n) {
        // build row n (binomials C(n, k)), then use row n+1 implicitly:
        // the recurrence needs C(n+1, k); build it from row n on the fly.
        std::vector<std::uint64_t> next(n + 1, 1);
        for (std::size_t k = 1; k < n; ++k) next[k] = (row[k - 1] + row[k]) % p;
        row = std::move(next); // row n
        std::uint64_t acc = 0;
        // C(n+1,k) = C(n,k-1) + C(n,k)
        for (std::size_t k = 0; k < n; ++k) {
            const std::uint64_t c = (k == 0) ? 1 : (row[k - 1] + row[k]) % p;
            acc = (acc + mulmod_u64(c, b[k], p)) % p;
        }
        // C(n+1, n) = n+1, invertible since n+1 <= p-4+1 < p
        b[n] = mulmod_u64(p - acc, invmod_u64((n + 1) % p, p), p);
    }
    return b;
}

std::uint64_t bernoulli_mod_p_at(std::uint64_t p, std::uint64_t n,
                                 const std::vector<std::uint64_t>& table) {
    if (n % (p - 1) == 0)
        throw std::invalid_argument("bernoulli_mod_p_at: index divisible by p-1");
    if (n <= p - 3) return table[static_cast<std::size_t>(n)];
    const std::uint64_t n2 = n - (p - 1);
    if (n2 > p - 3) throw std::invalid_argument("bernoulli_mod_p_at: index out of range");
    // b_n/n = b_{n2}/n2 mod p
    const std::uint64_t ratio = mulmod_u64(n % p, invmod_u64(n2 % p, p), p);
    return mulmod_u64(table[static_cast<std::size_t>(n2)], ratio, p);
}

std::vector<unsigned> irregular_pairs(std::uint64_t p) {
    const auto b = bernoulli_mod_p(p);
    std::vector<unsigned> out;
    for (std::uint64_t n = 2; n + 2 <= p - 1; n += 2)
        if (b[static_cast<std::size_t>(n)] == 0) out.push_back(static_cast<unsigned>(n));
    return out;
}

unsigned index_of_irregularity(std::uint64_t p) {
    return static_cast<unsigned>(irregular_pairs(p).size());
}

bool kummer_congruence_check(unsigned n, std::uint64_t p) {
    if (n % (p - 1) == 0 || (n + p - 1) % (p - 1) == 0)
        throw std::invalid_argument("kummer_congruence_check: p-1 must divide neither index");
    // compare exact rationals b_{n+p-1}/(n+p-1) and b_n/n mod p;
    // both are p-integral under the precondition
    const mpq_class lhs = bernoulli(n + static_cast<unsigned>(p) - 1) /
                          mpq_class(static_cast<unsigned long>(n + p - 1));
    const mpq_class rhs = bernoulli(n) / mpq_class(static_cast<unsigned long>(n));
    mpq_class diff = lhs - rhs;
    diff.canonicalize();
    if (mpz_divisible_ui_p(diff.get_den().get_mpz_t(), static_cast<unsigned long>(p)))
        throw std::domain_error("kummer_congruence_check: difference not p-integral");
    return mpz_divisible_ui_p(diff.get_num().get_mpz_t(), static_cast<unsigned long>(p)) != 0;
}

} // namespace nscartan
