#include "nscartan/resultant.hpp"

#include <algorithm>
#include <stdexcept>

namespace nscartan {

long poly_degree(const PolyZ& a) {
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != 0) return static_cast<long>(i);
    return -1;
}

namespace {

void trim(PolyZ& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

mpz_class content(const PolyZ& a) {
    mpz_class g(0);
    for (const auto& c : a) g = gcd(g, c);
    return g == 0 ? mpz_class(1) : g;
}

void divide_exact(PolyZ& a, const mpz_class& d) {
    for (auto& c : a) {
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
        c = q;
    }
}

// pseudo-remainder: lc(b)^{deg a - deg b + 1} * a mod b
PolyZ prem(PolyZ a, const PolyZ& b) {
    const long db = poly_degree(b);
    const mpz_class lcb = b[static_cast<std::size_t>(db)];
    long e = poly_degree(a) - db + 1;
    while (poly_degree(a) >= db) {
        const long da = poly_degree(a);
        const mpz_class lca = a[static_cast<std::size_t>(da)];
        const long shift = da - db;
        for (auto& c : a) c *= lcb;
        for (long i = 0; i <= db; ++i)
            a[static_cast<std::size_t>(i + shift)] -= lca * b[static_cast<std::size_t>(i)];
        trim(a);
        --e;
    }
    if (e > 0) {
        mpz_class scale;
        mpz_pow_ui(scale.get_mpz_t(), lcb.get_mpz_t(), static_cast<unsigned long>(e));
        for (auto& c : a) c *= scale;
    }
    return a;
}

mpz_class pow_z(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

} // namespace

mpz_class resultant(PolyZ a, PolyZ b) {
    trim(a);
    trim(b);
    if (a.empty() || b.empty()) return 0;

    int sign = 1;
    if (poly_degree(a) < poly_degree(b)) {
        if ((poly_degree(a) & 1) && (poly_degree(b) & 1)) sign = -sign;
        std::swap(a, b);
    }
    if (poly_degree(b) == 0) return sign * pow_z(b[0], static_cast<unsigned long>(poly_degree(a)));

    const mpz_class ca = content(a), cb = content(b);
    divide_exact(a, ca);
    divide_exact(b, cb);
    mpz_class t = pow_z(ca, static_cast<unsigned long>(poly_degree(b))) *
                  pow_z(cb, static_cast<unsigned long>(poly_degree(a)));

    mpz_class g(1), h(1);
    for (;;) {
        const long da = poly_degree(a), db = poly_degree(b);
        const long delta = da - db;
        if ((da & 1) && (db & 1)) sign = -sign;
        PolyZ r = prem(a, b);
        a = std::move(b);
        // divide by g * h^delta (exact, by the subresultant theorem)
        mpz_class divisor = g * pow_z(h, static_cast<unsigned long>(delta));
        if (!r.empty()) divide_exact(r, divisor);
        b = std::move(r);
        g = a[static_cast<std::size_t>(poly_degree(a))];
        if (delta >= 1) {
            // h = g^delta / h^{delta-1}
            mpz_class num = pow_z(g, static_cast<unsigned long>(delta));
            mpz_class den = pow_z(h, static_cast<unsigned long>(delta - 1));
            mpz_class q;
            mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            h = q;
        }
        if (b.empty()) return 0; // nontrivial common factor
        if (poly_degree(b) == 0) {
            const long d1 = poly_degree(a);
            // res(primitive parts) = lc(b)^{d1} / h^{d1 - 1}
            mpz_class num = pow_z(b[0], static_cast<unsigned long>(d1));
            mpz_class den = pow_z(h, static_cast<unsigned long>(d1 - 1));
            mpz_class q;
            mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            return sign * t * q;
        }
    }
}

} // namespace nscartan
