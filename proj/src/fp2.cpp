#include "nscartan/fp2.hpp"

#include <numeric>
#include <stdexcept>

#include "nscartan/bernoulli.hpp"
#include "nscartan/factorization.hpp"

namespace nscartan {

namespace {

bool is_quadratic_residue(std::uint64_t a, std::uint64_t p) {
    return powmod_u64(a, (p - 1) / 2, p) == 1;
}

std::uint64_t smallest_nonresidue(std::uint64_t p) {
    for (std::uint64_t r = 2; r < p; ++r)
        if (!is_quadratic_residue(r, p)) return r;
    throw std::logic_error("no quadratic non-residue found");
}

} // namespace

Fp2Context::Fp2Context(std::uint64_t p) : Fp2Context(p, 0) {}

// r == 0 selects the smallest non-residue.
Fp2Context::Fp2Context(std::uint64_t p, std::uint64_t r) : p_(p) {
    if (p < 5 || !is_certified_prime(mpz_class(static_cast<unsigned long>(p))))
        throw std::invalid_argument("Fp2Context: p must be a prime >= 5");
    // the half system has (p^2-1)/2 elements; keep its enumeration bounded
    if (p > 2000)
        throw std::invalid_argument("Fp2Context: level above the supported range (p <= 2000)");
    r_ = (r == 0) ? smallest_nonresidue(p) : r;
    if (is_quadratic_residue(r_, p))
        throw std::invalid_argument("Fp2Context: r must be a quadratic non-residue");
    m_ = (p - 1) / 2;
    d_ = static_cast<unsigned>(12 / std::gcd<std::uint64_t>(12, p + 1));

    const std::uint64_t group_order = p * p - 1;
    const FactoredInteger fo = factorize(mpz_class(static_cast<unsigned long>(group_order)));
    std::vector<std::uint64_t> prime_divs;
    for (const auto& f : fo.factors) prime_divs.push_back(f.prime.get_ui());

    // lexicographically smallest element of full multiplicative order
    bool found = false;
    for (std::uint64_t a = 0; a < p && !found; ++a) {
        for (std::uint64_t b = 0; b < p && !found; ++b) {
            if (a == 0 && b == 0) continue;
            const Fp2Element x{a, b};
            bool full = true;
            for (std::uint64_t q : prime_divs) {
                if (pow(x, group_order / q) == Fp2Element{1, 0}) {
                    full = false;
                    break;
                }
            }
            if (full) {
                g_ = x;
                found = true;
            }
        }
    }
    if (!found) throw std::logic_error("Fp2Context: no generator found");

    w_ = norm(g_);
    w_index_.assign(p - 1, 0);
    std::uint64_t cur = 1;
    std::vector<bool> seen(p - 1, false);
    for (std::uint64_t i = 0; i < m_; ++i) {
        w_index_[cur - 1] = i;
        w_index_[p - cur - 1] = i;
        seen[cur - 1] = seen[p - cur - 1] = true;
        cur = mulmod_u64(cur, w_, p);
    }
    for (bool s : seen)
        if (!s) throw std::logic_error("Fp2Context: w does not generate H");
}

Fp2Element Fp2Context::mul(Fp2Element x, Fp2Element y) const {
    // (a + bt)(c + dt) = ac + r bd + (ad + bc) t
    const std::uint64_t a = (mulmod_u64(x.a, y.a, p_) + mulmod_u64(r_, mulmod_u64(x.b, y.b, p_), p_)) % p_;
    const std::uint64_t b = (mulmod_u64(x.a, y.b, p_) + mulmod_u64(x.b, y.a, p_)) % p_;
    return {a, b};
}

Fp2Element Fp2Context::pow(Fp2Element x, std::uint64_t e) const {
    Fp2Element acc{1, 0};
    while (e) {
        if (e & 1) acc = mul(acc, x);
        x = mul(x, x);
        e >>= 1;
    }
    return acc;
}

std::uint64_t Fp2Context::trace(Fp2Element x) const { return (2 * x.a) % p_; }

std::uint64_t Fp2Context::norm(Fp2Element x) const {
    if (x == Fp2Element{0, 0}) throw std::invalid_argument("norm: zero input");
    const std::uint64_t a2 = mulmod_u64(x.a, x.a, p_);
    const std::uint64_t rb2 = mulmod_u64(r_, mulmod_u64(x.b, x.b, p_), p_);
    return (a2 + p_ - rb2) % p_;
}

std::vector<Fp2Element> Fp2Context::half_system() const {
    std::vector<Fp2Element> out;
    out.reserve((p_ * p_ - 1) / 2);
    for (std::uint64_t a = 0; a < p_; ++a) {
        for (std::uint64_t b = 0; b < p_; ++b) {
            if (a == 0 && b == 0) continue;
            const Fp2Element x{a, b};
            const Fp2Element neg{(p_ - a) % p_, (p_ - b) % p_};
            if (x < neg) out.push_back(x);
        }
    }
    return out;
}

std::uint64_t Fp2Context::h_index(std::uint64_t u) const {
    if (u % p_ == 0) throw std::invalid_argument("h_index: zero input");
    return w_index_[u % p_ - 1];
}

std::uint64_t Fp2Context::norm_class_index(Fp2Element x) const { return h_index(norm(x)); }

Fp2Context make_context_with_nonresidue(std::uint64_t p, std::uint64_t r) {
    return Fp2Context(p, r);
}

} // namespace nscartan
