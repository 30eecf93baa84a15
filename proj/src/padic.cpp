#include "nscartan/padic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "nscartan/bernoulli.hpp"
#include "nscartan/errors.hpp"
#include "nscartan/fp2.hpp"

namespace nscartan {

PadicNumber PadicNumber::zero_at_precision(std::uint64_t p, long zero_bound) {
    PadicNumber n;
    n.p_ = p;
    n.zero_ = true;
    n.zero_bound_ = zero_bound;
    return n;
}

PadicNumber PadicNumber::from_scaled(std::uint64_t p, const mpz_class& x, unsigned k, long shift,
                                     const mpz_class& divisor) {
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), k);
    mpz_class v = x % pk;
    if (v < 0) v += pk;
    if (v == 0) return zero_at_precision(p, static_cast<long>(k) + shift);

    unsigned ord = 0;
    while (mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(p))) {
        v /= static_cast<unsigned long>(p);
        ++ord;
    }
    const unsigned prec = k - ord;
    mpz_class mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), static_cast<unsigned long>(p), prec);
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), divisor.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw std::invalid_argument("PadicNumber::from_scaled: divisor not invertible");
    PadicNumber n;
    n.p_ = p;
    n.zero_ = false;
    n.valuation_ = static_cast<long>(ord) + shift;
    n.unit_ = (v * inv) % mod;
    n.prec_ = prec;
    return n;
}

long PadicNumber::valuation() const {
    if (zero_) {
        std::ostringstream os;
        os << "p-adic valuation query on a value indistinguishable from zero"
           << " (ord >= " << zero_bound_ << ")";
        throw InsufficientPrecision(os.str());
    }
    return valuation_;
}

const mpz_class& PadicNumber::unit() const {
    if (zero_) throw InsufficientPrecision("unit part of a zero-at-precision value");
    return unit_;
}

std::uint64_t PadicNumber::leading_digit() const {
    return mpz_fdiv_ui(unit().get_mpz_t(), static_cast<unsigned long>(p_));
}

PadicNumber PadicNumber::operator*(const PadicNumber& other) const {
    if (p_ != other.p_) throw std::invalid_argument("p-adic multiply: mismatched primes");
    if (zero_ || other.zero_) {
        const long lhs = zero_ ? zero_bound_ : valuation_;
        const long rhs = other.zero_ ? other.zero_bound_ : other.valuation_;
        return zero_at_precision(p_, lhs + rhs);
    }
    PadicNumber n;
    n.p_ = p_;
    n.zero_ = false;
    n.valuation_ = valuation_ + other.valuation_;
    n.prec_ = std::min(prec_, other.prec_);
    mpz_class mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), static_cast<unsigned long>(p_), n.prec_);
    n.unit_ = (unit_ * other.unit_) % mod;
    return n;
}

bool PadicNumber::congruent(const PadicNumber& other) const {
    if (p_ != other.p_) return false;
    if (zero_ || other.zero_) {
        // comparable only through valuation bounds; treat both-zero as equal
        return zero_ && other.zero_;
    }
    if (valuation_ != other.valuation_) return false;
    const unsigned prec = std::min(prec_, other.prec_);
    mpz_class mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), static_cast<unsigned long>(p_), prec);
    return (unit_ - other.unit_) % mod == 0;
}

PadicNumber teichmuller(std::uint64_t a, std::uint64_t p, unsigned k) {
    if (a < 1 || a > p - 1) throw std::invalid_argument("teichmuller: a must be in [1, p-1]");
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), k);
    mpz_class x(static_cast<unsigned long>(a));
    const mpz_class pz(static_cast<unsigned long>(p));
    for (unsigned i = 0; i + 1 < k; ++i) {
        mpz_class next;
        mpz_powm(next.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t(), pk.get_mpz_t());
        if (next == x) break; // fixed point reached early
        x = next;
    }
    return PadicNumber::from_scaled(p, x, k, 0);
}

TeichmullerTable::TeichmullerTable(std::uint64_t p, unsigned k) : p_(p), k_(k) {
    mpz_ui_pow_ui(pk_.get_mpz_t(), static_cast<unsigned long>(p), k);
    // smallest primitive root mod p
    std::uint64_t g0 = 0;
    const std::uint64_t phi = p - 1;
    std::vector<std::uint64_t> prime_divs;
    {
        std::uint64_t n = phi;
        for (std::uint64_t d = 2; d * d <= n; ++d) {
            if (n % d == 0) {
                prime_divs.push_back(d);
                while (n % d == 0) n /= d;
            }
        }
        if (n > 1) prime_divs.push_back(n);
    }
    for (std::uint64_t cand = 2; cand < p; ++cand) {
        bool ok = true;
        for (std::uint64_t q : prime_divs)
            if (powmod_u64(cand, phi / q, p) == 1) {
                ok = false;
                break;
            }
        if (ok) {
            g0 = cand;
            break;
        }
    }
    dlog_.assign(p - 1, 0);
    std::uint64_t cur = 1;
    for (std::uint64_t e = 0; e < phi; ++e) {
        dlog_[cur - 1] = e;
        cur = mulmod_u64(cur, g0, p);
    }
    // omega(g0) mod p^k, then its power table
    const PadicNumber om = teichmuller(g0, p, k);
    root_powers_.reserve(phi);
    root_powers_.emplace_back(1);
    for (std::uint64_t e = 1; e < phi; ++e)
        root_powers_.push_back((root_powers_.back() * om.unit()) % pk_);
}

mpz_class TeichmullerTable::omega_pow(std::uint64_t a, std::uint64_t e) const {
    const std::uint64_t idx =
        static_cast<std::uint64_t>((static_cast<unsigned __int128>(dlog_[a % p_ - 1]) * e) % (p_ - 1));
    return root_powers_[static_cast<std::size_t>(idx)];
}

PadicNumber bprime2(const TeichmullerTable& tb, unsigned j) {
    const std::uint64_t p = tb.p();
    const unsigned K = tb.precision();
    const mpz_class& pK = tb.modulus();
    mpz_class s2(0), s1(0), s0(0);
    for (std::uint64_t a = 1; a < p; ++a) {
        const mpz_class w = tb.omega_pow(a, 4ull * j);
        s2 += w * static_cast<unsigned long>(a * a);
        s1 += w * static_cast<unsigned long>(a);
        s0 += w;
    }
    // B' = (1/p) S2 - S1 + (p/6) S0 = (6 S2 - 6p S1 + p^2 S0) / (6p)
    mpz_class x = 6 * s2 - 6 * static_cast<unsigned long>(p) * s1 +
                  static_cast<unsigned long>(p * p) * s0;
    x %= pK;
    return PadicNumber::from_scaled(p, x, K, -1, 6);
}

PadicNumber bprime2(unsigned j, std::uint64_t p, unsigned k) {
    if (j < 1 || j > (p - 3) / 2) throw std::invalid_argument("bprime2: j out of range");
    const TeichmullerTable tb(p, k + 3);
    return bprime2(tb, j);
}

PadicNumber s_phi(const ClassSumPolynomial& csp, std::uint64_t w_rep, unsigned j, unsigned k) {
    const std::uint64_t p = csp.p, m = csp.m;
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), k);

    // 12 * (p/2) c_i must be integers (theta lies in (1/12) Z[H])
    std::vector<mpz_class> t;
    t.reserve(static_cast<std::size_t>(m));
    for (std::uint64_t i = 0; i < m; ++i) {
        mpz_class num = 12 * csp.scaled_coeffs[static_cast<std::size_t>(i)];
        if (!mpz_divisible_p(num.get_mpz_t(), csp.denominator.get_mpz_t()))
            throw HardError("s_phi: 12*theta is not integral");
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), csp.denominator.get_mpz_t());
        t.push_back(q);
    }

    // phi(w) = omega(w_rep)^2, a root of unity of exact order m mod p^k
    const PadicNumber om_w = teichmuller(w_rep % p, p, k);
    mpz_class phi_w = (om_w.unit() * om_w.unit()) % pk;
    std::vector<mpz_class> phi_pow(static_cast<std::size_t>(m));
    phi_pow[0] = 1;
    for (std::uint64_t e = 1; e < m; ++e) phi_pow[e] = (phi_pow[e - 1] * phi_w) % pk;

    mpz_class acc(0);
    for (std::uint64_t i = 0; i < m; ++i) {
        const std::uint64_t e = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(i) * j) % m);
        acc += t[static_cast<std::size_t>(i)] * phi_pow[static_cast<std::size_t>(e)];
    }
    acc %= pk;
    return PadicNumber::from_scaled(p, acc, k, 0, 12);
}

PadicNumber s_phi(unsigned j, std::uint64_t p, unsigned k) {
    if (j < 1 || j > (p - 3) / 2) throw std::invalid_argument("s_phi: j out of range");
    const Fp2Context ctx(p);
    return s_phi(class_sums(ctx), ctx.w_rep(), j, k);
}

const char* to_string(PSylowShape s) {
    switch (s) {
        case PSylowShape::ElementaryRankFloor: return "ELEMENTARY_RANK_FLOOR";
        case PSylowShape::HasOrderPSquared: return "HAS_ORDER_P_SQUARED";
        case PSylowShape::ExcessWithoutPSquared: return "EXCESS_WITHOUT_P_SQUARED";
    }
    return "?";
}

namespace {

struct ClauseSelect {
    bool special = false; // the two exact-zero clauses
    bool low = false;     // ord S = 1 + ord B' >= 1
};

ClauseSelect clause_for(std::uint64_t p, unsigned j) {
    ClauseSelect c;
    if (p % 4 == 1) {
        if (j == (p - 1) / 4) c.special = true;
        else c.low = (j <= (p - 5) / 4);
    } else {
        if (j == (p - 3) / 4) c.special = true;
        else c.low = (j <= (p - 7) / 4);
    }
    return c;
}

} // namespace

ValuationReport verify_valuation_clauses(std::uint64_t p, unsigned k) {
    if (p < 5 || !is_certified_prime(mpz_class(static_cast<unsigned long>(p))))
        throw std::invalid_argument("verify_valuation_clauses: p must be a prime >= 5");
    constexpr unsigned precision_cap = 16;

    const Fp2Context ctx(p);
    const ClassSumPolynomial csp = class_sums(ctx);
    const auto btable = bernoulli_mod_p(p);

    ValuationReport report;
    report.p = p;
    report.irr = index_of_irregularity(p);

    const std::uint64_t m = (p - 1) / 2;
    for (unsigned j = 1; j + 1 <= m; ++j) {
        int ord_S = 0, ord_B = 0;
        for (unsigned prec = k;; prec *= 2) {
            if (prec > precision_cap)
                throw InsufficientPrecision("verify_valuation_clauses: precision cap reached");
            try {
                const PadicNumber S = s_phi(csp, ctx.w_rep(), j, prec);
                const TeichmullerTable tb(p, prec + 3);
                const PadicNumber B = bprime2(tb, j);
                ord_S = static_cast<int>(S.valuation());
                ord_B = static_cast<int>(B.valuation());
            } catch (const InsufficientPrecision&) {
                continue; // escalate
            }
            break;
        }

        const ClauseSelect c = clause_for(p, j);
        bool ok;
        if (c.special) {
            ok = (p % 4 == 1) ? (ord_S == 0) : (ord_S == 0 && ord_B == -1);
        } else if (c.low) {
            ok = (ord_S == 1 + ord_B) && (ord_S >= 1);
        } else {
            ok = (ord_S == ord_B) && (ord_S >= 0);
        }
        if (!ok) {
            std::ostringstream os;
            os << "valuation clause violated at p=" << p << " j=" << j << ": ord_S=" << ord_S
               << " ord_B'=" << ord_B;
            throw HardError(os.str());
        }

        ValuationRow row;
        row.j = j;
        row.ord_S = ord_S;
        row.ord_Bprime = ord_B;
        const std::uint64_t n = 4ull * j + 2;
        if (n % (p - 1) != 0) row.b_mod_p = bernoulli_mod_p_at(p, n, btable);
        report.per_j.push_back(row);
        report.predicted_ord_p_total += static_cast<unsigned>(ord_S);
    }
    return report;
}

PSylowShape classify(std::uint64_t p, ValuationReport& report, const ClassGroupStructure& snf) {
    if (report.p != p || snf.p != p)
        throw std::invalid_argument("classify: report and structure must be for the same p");

    const unsigned floor_rank = static_cast<unsigned>(p / 4) - 1;
    const unsigned total = report.predicted_ord_p_total;

    if (snf.p_valuation() != total) {
        std::ostringstream os;
        os << "classify: eigencomponent total " << total << " != ord_p of SNF order "
           << snf.p_valuation() << " at p=" << p;
        throw HardError(os.str());
    }
    if (total < floor_rank)
        throw HardError("classify: ord_p below the floor [p/4]-1");

    PSylowShape shape;
    if (total == floor_rank) {
        shape = PSylowShape::ElementaryRankFloor;
    } else if (p % 4 == 1) {
        shape = PSylowShape::HasOrderPSquared;
    } else {
        // p = 3 mod 4: order p^2 exists iff p | b_{4j+2} for some j <= (p-7)/4
        bool has = false;
        for (unsigned n : irregular_pairs(p))
            if (n % 4 == 2 && n <= p - 5) has = true;
        shape = has ? PSylowShape::HasOrderPSquared : PSylowShape::ExcessWithoutPSquared;
    }

    // ground truth: multiset of positive ord S values vs p-parts of the SNF
    std::vector<unsigned> predicted;
    for (const auto& row : report.per_j)
        if (row.ord_S > 0) predicted.push_back(static_cast<unsigned>(row.ord_S));
    std::sort(predicted.begin(), predicted.end());
    const std::vector<unsigned> actual = snf.p_part_exponents();
    if (predicted != actual) {
        std::ostringstream os;
        os << "classify: per-character p-power multiset disagrees with SNF at p=" << p;
        throw HardError(os.str());
    }

    const bool snf_has_square =
        std::any_of(actual.begin(), actual.end(), [](unsigned e) { return e >= 2; });
    const bool consistent = (shape == PSylowShape::HasOrderPSquared)
                                ? snf_has_square
                                : (!snf_has_square &&
                                   actual.size() == (shape == PSylowShape::ElementaryRankFloor
                                                         ? floor_rank
                                                         : total));
    if (!consistent)
        throw HardError("classify: predicted shape contradicts SNF elementary divisors");

    report.classification = shape;
    return shape;
}

bool vonstaudt_congruence_check(std::uint64_t p, unsigned j) {
    if (j < 1 || j > (p - 3) / 2) throw std::invalid_argument("vonstaudt: j out of range");
    if (p % 4 == 3 && j == (p - 3) / 4)
        throw std::invalid_argument("vonstaudt: excluded j (B' has negative valuation)");

    const PadicNumber b = bprime2(j, p, 2);
    const long ord = b.valuation();
    const std::uint64_t lhs = ord >= 1 ? 0 : (ord == 0 ? b.leading_digit() : 0);
    if (ord < 0) throw HardError("vonstaudt: unexpected negative valuation");

    const auto table = bernoulli_mod_p(p);
    const std::uint64_t bn = bernoulli_mod_p_at(p, 4ull * j + 2, table);
    const std::uint64_t rhs = mulmod_u64(bn, invmod_u64((2ull * j + 1) % p, p), p);
    return lhs == rhs;
}

bool q_parity_check(std::uint64_t p, const FactoredInteger& factored) {
    if (p % 4 != 1) throw std::invalid_argument("q_parity_check: requires p = 1 mod 4");
    const mpz_class pz(static_cast<unsigned long>(p));
    const mpz_class excluded = pz * (pz * pz - 1);
    for (const auto& f : factored.factors) {
        if (!f.certified)
            throw HardError("q_parity_check: factorization carries an uncertified factor");
        if (f.prime < 7) continue;
        if (mpz_divisible_p(excluded.get_mpz_t(), f.prime.get_mpz_t())) continue;
        if (f.exponent % 2 != 0) return false;
    }
    return true;
}

} // namespace nscartan
