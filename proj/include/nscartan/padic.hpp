#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "nscartan/classnumber.hpp"
#include "nscartan/stickelberger.hpp"

namespace nscartan {

/// Finite-precision element of Q_p: p^valuation * unit with the unit known
/// mod p^precision. A value indistinguishable from zero keeps only the bound
/// "ord >= zero_bound"; asking such a value for its valuation raises
/// InsufficientPrecision instead of returning a fake 0.
class PadicNumber {
public:
    static PadicNumber zero_at_precision(std::uint64_t p, long zero_bound);
    /// value = (x / divisor) * p^shift, with x known mod p^k and p not
    /// dividing divisor.
    static PadicNumber from_scaled(std::uint64_t p, const mpz_class& x, unsigned k, long shift,
                                   const mpz_class& divisor = 1);

    std::uint64_t p() const { return p_; }
    bool is_zero_at_precision() const { return zero_; }
    /// Exact valuation; raises InsufficientPrecision for zero-at-precision.
    long valuation() const;
    /// Unit part in [1, p^precision); raises for zero-at-precision.
    const mpz_class& unit() const;
    unsigned precision() const { return prec_; }
    /// Lower bound on the valuation that holds in every case.
    long valuation_lower_bound() const { return zero_ ? zero_bound_ : valuation_; }

    /// unit mod p (the leading p-adic digit).
    std::uint64_t leading_digit() const;

    PadicNumber operator*(const PadicNumber& other) const;
    /// Equality of the represented values at the shared precision.
    bool congruent(const PadicNumber& other) const;

private:
    PadicNumber() = default;

    std::uint64_t p_ = 0;
    bool zero_ = true;
    long valuation_ = 0;
    long zero_bound_ = 0;
    mpz_class unit_;
    unsigned prec_ = 0;
};

/// The Teichmueller lift: the unique (p-1)-th root of unity congruent to a
/// mod p, computed mod p^k by iterated p-th powering. Requires a in [1, p-1].
PadicNumber teichmuller(std::uint64_t a, std::uint64_t p, unsigned k);

/// Shared per-prime tables: omega(a) mod p^K for all a via a discrete-log
/// table against a fixed primitive root.
class TeichmullerTable {
public:
    TeichmullerTable(std::uint64_t p, unsigned k);

    std::uint64_t p() const { return p_; }
    unsigned precision() const { return k_; }
    const mpz_class& modulus() const { return pk_; }
    /// omega(a)^e mod p^K for a in [1, p-1].
    mpz_class omega_pow(std::uint64_t a, std::uint64_t e) const;

private:
    std::uint64_t p_;
    unsigned k_;
    mpz_class pk_;
    std::vector<std::uint64_t> dlog_;    // dlog_[a-1] in [0, p-2]
    std::vector<mpz_class> root_powers_; // omega(g0)^e, e in [0, p-2]
};

/// B'_{2,phi^j} = B_{2,omega^{4j}} = p sum_a omega^{4j}(a) B_2(a/p), evaluated
/// p-adically. The valuation is -1 exactly when p = 3 mod 4 and j = (p-3)/4.
PadicNumber bprime2(unsigned j, std::uint64_t p, unsigned k);
PadicNumber bprime2(const TeichmullerTable& tb, unsigned j);

/// S_{phi^j} = (p/2) sum_i c_i phi^j(w^i). Since theta carries its class sum
/// c_i at w^{-i}, this equals chi(theta) for chi = phi^{-j}; theta acts on
/// the phi^{-j}-eigenspace as multiplication by this value.
PadicNumber s_phi(unsigned j, std::uint64_t p, unsigned k);
PadicNumber s_phi(const ClassSumPolynomial& csp, std::uint64_t w_rep, unsigned j, unsigned k);

enum class PSylowShape {
    ElementaryRankFloor,  // C_p = (Z/p)^{[p/4]-1}
    HasOrderPSquared,     // an element of order p^2 exists
    ExcessWithoutPSquared // ord_p above the floor, all invariants still p
};

const char* to_string(PSylowShape s);

struct ValuationRow {
    unsigned j = 0;
    int ord_S = 0;
    int ord_Bprime = 0;
    /// b_{4j+2} mod p (Kummer-reduced above p-3); absent when p-1 | 4j+2.
    std::optional<std::uint64_t> b_mod_p;
};

struct ValuationReport {
    std::uint64_t p = 0;
    std::vector<ValuationRow> per_j; // j = 1 .. (p-3)/2
    unsigned irr = 0;
    unsigned predicted_ord_p_total = 0;
    PSylowShape classification = PSylowShape::ElementaryRankFloor;
};

/// Checks every valuation clause relating ord S_{phi^j} and ord B'_{2,phi^j};
/// any violation is a hard error. Starts at precision k, doubling on
/// insufficient precision up to a cap.
ValuationReport verify_valuation_clauses(std::uint64_t p, unsigned k = 4);

/// Applies the p-Sylow classification rules to the report and cross-validates
/// the prediction against the p-parts of the SNF elementary divisors;
/// any mismatch is a hard error.
PSylowShape classify(std::uint64_t p, ValuationReport& report, const ClassGroupStructure& snf);

/// B'_{2,phi^j} = b_{4j+2}/(2j+1) mod p. The (p = 3 mod 4, j = (p-3)/4) case
/// is rejected: there B' has negative valuation.
bool vonstaudt_congruence_check(std::uint64_t p, unsigned j);

/// For p = 1 mod 4: every prime q >= 7 with q not dividing p(p^2-1) must
/// appear with even exponent. Rejects p = 3 mod 4.
bool q_parity_check(std::uint64_t p, const FactoredInteger& factored);

} // namespace nscartan
