#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "nscartan/fp2.hpp"
#include "nscartan/linalg.hpp"

namespace nscartan {

/// Element of Q[H], H cyclic of order m generated by w. coefficient(i) is the
/// coefficient of w^i; multiplication is cyclic convolution of length m.
class GroupRingElement {
public:
    GroupRingElement(std::uint64_t p, std::uint64_t m)
        : p_(p), m_(m), coeffs_(static_cast<std::size_t>(m)) {}

    std::uint64_t p() const { return p_; }
    std::uint64_t m() const { return m_; }

    const mpq_class& coefficient(std::uint64_t i) const { return coeffs_[idx(i)]; }
    void set_coefficient(std::uint64_t i, mpq_class v) { coeffs_[idx(i)] = std::move(v); }

    /// deg(sum b_j w^j) = sum b_j.
    mpq_class degree() const;

    /// True when every coefficient is an integer.
    bool is_integral() const;

    static GroupRingElement one(std::uint64_t p, std::uint64_t m);
    /// w^i as a ring element.
    static GroupRingElement basis(std::uint64_t p, std::uint64_t m, std::uint64_t i);

    friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b);
    friend GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b);
    friend GroupRingElement operator*(const mpq_class& s, const GroupRingElement& a);
    friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;

private:
    std::size_t idx(std::uint64_t i) const { return static_cast<std::size_t>(i % m_); }

    std::uint64_t p_, m_;
    std::vector<mpq_class> coeffs_;
};

/// Cyclic convolution in Q[H]; contexts must match.
GroupRingElement groupring_mul(const GroupRingElement& a, const GroupRingElement& b);

/// The class-sum polynomial f(X) = (1/D) sum g_i X^i with
/// f(zeta_m^j) = (p/2) B_{2, omega^{(2p+2) j}}: coefficient i collects the
/// B_2 values of normalized traces over the norm-class-i fiber of the half
/// system, scaled by p/2.
struct ClassSumPolynomial {
    std::uint64_t p = 0;
    std::uint64_t m = 0;
    std::vector<mpz_class> scaled_coeffs; // g_i
    mpz_class denominator{1};             // D, divides 12p

    /// (p/2) c_i as an exact rational.
    mpq_class coefficient(std::uint64_t i) const;
    /// f(1) = sum of coefficients.
    mpq_class value_at_one() const;
};

/// One pass over the half system; exact arithmetic throughout.
ClassSumPolynomial class_sums(const Fp2Context& ctx);

/// The Stickelberger element: coefficient of w^{-i} is (p/2) c_i.
/// deg(theta) = 0 and 12*theta integral are checked by callers/tests, not
/// assumed here.
GroupRingElement theta(const Fp2Context& ctx);
GroupRingElement theta_from_class_sums(const ClassSumPolynomial& csp);

enum class IdealKind { R0, Rd };

/// Z-basis data for R_0 (degree zero) or R_d (degree divisible by d).
struct IdealBasis {
    IdealKind kind;
    unsigned d; // 12 / gcd(12, p+1)
    std::vector<GroupRingElement> generators;
};

IdealBasis ideal_basis(const Fp2Context& ctx, IdealKind kind);

/// The m generators {d*theta} u {(w^i - 1) theta, 1 <= i < m} of R_d*theta,
/// written in the basis {w^j - 1 : 1 <= j < m} of R_0. Every generator has
/// degree 0 and integral coordinates; violations are hard errors (they would
/// mean the construction is broken, not the input).
MatZ stickelberger_lattice(const Fp2Context& ctx);
MatZ stickelberger_lattice(const ClassSumPolynomial& csp, unsigned d);

} // namespace nscartan
