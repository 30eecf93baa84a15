#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "nscartan/fp2.hpp"

namespace nscartan {

// Working precision for the numeric verification layer. Extended double
// keeps the compounded error of ~(p-3)/2-factor products far below the
// documented tolerances for p up to a few hundred.
using Real = long double;
using Cplx = std::complex<Real>;

/// Hurwitz zeta zeta(s, u) for u in (0, 1], s != 1, by Euler-Maclaurin with
/// the shift N chosen so the first omitted correction is below tol/10.
/// Valid at negative integer s (the expansion terminates there).
Cplx hurwitz_zeta(Cplx s, Real u, Real tol = 1e-14L);

/// Gamma(z) for complex z (Lanczos, reflection for Re z < 1/2).
Cplx complex_gamma(Cplx z);

/// Discrete-log tables for F*_p and F*_{p^2} against fixed generators, plus
/// root-of-unity lookups. chi_j(alpha) = zeta_m^{j dlog(alpha)} enumerates the
/// characters of F*_{p^2} that factor through the norm; psi_t(n) =
/// zeta_m^{t dlog_p(n)} enumerates the even characters mod p.
class CharacterTable {
public:
    explicit CharacterTable(const Fp2Context& ctx);

    std::uint64_t p() const { return p_; }
    std::uint64_t m() const { return m_; }

    /// chi_j(alpha) for alpha != 0 in F_{p^2}.
    Cplx chi(std::uint64_t j, Fp2Element alpha) const;
    /// conj(chi_j)(alpha).
    Cplx chi_conj(std::uint64_t j, Fp2Element alpha) const;
    /// psi_t(n) for n not divisible by p (an even character mod p).
    Cplx psi(std::uint64_t t, std::uint64_t n) const;
    /// Restriction chi_j|F_p evaluated at n (equals psi with doubled index).
    Cplx chi_restricted(std::uint64_t j, std::uint64_t n) const;
    Cplx chi_restricted_conj(std::uint64_t j, std::uint64_t n) const;
    /// e^{2 pi i n / p}.
    Cplx additive(std::uint64_t n) const;

    /// dlog of alpha mod m (the character exponent).
    std::uint64_t exponent_mod_m(Fp2Element alpha) const;

private:
    std::uint64_t p_, m_;
    std::vector<std::uint32_t> dlog2_mod_m_; // index a*p + b
    std::vector<std::uint32_t> dlogp_mod_m_; // index a-1
    std::vector<Cplx> zeta_m_;               // e^{2 pi i k/m}
    std::vector<Cplx> zeta_p_;               // e^{2 pi i k/p}
};

/// Generalized L-series L(s, chi_j, T) = p^{-s-1} sum_alpha chi(alpha)
/// zeta(s, <T(alpha)/p>), T(alpha) = (1/2)Tr(alpha); the alpha = 0 term
/// vanishes. Trivial j rejected.
Cplx generalized_L(Cplx s, std::uint64_t j, const Fp2Context& ctx, const CharacterTable& tbl,
                   Real tol = 1e-14L);

/// Gauss sum tau(chi_j, T) over F_{p^2}; |tau| = p for nontrivial chi_j.
Cplx gauss_sum(std::uint64_t j, const Fp2Context& ctx, const CharacterTable& tbl);

/// Ordinary Dirichlet L-function of the restriction chi_j|F_p (conjugated on
/// request), via the Hurwitz form p^{-s} sum_a chi(a) zeta(s, a/p). For the
/// trivial restriction this is zeta(s)(1 - p^{-s}).
Cplx restricted_L(Cplx s, std::uint64_t j, const CharacterTable& tbl, bool conj,
                  Real tol = 1e-14L);

/// |LHS - RHS| of the functional equation relating L(s, chi, T) to
/// L(1-s, conj(chi)|F_p), both sides computed independently. chi_j must be
/// nontrivial (even holds automatically for these characters).
Real fe_residual(Cplx s, std::uint64_t j, const Fp2Context& ctx, const CharacterTable& tbl);

struct AnalyticReport {
    std::uint64_t p = 0;
    std::vector<Cplx> L2_values; // L(2, psi_t), t = 1..m-1 (nontrivial even)
    Real product_abs = 0;        // |prod of L2_values|
    bool lower_ok = false;       // full even-character product >= 1 - 1e-9
    bool upper_ok = false;       // parity-specific proof inequality
    Real gauss_moduli_max_err = 0;
    Real fe_max_residual = 0;
    Real pv_max_ratio = 0;
    // exact-order identity: ln(order) against the constant chain
    Real ln_order = 0;
    Real identity_residual = 0; // absolute difference of the two sides
    Real identity_rel_err = 0;  // residual / ln(order)
};

struct GrowthOptions {
    Real tol = 1e-14L;
    bool with_fe = true; // fe and gauss checks cost O(p^2 m)
};

/// Numeric verification of the growth-bound machinery for one prime, given
/// the exact order from the exact-arithmetic path.
AnalyticReport growth_report(std::uint64_t p, const mpz_class& exact_order,
                             const GrowthOptions& opt = {});

} // namespace nscartan
