#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace nscartan {

/// Element a + b*t of F_{p^2} = F_p[t]/(t^2 - r), coordinates in [0, p-1].
struct Fp2Element {
    std::uint64_t a = 0;
    std::uint64_t b = 0;

    friend bool operator==(const Fp2Element&, const Fp2Element&) = default;
    friend auto operator<=>(const Fp2Element&, const Fp2Element&) = default;
};

/// Deterministic model of F_{p^2} together with the +-class bookkeeping of
/// H = (Z/pZ)*/{+-1}: r is the smallest quadratic non-residue, g the
/// lexicographically smallest generator of F*_{p^2}, and w the class of the
/// norm of g, which generates H (cyclic of order m = (p-1)/2).
class Fp2Context {
public:
    /// Builds the context for a prime p >= 5; composite p is rejected.
    explicit Fp2Context(std::uint64_t p);

    std::uint64_t p() const { return p_; }
    std::uint64_t nonresidue() const { return r_; }
    std::uint64_t m() const { return m_; }
    Fp2Element generator() const { return g_; }
    /// Representative in [1, p-1] of the generator w of H (the norm of g).
    std::uint64_t w_rep() const { return w_; }
    /// d = 12 / gcd(12, p+1).
    unsigned d() const { return d_; }

    Fp2Element mul(Fp2Element x, Fp2Element y) const;
    Fp2Element pow(Fp2Element x, std::uint64_t e) const;

    /// Tr(a + b t) = 2a.
    std::uint64_t trace(Fp2Element x) const;
    /// N(a + b t) = a^2 - r b^2 = x^{p+1}; zero input rejected.
    std::uint64_t norm(Fp2Element x) const;

    /// One representative per +-class of F*_{p^2}, the lexicographically
    /// smaller of {x, -x}; exactly (p^2-1)/2 elements.
    std::vector<Fp2Element> half_system() const;

    /// The unique i in [0, m) with class(N(x)) = w^i in H; x must be nonzero.
    std::uint64_t norm_class_index(Fp2Element x) const;
    /// Same, for u already in F*_p.
    std::uint64_t h_index(std::uint64_t u) const;

private:
    Fp2Context(std::uint64_t p, std::uint64_t r);
    friend Fp2Context make_context_with_nonresidue(std::uint64_t p, std::uint64_t r);

    std::uint64_t p_, r_, m_, w_;
    unsigned d_;
    Fp2Element g_;
    std::vector<std::uint64_t> w_index_; // w_index_[u-1] = i with class(u) = w^i
};

/// Variant used by the model-independence tests: same structure, but with a
/// caller-chosen non-residue.
Fp2Context make_context_with_nonresidue(std::uint64_t p, std::uint64_t r);

} // namespace nscartan
