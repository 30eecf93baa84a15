#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace nscartan {

/// Rational from machine ints, stored in lowest terms with positive denominator.
mpq_class make_rational(long num, long den);

/// n-th Bernoulli number under the convention b_1 = -1/2.
/// Values are computed by the defining recurrence and cached; concurrent
/// readers are safe (the cache is guarded internally).
const mpq_class& bernoulli(unsigned n);

/// Second Bernoulli polynomial B_2(u) = u^2 - u + 1/6, exact.
mpq_class bernoulli_poly2(const mpq_class& u);

/// b_n mod p for all n in [0, p-3], via the integer recurrence reduced mod p.
/// Denominators occurring in the recurrence are invertible because
/// p-1 divides no index in range.
std::vector<std::uint64_t> bernoulli_mod_p(std::uint64_t p);

/// b_n mod p for even n up to 2p-4, reducing indices above p-3 through
/// b_n/n = b_{n-(p-1)}/(n-(p-1)) mod p. Requires p-1 not dividing n.
std::uint64_t bernoulli_mod_p_at(std::uint64_t p, std::uint64_t n,
                                 const std::vector<std::uint64_t>& table);

/// Even n in [2, p-3] with p dividing the numerator of b_n, sorted.
/// Empty exactly when p is regular. Rejects composite p.
std::vector<unsigned> irregular_pairs(std::uint64_t p);

/// irr(p): the number of irregular pairs of p.
unsigned index_of_irregularity(std::uint64_t p);

/// Checks b_{n+p-1}/(n+p-1) = b_n/n mod p. Preconditions: p-1 divides
/// neither n nor n+p-1; violations are rejected.
bool kummer_congruence_check(unsigned n, std::uint64_t p);

// Modular helpers shared by the p-adic and finite-field layers.
std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m);

} // namespace nscartan
