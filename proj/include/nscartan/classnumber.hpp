#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "nscartan/factorization.hpp"
#include "nscartan/linalg.hpp"
#include "nscartan/stickelberger.hpp"

namespace nscartan {

/// Order and abelian-group structure of the cuspidal divisor class group,
/// carrying the agreement flag of the two independent computation paths.
struct ClassGroupStructure {
    std::uint64_t p = 0;
    mpz_class order;
    std::vector<mpz_class> elementary_divisors; // each divides the next
    FactoredInteger factored_order;
    bool method_agreement = false;

    /// ord_p(order).
    unsigned p_valuation() const;
    /// Multiset of p-power exponents of the elementary divisors (ascending).
    std::vector<unsigned> p_part_exponents() const;
};

/// Product-formula order: 24/((p-1) gcd(12,p+1)) * prod_j f(zeta_m^j), the
/// product arranged as Res((X^m-1)/(X-1), F)/D^{m-1}. Returns the exact
/// rational absolute value; for p = 1 mod 4 the raw product can be negative
/// while the group order is its absolute value. A zero product (infinite
/// quotient) is a hard error.
mpq_class order_by_resultant(const ClassSumPolynomial& csp);

/// Elementary divisors of R_0/(R_d theta) via Smith normal form of the
/// lattice matrix. Rank deficiency (infinite quotient) is a hard error.
/// When the expected order from the resultant path is supplied, a
/// modular-determinant precheck runs first: the expected order must divide
/// the determinant of the square submatrix dropping the d*theta row.
ClassGroupStructure order_by_snf(const MatZ& lattice, std::uint64_t m,
                                 const std::optional<mpz_class>& expected_order = std::nullopt);

struct ComputeConfig {
    FactorConfig factoring{};
};

/// Runs both paths, reconciles them, and factors the order. Disagreement
/// between the paths is a hard error with both values in the message.
ClassGroupStructure compute_class_group(std::uint64_t p, const ComputeConfig& cfg = {});

} // namespace nscartan
