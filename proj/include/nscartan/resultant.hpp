#pragma once

#include <vector>

#include <gmpxx.h>

namespace nscartan {

/// Polynomial over Z as a coefficient vector, index = power of X.
using PolyZ = std::vector<mpz_class>;

/// Degree of a (possibly unnormalized) coefficient vector; -1 for zero.
long poly_degree(const PolyZ& a);

/// Res(a, b) by the subresultant (fraction-free) pseudo-remainder sequence.
mpz_class resultant(PolyZ a, PolyZ b);

} // namespace nscartan
