#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

namespace nscartan {

/// Dense matrix over Z, row major.
class MatZ {
public:
    MatZ() = default;
    MatZ(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    mpz_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const mpz_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<mpz_class> data_;
};

struct SmithResult {
    std::vector<mpz_class> diagonal;            // all nonzero d_i, divisibility chain
    std::vector<mpz_class> elementary_divisors; // the d_i > 1
    std::size_t rank = 0;
    mpz_class order{1}; // product of the nonzero diagonal
};

/// Smith normal form over Z. Smallest-nonzero-entry pivoting with periodic
/// row/column gcd reduction to keep intermediate entries small.
SmithResult smith_normal_form(MatZ a);

/// Determinant by fraction-free (Bareiss) elimination.
mpz_class bareiss_det(MatZ a);

/// Determinant by CRT over word-size primes with a Hadamard bound.
mpz_class modular_det(const MatZ& a);

/// Rank of a mod q (q an odd word-size prime), by Gaussian elimination.
std::size_t rank_mod_p(const MatZ& a, std::uint64_t q);

} // namespace nscartan
