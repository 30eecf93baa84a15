#include "nscartan/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "nscartan/bernoulli.hpp"

namespace nscartan {

namespace {

// smallest nonzero |entry| in the trailing submatrix starting at (s, s)
bool find_pivot(const MatZ& a, std::size_t s, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    mpz_class best;
    for (std::size_t i = s; i < a.rows(); ++i) {
        for (std::size_t j = s; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            mpz_class v = abs(a(i, j));
            if (!found || v < best) {
                best = v;
                pi = i;
                pj = j;
                found = true;
            }
        }
    }
    return found;
}

void swap_rows(MatZ& a, std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < a.cols(); ++k) std::swap(a(i, k), a(j, k));
}

void swap_cols(MatZ& a, std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < a.rows(); ++k) std::swap(a(k, i), a(k, j));
}

} // namespace

SmithResult smith_normal_form(MatZ a) {
    const std::size_t n = std::min(a.rows(), a.cols());
    std::vector<mpz_class> diag;

    for (std::size_t s = 0; s < n; ++s) {
        std::size_t pi = s, pj = s;
        if (!find_pivot(a, s, pi, pj)) break; // rest is zero
        swap_rows(a, s, pi);
        swap_cols(a, s, pj);

        for (;;) {
            // clear column s below the pivot
            bool dirty = false;
            for (std::size_t i = s + 1; i < a.rows(); ++i) {
                if (a(i, s) == 0) continue;
                mpz_class q = a(i, s) / a(s, s); // truncated division keeps remainders small
                if (q != 0)
                    for (std::size_t k = s; k < a.cols(); ++k) a(i, k) -= q * a(s, k);
                if (a(i, s) != 0) dirty = true;
            }
            // clear row s right of the pivot
            for (std::size_t j = s + 1; j < a.cols(); ++j) {
                if (a(s, j) == 0) continue;
                mpz_class q = a(s, j) / a(s, s);
                if (q != 0)
                    for (std::size_t k = s; k < a.rows(); ++k) a(k, j) -= q * a(k, s);
                if (a(s, j) != 0) dirty = true;
            }
            if (!dirty) break;
            // remainders survived; move the new smallest entry into the pivot
            std::size_t qi = s, qj = s;
            find_pivot(a, s, qi, qj);
            swap_rows(a, s, qi);
            swap_cols(a, s, qj);
        }

        // divisibility sweep: pivot must divide every later entry
        for (;;) {
            bool fixed = true;
            for (std::size_t i = s + 1; i < a.rows() && fixed; ++i) {
                for (std::size_t j = s + 1; j < a.cols() && fixed; ++j) {
                    if (a(i, j) % a(s, s) != 0) {
                        // fold row i into row s and redo the elimination
                        for (std::size_t k = s; k < a.cols(); ++k) a(s, k) += a(i, k);
                        fixed = false;
                    }
                }
            }
            if (fixed) break;
            for (;;) {
                bool dirty = false;
                for (std::size_t i = s + 1; i < a.rows(); ++i) {
                    if (a(i, s) == 0) continue;
                    mpz_class q = a(i, s) / a(s, s);
                    if (q != 0)
                        for (std::size_t k = s; k < a.cols(); ++k) a(i, k) -= q * a(s, k);
                    if (a(i, s) != 0) dirty = true;
                }
                for (std::size_t j = s + 1; j < a.cols(); ++j) {
                    if (a(s, j) == 0) continue;
                    mpz_class q = a(s, j) / a(s, s);
                    if (q != 0)
                        for (std::size_t k = s; k < a.rows(); ++k) a(k, j) -= q * a(k, s);
                    if (a(s, j) != 0) dirty = true;
                }
                if (!dirty) break;
                std::size_t qi = s, qj = s;
                find_pivot(a, s, qi, qj);
                swap_rows(a, s, qi);
                swap_cols(a, s, qj);
            }
        }

        mpz_class d = abs(a(s, s));
        diag.push_back(d);
    }

    SmithResult res;
    res.diagonal = std::move(diag);
    res.rank = res.diagonal.size();
    for (const auto& d : res.diagonal) {
        res.order *= d;
        if (d > 1) res.elementary_divisors.push_back(d);
    }
    return res;
}

mpz_class bareiss_det(MatZ a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("bareiss_det: square matrix required");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    mpz_class prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && a(swap_row, k) == 0) ++swap_row;
            if (swap_row == n) return 0;
            swap_rows(a, k, swap_row);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_class q;
                mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = q;
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign > 0 ? a(n - 1, n - 1) : mpz_class(-a(n - 1, n - 1));
}

namespace {

std::uint64_t det_mod_p(const MatZ& a, std::uint64_t q) {
    const std::size_t n = a.rows();
    std::vector<std::vector<std::uint64_t>> m(n, std::vector<std::uint64_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = mpz_fdiv_ui(a(i, j).get_mpz_t(), static_cast<unsigned long>(q));
    std::uint64_t det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            std::swap(m[piv], m[k]);
            det = q - det;
            if (det == q) det = 0;
        }
        det = mulmod_u64(det, m[k][k], q);
        const std::uint64_t inv = invmod_u64(m[k][k], q);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            const std::uint64_t f = mulmod_u64(m[i][k], inv, q);
            for (std::size_t j = k; j < n; ++j) {
                const std::uint64_t sub = mulmod_u64(f, m[k][j], q);
                m[i][j] = (m[i][j] + q - sub) % q;
            }
        }
    }
    return det;
}

bool is_small_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace

mpz_class modular_det(const MatZ& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("modular_det: square matrix required");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    // Hadamard bound: prod_i ||row_i||_2
    mpq_class bound2(1);
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class s(0);
        for (std::size_t j = 0; j < n; ++j) s += a(i, j) * a(i, j);
        bound2 *= mpq_class(s);
    }
    mpz_class bound;
    mpz_sqrt(bound.get_mpz_t(), bound2.get_num().get_mpz_t());
    bound += 1;

    mpz_class modulus(1), result(0);
    std::uint64_t q = (1ull << 31) - 1; // walk down from 2^31
    while (modulus <= 2 * bound) {
        while (!is_small_prime(q)) --q;
        const std::uint64_t d = det_mod_p(a, q);
        // CRT combine
        mpz_class qz(static_cast<unsigned long>(q));
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), qz.get_mpz_t()) == 0)
            throw std::logic_error("modular_det: CRT moduli not coprime");
        mpz_class delta = (mpz_class(static_cast<unsigned long>(d)) - result % qz) % qz;
        if (delta < 0) delta += qz;
        result += modulus * ((delta * inv) % qz);
        modulus *= qz;
        --q;
    }
    // symmetric lift
    if (result > modulus / 2) result -= modulus;
    return result;
}

std::size_t rank_mod_p(const MatZ& a, std::uint64_t q) {
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<std::vector<std::uint64_t>> m(rows, std::vector<std::uint64_t>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m[i][j] = mpz_fdiv_ui(a(i, j).get_mpz_t(), static_cast<unsigned long>(q));
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        const std::uint64_t inv = invmod_u64(m[rank][col], q);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (m[i][col] == 0) continue;
            const std::uint64_t f = mulmod_u64(m[i][col], inv, q);
            for (std::size_t j = col; j < cols; ++j) {
                const std::uint64_t sub = mulmod_u64(f, m[rank][j], q);
                m[i][j] = (m[i][j] + q - sub) % q;
            }
        }
        ++rank;
    }
    return rank;
}

} // namespace nscartan
