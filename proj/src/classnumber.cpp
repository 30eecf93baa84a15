#include "nscartan/classnumber.hpp"

#include <numeric>
#include <sstream>

#include "nscartan/errors.hpp"
#include "nscartan/resultant.hpp"

namespace nscartan {

unsigned ClassGroupStructure::p_valuation() const {
    unsigned v = 0;
    mpz_class rest = order;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(p))) {
        rest /= static_cast<unsigned long>(p);
        ++v;
    }
    return v;
}

std::vector<unsigned> ClassGroupStructure::p_part_exponents() const {
    std::vector<unsigned> out;
    for (const auto& d : elementary_divisors) {
        unsigned v = 0;
        mpz_class rest = d;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(p))) {
            rest /= static_cast<unsigned long>(p);
            ++v;
        }
        if (v > 0) out.push_back(v);
    }
    return out;
}

mpq_class order_by_resultant(const ClassSumPolynomial& csp) {
    const std::uint64_t p = csp.p, m = csp.m;
    // Phi(X) = (X^m - 1)/(X - 1) = 1 + X + ... + X^{m-1}
    PolyZ phi(static_cast<std::size_t>(m), mpz_class(1));
    const mpz_class res = resultant(phi, csp.scaled_coeffs);
    if (res == 0)
        throw HardError("order_by_resultant: vanishing product, quotient not finite");

    mpz_class dpow;
    mpz_pow_ui(dpow.get_mpz_t(), csp.denominator.get_mpz_t(), static_cast<unsigned long>(m - 1));
    mpq_class prod(res, dpow);
    prod.canonicalize();

    const unsigned long gcd12 = std::gcd<std::uint64_t>(12, p + 1);
    mpq_class constant(24, (p - 1) * gcd12);
    constant.canonicalize();

    mpq_class order = abs(constant * prod);
    order.canonicalize();
    return order;
}

ClassGroupStructure order_by_snf(const MatZ& lattice, std::uint64_t m,
                                 const std::optional<mpz_class>& expected_order) {
    if (lattice.rows() != m || lattice.cols() != m - 1)
        throw std::invalid_argument("order_by_snf: lattice must be m x (m-1)");

    if (m > 1 && rank_mod_p(lattice, (1ull << 31) - 1) < m - 1) {
        // a single unlucky prime is possible in principle; make sure before failing
        if (rank_mod_p(lattice, 2147483629ull) < m - 1) {
            SmithResult probe = smith_normal_form(lattice);
            if (probe.rank < m - 1)
                throw HardError("order_by_snf: lattice is rank deficient, quotient is infinite");
        }
    }

    if (expected_order && m >= 2) {
        // square submatrix dropping the d*theta row; its determinant is a
        // maximal minor, hence a multiple of the lattice index
        MatZ square(static_cast<std::size_t>(m) - 1, static_cast<std::size_t>(m) - 1);
        for (std::size_t i = 0; i + 1 < m; ++i)
            for (std::size_t j = 0; j + 1 < m; ++j) square(i, j) = lattice(i + 1, j);
        const mpz_class det = abs(modular_det(square));
        if (det != 0 && !mpz_divisible_p(det.get_mpz_t(), expected_order->get_mpz_t())) {
            std::ostringstream os;
            os << "order_by_snf: modular-determinant precheck failed: expected order "
               << expected_order->get_str() << " does not divide minor " << det.get_str();
            throw HardError(os.str());
        }
    }

    const SmithResult snf = smith_normal_form(lattice);
    if (snf.rank < m - 1)
        throw HardError("order_by_snf: lattice is rank deficient, quotient is infinite");

    ClassGroupStructure out;
    out.order = snf.order;
    out.elementary_divisors = snf.elementary_divisors;
    return out;
}

ClassGroupStructure compute_class_group(std::uint64_t p, const ComputeConfig& cfg) {
    if (p < 5 || !is_certified_prime(mpz_class(static_cast<unsigned long>(p))))
        throw std::invalid_argument("compute_class_group: p must be a prime >= 5");

    const Fp2Context ctx(p);
    const ClassSumPolynomial csp = class_sums(ctx);

    const mpq_class order_res = order_by_resultant(csp);
    if (order_res.get_den() != 1) {
        std::ostringstream os;
        os << "compute_class_group: resultant-path order is not an integer: "
           << order_res.get_str();
        throw HardError(os.str());
    }
    const mpz_class expected = order_res.get_num();

    const MatZ lattice = stickelberger_lattice(csp, ctx.d());
    ClassGroupStructure result = order_by_snf(lattice, ctx.m(), expected);
    result.p = p;

    if (result.order != expected) {
        std::ostringstream os;
        os << "compute_class_group: independent paths disagree for p=" << p
           << ": resultant=" << expected.get_str() << " snf=" << result.order.get_str()
           << " divisors=[";
        for (const auto& d : result.elementary_divisors) os << d.get_str() << ",";
        os << "]";
        throw HardError(os.str());
    }
    result.method_agreement = true;
    result.factored_order = factorize(result.order, cfg.factoring);
    return result;
}

} // namespace nscartan
