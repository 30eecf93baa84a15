#include "nscartan/stickelberger.hpp"

#include <stdexcept>

#include "nscartan/bernoulli.hpp"
#include "nscartan/errors.hpp"

namespace nscartan {

mpq_class GroupRingElement::degree() const {
    mpq_class acc(0);
    for (const auto& c : coeffs_) acc += c;
    acc.canonicalize();
    return acc;
}

bool GroupRingElement::is_integral() const {
    for (const auto& c : coeffs_)
        if (c.get_den() != 1) return false;
    return true;
}

GroupRingElement GroupRingElement::one(std::uint64_t p, std::uint64_t m) {
    GroupRingElement e(p, m);
    e.set_coefficient(0, mpq_class(1));
    return e;
}

GroupRingElement GroupRingElement::basis(std::uint64_t p, std::uint64_t m, std::uint64_t i) {
    GroupRingElement e(p, m);
    e.set_coefficient(i, mpq_class(1));
    return e;
}

GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
    return groupring_mul(a, b);
}

GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b) {
    if (a.p_ != b.p_ || a.m_ != b.m_)
        throw std::invalid_argument("group ring: mismatched contexts");
    GroupRingElement out(a.p_, a.m_);
    for (std::uint64_t i = 0; i < a.m_; ++i) {
        mpq_class v = a.coefficient(i) - b.coefficient(i);
        v.canonicalize();
        out.set_coefficient(i, std::move(v));
    }
    return out;
}

GroupRingElement operator*(const mpq_class& s, const GroupRingElement& a) {
    GroupRingElement out(a.p_, a.m_);
    for (std::uint64_t i = 0; i < a.m_; ++i) {
        mpq_class v = s * a.coefficient(i);
        v.canonicalize();
        out.set_coefficient(i, std::move(v));
    }
    return out;
}

GroupRingElement groupring_mul(const GroupRingElement& a, const GroupRingElement& b) {
    if (a.p() != b.p() || a.m() != b.m())
        throw std::invalid_argument("groupring_mul: mismatched contexts");
    const std::uint64_t m = a.m();
    GroupRingElement out(a.p(), m);
    for (std::uint64_t i = 0; i < m; ++i) {
        if (a.coefficient(i) == 0) continue;
        for (std::uint64_t j = 0; j < m; ++j) {
            if (b.coefficient(j) == 0) continue;
            mpq_class v = out.coefficient((i + j) % m) + a.coefficient(i) * b.coefficient(j);
            v.canonicalize();
            out.set_coefficient((i + j) % m, std::move(v));
        }
    }
    return out;
}

mpq_class ClassSumPolynomial::coefficient(std::uint64_t i) const {
    mpq_class v(scaled_coeffs[static_cast<std::size_t>(i)], denominator);
    v.canonicalize();
    return v;
}

mpq_class ClassSumPolynomial::value_at_one() const {
    mpz_class acc(0);
    for (const auto& g : scaled_coeffs) acc += g;
    mpq_class v(acc, denominator);
    v.canonicalize();
    return v;
}

ClassSumPolynomial class_sums(const Fp2Context& ctx) {
    const std::uint64_t p = ctx.p(), m = ctx.m();
    std::vector<mpq_class> c(static_cast<std::size_t>(m), mpq_class(0));
    for (const Fp2Element& x : ctx.half_system()) {
        const std::uint64_t i = ctx.norm_class_index(x);
        // u = <(Tr(x)/2)/p>; Tr(x)/2 is just the a-coordinate
        const mpq_class u = make_rational(static_cast<long>(x.a), static_cast<long>(p));
        c[static_cast<std::size_t>(i)] += bernoulli_poly2(u);
    }
    ClassSumPolynomial csp;
    csp.p = p;
    csp.m = m;
    const mpq_class half_p = make_rational(static_cast<long>(p), 2);
    csp.denominator = 12 * mpz_class(static_cast<unsigned long>(p));
    csp.scaled_coeffs.reserve(static_cast<std::size_t>(m));
    for (auto& ci : c) {
        mpq_class f = half_p * ci; // (p/2) c_i, denominator divides 12p
        f.canonicalize();
        mpq_class scaled = f * mpq_class(csp.denominator);
        scaled.canonicalize();
        if (scaled.get_den() != 1)
            throw HardError("class_sums: coefficient denominator does not divide 12p");
        csp.scaled_coeffs.push_back(scaled.get_num());
    }
    // normalize D to the actual common denominator
    mpz_class g = csp.denominator;
    for (const auto& gi : csp.scaled_coeffs) g = gcd(g, gi);
    if (g > 1) {
        for (auto& gi : csp.scaled_coeffs) gi /= g;
        csp.denominator /= g;
    }
    return csp;
}

GroupRingElement theta_from_class_sums(const ClassSumPolynomial& csp) {
    GroupRingElement th(csp.p, csp.m);
    for (std::uint64_t i = 0; i < csp.m; ++i) {
        const std::uint64_t pos = (csp.m - i) % csp.m; // w^{-i}
        mpq_class v = th.coefficient(pos) + csp.coefficient(i);
        v.canonicalize();
        th.set_coefficient(pos, std::move(v));
    }
    return th;
}

GroupRingElement theta(const Fp2Context& ctx) { return theta_from_class_sums(class_sums(ctx)); }

IdealBasis ideal_basis(const Fp2Context& ctx, IdealKind kind) {
    const std::uint64_t p = ctx.p(), m = ctx.m();
    IdealBasis basis{kind, ctx.d(), {}};
    if (kind == IdealKind::Rd) {
        GroupRingElement d1(p, m);
        d1.set_coefficient(0, mpq_class(static_cast<unsigned long>(ctx.d())));
        basis.generators.push_back(std::move(d1));
    }
    for (std::uint64_t i = 1; i < m; ++i) {
        GroupRingElement wi = GroupRingElement::basis(p, m, i) - GroupRingElement::one(p, m);
        basis.generators.push_back(std::move(wi));
    }
    return basis;
}

namespace {

// coordinates of a degree-0 element in the basis {w^j - 1 : 1 <= j < m}
std::vector<mpq_class> degree_zero_coordinates(const GroupRingElement& x) {
    if (x.degree() != 0)
        throw HardError("stickelberger_lattice: generator has nonzero degree");
    std::vector<mpq_class> coords;
    coords.reserve(static_cast<std::size_t>(x.m()) - 1);
    for (std::uint64_t j = 1; j < x.m(); ++j) coords.push_back(x.coefficient(j));
    return coords;
}

} // namespace

MatZ stickelberger_lattice(const ClassSumPolynomial& csp, unsigned d) {
    const std::uint64_t p = csp.p, m = csp.m;
    const GroupRingElement th = theta_from_class_sums(csp);

    std::vector<GroupRingElement> gens;
    gens.reserve(static_cast<std::size_t>(m));
    gens.push_back(mpq_class(static_cast<unsigned long>(d)) * th);
    for (std::uint64_t i = 1; i < m; ++i) {
        const GroupRingElement wi_minus_1 =
            GroupRingElement::basis(p, m, i) - GroupRingElement::one(p, m);
        gens.push_back(groupring_mul(wi_minus_1, th));
    }

    MatZ lattice(static_cast<std::size_t>(m), static_cast<std::size_t>(m) - 1);
    for (std::size_t row = 0; row < gens.size(); ++row) {
        const auto coords = degree_zero_coordinates(gens[row]);
        for (std::size_t col = 0; col + 1 < m; ++col) {
            if (coords[col].get_den() != 1)
                throw HardError("stickelberger_lattice: non-integral entry");
            lattice(row, col) = coords[col].get_num();
        }
    }
    return lattice;
}

MatZ stickelberger_lattice(const Fp2Context& ctx) {
    return stickelberger_lattice(class_sums(ctx), ctx.d());
}

} // namespace nscartan
