#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nscartan/classnumber.hpp"
#include "nscartan/errors.hpp"

using namespace nscartan;

namespace {

struct Frozen {
    std::uint64_t p;
    const char* order;
    std::vector<long> divisors;
};

// computed two independent ways before being frozen here
const std::vector<Frozen> frozen_small = {
    {5, "1", {}},
    {7, "1", {}},
    {11, "11", {11}},
    {13, "1183", {13, 91}},
    {17, "235824", {17, 34, 408}},
    {19, "10020999", {19, 19, 27759}},
    {23, "10404768221", {23, 23, 23, 855163}},
};

} // namespace

TEST_CASE("order and elementary divisors for small primes") {
    for (const auto& f : frozen_small) {
        const ClassGroupStructure c = compute_class_group(f.p);
        CHECK(c.method_agreement);
        CHECK(c.order == mpz_class(f.order));
        REQUIRE(c.elementary_divisors.size() == f.divisors.size());
        for (std::size_t i = 0; i < f.divisors.size(); ++i)
            CHECK(c.elementary_divisors[i] == f.divisors[i]);
        CHECK(c.factored_order.value == c.order);
        CHECK(c.factored_order.reassemble() == c.order);

        // divisibility chain
        for (std::size_t i = 0; i + 1 < c.elementary_divisors.size(); ++i)
            CHECK(mpz_divisible_p(c.elementary_divisors[i + 1].get_mpz_t(),
                                  c.elementary_divisors[i].get_mpz_t()));
    }
}

TEST_CASE("resultant path alone matches the SNF path at p=5") {
    const Fp2Context ctx(5);
    const ClassSumPolynomial csp = class_sums(ctx);
    const mpq_class by_res = order_by_resultant(csp);
    CHECK(by_res.get_den() == 1);
    const ClassGroupStructure by_snf =
        order_by_snf(stickelberger_lattice(csp, ctx.d()), ctx.m());
    CHECK(by_res.get_num() == by_snf.order);
}

TEST_CASE("table row p=23 via the resultant path") {
    const ClassSumPolynomial csp = class_sums(Fp2Context(23));
    const mpq_class order = order_by_resultant(csp);
    CHECK(order.get_den() == 1);
    CHECK(order.get_num() == mpz_class("10404768221")); // 23^4 * 37181
}

TEST_CASE("p-valuation floor invariant for regular primes") {
    for (const auto& f : frozen_small) {
        const ClassGroupStructure c = compute_class_group(f.p);
        const unsigned floor_rank = static_cast<unsigned>(f.p / 4) - 1;
        CHECK(c.p_valuation() == floor_rank); // these p are all regular
    }
}

TEST_CASE("p-part exponents") {
    const ClassGroupStructure c = compute_class_group(23);
    CHECK(c.p_part_exponents() == std::vector<unsigned>{1, 1, 1, 1});
}

TEST_CASE("modular-determinant precheck rejects a wrong expected order") {
    const Fp2Context ctx(13);
    const MatZ lat = stickelberger_lattice(ctx);
    const ClassGroupStructure good = order_by_snf(lat, ctx.m(), mpz_class(1183));
    CHECK(good.order == 1183);
    CHECK_THROWS_AS(order_by_snf(lat, ctx.m(), mpz_class(1181)), HardError);
}

TEST_CASE("rank deficiency is an explicit hard error") {
    // 3 generators of a rank-1 sublattice of Z^2: infinite quotient
    MatZ bad(3, 2);
    bad(0, 0) = 1;
    bad(0, 1) = 2;
    bad(1, 0) = 2;
    bad(1, 1) = 4;
    bad(2, 0) = 3;
    bad(2, 1) = 6;
    CHECK_THROWS_AS(order_by_snf(bad, 3), HardError);
}

TEST_CASE("invalid input") {
    CHECK_THROWS_AS(compute_class_group(4), std::invalid_argument);
    CHECK_THROWS_AS(compute_class_group(2), std::invalid_argument);
}
