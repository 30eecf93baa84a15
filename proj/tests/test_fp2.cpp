#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "nscartan/bernoulli.hpp"
#include "nscartan/fp2.hpp"

using namespace nscartan;

TEST_CASE("context construction basics") {
    const Fp2Context c5(5);
    CHECK(c5.nonresidue() == 2);
    CHECK(c5.m() == 2);

    const Fp2Context c7(7);
    CHECK(c7.nonresidue() == 3);
    CHECK(c7.m() == 3);

    CHECK_THROWS_AS(Fp2Context(9), std::invalid_argument);
    CHECK_THROWS_AS(Fp2Context(3), std::invalid_argument);
}

TEST_CASE("generator has full order p^2 - 1") {
    for (std::uint64_t p : {5, 7, 11, 23}) {
        const Fp2Context ctx(p);
        const std::uint64_t n = p * p - 1;
        CHECK(ctx.pow(ctx.generator(), n) == Fp2Element{1, 0});
        for (std::uint64_t q = 2; q <= n; ++q) {
            if (n % q != 0) continue;
            bool isprime = true;
            for (std::uint64_t d = 2; d * d <= q; ++d)
                if (q % d == 0) isprime = false;
            if (!isprime) continue;
            CHECK(ctx.pow(ctx.generator(), n / q) != Fp2Element{1, 0});
        }
    }
}

TEST_CASE("trace and norm closed forms") {
    const Fp2Context ctx(7);
    CHECK(ctx.trace({1, 0}) == 2);
    CHECK(ctx.trace({0, 1}) == 0);
    CHECK(ctx.trace({3, 2}) == 6);
    CHECK(ctx.norm({1, 0}) == 1);
    CHECK(ctx.norm({0, 1}) == (7 - ctx.nonresidue()) % 7); // -r mod p
    CHECK_THROWS_AS(ctx.norm({0, 0}), std::invalid_argument);
}

TEST_CASE("norm equals x^{p+1}: exhaustive for p <= 13") {
    for (std::uint64_t p : {5, 7, 11, 13}) {
        const Fp2Context ctx(p);
        for (std::uint64_t a = 0; a < p; ++a)
            for (std::uint64_t b = 0; b < p; ++b) {
                if (a == 0 && b == 0) continue;
                const Fp2Element x{a, b};
                const Fp2Element xp1 = ctx.pow(x, p + 1);
                CHECK(xp1.b == 0);
                CHECK(ctx.norm(x) == xp1.a);
            }
    }
}

TEST_CASE("norm equals x^{p+1}: 1000 random elements at p = 101") {
    const std::uint64_t p = 101;
    const Fp2Context ctx(p);
    std::uint64_t state = 0x9E3779B97F4A7C15ull;
    auto next = [&] {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    for (int t = 0; t < 1000; ++t) {
        const Fp2Element x{next() % p, next() % p};
        if (x == Fp2Element{0, 0}) continue;
        const Fp2Element xp1 = ctx.pow(x, p + 1);
        CHECK(xp1.b == 0);
        CHECK(ctx.norm(x) == xp1.a);
    }
}

TEST_CASE("norm of the generator generates F_p^*") {
    for (std::uint64_t p : {5, 7, 11, 13, 17, 19, 23}) {
        const Fp2Context ctx(p);
        const std::uint64_t w = ctx.w_rep();
        std::set<std::uint64_t> seen;
        std::uint64_t cur = 1;
        for (std::uint64_t i = 0; i + 1 < p; ++i) {
            seen.insert(cur);
            cur = mulmod_u64(cur, w, p);
        }
        CHECK(seen.size() == p - 1);
    }
}

TEST_CASE("half system covers every +-class exactly once") {
    for (std::uint64_t p : {5, 7, 11}) {
        const Fp2Context ctx(p);
        const auto hs = ctx.half_system();
        CHECK(hs.size() == (p * p - 1) / 2);
        std::set<std::pair<std::uint64_t, std::uint64_t>> all;
        for (const auto& x : hs) {
            all.insert({x.a, x.b});
            all.insert({(p - x.a) % p, (p - x.b) % p});
        }
        CHECK(all.size() == p * p - 1);
    }
}

TEST_CASE("norm class indexing") {
    const Fp2Context ctx(23);
    CHECK(ctx.norm_class_index({1, 0}) == 0);
    CHECK(ctx.norm_class_index(ctx.generator()) == 1);
    // N(g^{m+1}) lands back in class 1: w^{m+1} = w in H
    CHECK(ctx.norm_class_index(ctx.pow(ctx.generator(), ctx.m() + 1)) == 1);
}

TEST_CASE("each norm-class fiber of the half system has p+1 elements") {
    for (std::uint64_t p : {5, 7, 11, 13, 17, 19, 23}) {
        const Fp2Context ctx(p);
        std::map<std::uint64_t, unsigned> fiber;
        for (const auto& x : ctx.half_system()) ++fiber[ctx.norm_class_index(x)];
        CHECK(fiber.size() == ctx.m());
        for (const auto& [i, count] : fiber) CHECK(count == p + 1);
    }
}

TEST_CASE("B2 of the normalized trace is +-class invariant") {
    const std::uint64_t p = 23;
    const Fp2Context ctx(p);
    for (std::uint64_t a = 0; a < p; ++a)
        for (std::uint64_t b = 0; b < p; ++b) {
            if (a == 0 && b == 0) continue;
            const std::uint64_t half_tr = a; // Tr/2 of a + bt
            const std::uint64_t neg = (p - a) % p;
            const mpq_class u1 = make_rational(static_cast<long>(half_tr), static_cast<long>(p));
            const mpq_class u2 = make_rational(static_cast<long>(neg), static_cast<long>(p));
            CHECK(bernoulli_poly2(u1) == bernoulli_poly2(u2));
        }
}

TEST_CASE("d constant") {
    CHECK(Fp2Context(5).d() == 2);   // gcd(12,6)=6
    CHECK(Fp2Context(7).d() == 3);   // gcd(12,8)=4
    CHECK(Fp2Context(11).d() == 1);  // gcd(12,12)=12
    CHECK(Fp2Context(23).d() == 1);  // gcd(12,24)=12
    CHECK(Fp2Context(13).d() == 6);  // gcd(12,14)=2
}
