#include <catch_amalgamated.hpp>

#include "ghwlab/field.hpp"

using namespace ghwlab;

TEST_CASE("deterministic construction of small fields") {
    SECTION("F_3: modulus x, alpha = 2") {
        auto F = build_field(3, 1);
        CHECK(F->q == 3);
        CHECK(F->modulus == std::vector<int>{0, 1});
        CHECK(F->alpha == 2);
    }
    SECTION("F_9: modulus x^2+1, alpha = x+1") {
        auto F = build_field(3, 2);
        CHECK(F->modulus == std::vector<int>{1, 0, 1});
        CHECK(F->coeffs(F->alpha) == std::vector<int>{1, 1});
        // x has order 4, so alpha cannot be x.
        CHECK(F->pow(F->from_coeffs({0, 1}), 4) == F->one());
    }
    SECTION("F_25: smallest irreducible is x^2+x+1, alpha = x+2") {
        auto F = build_field(5, 2);
        CHECK(F->modulus == std::vector<int>{1, 1, 1});
        CHECK(F->coeffs(F->alpha) == std::vector<int>{2, 1});
        CHECK(F->pow(F->alpha, 24) == F->one());
        CHECK(F->pow(F->alpha, 12) != F->one());
        CHECK(F->pow(F->alpha, 8) != F->one());
    }
}

TEST_CASE("construction rejects bad parameters") {
    CHECK_THROWS_AS(build_field(2, 1), NotOddPrime);
    CHECK_THROWS_AS(build_field(9, 1), NotOddPrime);
    CHECK_THROWS_AS(build_field(15, 2), NotOddPrime);
    CHECK_THROWS_AS(build_field(3, 20), SizeGuardExceeded);
    CHECK_THROWS_AS(build_field(3, 0), PreconditionError);
}

TEST_CASE("field arithmetic") {
    auto F = build_field(3, 2);
    const felem x = F->from_coeffs({0, 1});
    SECTION("additive identity and negation") {
        CHECK(F->add(x, F->zero()) == x);
        CHECK(F->add(x, F->neg(x)) == F->zero());
    }
    SECTION("x*x = 2 in F_9 with modulus x^2+1") {
        CHECK(F->mul(x, x) == F->scalar(2));
    }
    SECTION("pow") {
        CHECK(F->pow(F->alpha, F->q - 1) == F->one());
        CHECK(F->pow(x, 0) == F->one());
        CHECK(F->pow(F->zero(), 3) == F->zero());
        CHECK(F->pow(F->alpha, -1) == F->inv(F->alpha));
    }
    SECTION("inverse") {
        for (long long a = 1; a < F->q; ++a)
            CHECK(F->mul(static_cast<felem>(a), F->inv(static_cast<felem>(a))) == F->one());
        CHECK_THROWS_AS(F->inv(F->zero()), ZeroHasNoLog);
    }
}

TEST_CASE("trace values") {
    SECTION("F_9: Tr(c1 x + c0) = 2 c0") {
        auto F = build_field(3, 2);
        CHECK(F->trace(F->zero()) == 0);
        CHECK(F->trace(F->one()) == 2);
        for (int c0 = 0; c0 < 3; ++c0)
            for (int c1 = 0; c1 < 3; ++c1)
                CHECK(F->trace(F->from_coeffs({c0, c1})) == 2 * c0 % 3);
    }
    SECTION("F_27: Tr(1) = 3 mod 3 = 0") {
        auto F = build_field(3, 3);
        CHECK(F->trace(F->one()) == 0);
    }
    SECTION("F_7: trace is the identity") {
        auto F = build_field(7, 1);
        for (long long a = 0; a < 7; ++a) CHECK(F->trace(static_cast<felem>(a)) == a);
    }
}

TEST_CASE("discrete logarithm") {
    auto F = build_field(3, 2);
    CHECK(F->dlog(F->one()) == 0);
    CHECK(F->dlog(F->alpha) == 1);
    CHECK(F->dlog(F->scalar(2)) == 4);
    CHECK_THROWS_AS(F->dlog(F->zero()), ZeroHasNoLog);
}

TEST_CASE("table and trace invariants over small-field sweeps") {
    for (auto [p, m] : {std::pair<long long, int>{3, 2}, {3, 4}, {3, 6}, {5, 3}, {7, 2},
                        {11, 1}, {13, 2}}) {
        auto F = build_field(p, m);
        INFO("q = " << F->q);

        // exp and log are mutually inverse bijections.
        for (long long i = 0; i < F->q - 1; ++i)
            REQUIRE(F->log_table[F->exp_table[i]] == static_cast<felem>(i));
        for (long long a = 1; a < F->q; ++a)
            REQUIRE(F->exp_table[F->log_table[a]] == static_cast<felem>(a));

        // Tr is F_p-linear and onto, with q/p preimages per value.
        std::vector<long long> pre(static_cast<std::size_t>(p), 0);
        for (long long a = 0; a < F->q; ++a) pre[F->trace(static_cast<felem>(a))]++;
        for (long long t = 0; t < p; ++t) REQUIRE(pre[t] == F->q / p);

        for (long long a = 0; a < std::min<long long>(F->q, 81); ++a)
            for (long long b = 0; b < std::min<long long>(F->q, 81); ++b) {
                auto ea = static_cast<felem>(a), eb = static_cast<felem>(b);
                REQUIRE(F->trace(F->add(ea, eb)) == (F->trace(ea) + F->trace(eb)) % p);
            }
        for (long long c = 0; c < p; ++c)
            for (long long a = 0; a < std::min<long long>(F->q, 200); ++a) {
                auto ea = static_cast<felem>(a);
                REQUIRE(F->trace(F->mul(F->scalar(c), ea)) ==
                        c * F->trace(ea) % p);
            }

        // Frobenius-sum route agrees with the linear-map table route.
        for (long long a = 0; a < F->q; ++a)
            REQUIRE(F->trace_by_frobenius(static_cast<felem>(a)) ==
                    F->trace(static_cast<felem>(a)));

        // Coefficient round trip.
        for (long long a = 0; a < F->q; ++a)
            REQUIRE(F->from_coeffs(F->coeffs(static_cast<felem>(a))) == static_cast<felem>(a));
    }
}
