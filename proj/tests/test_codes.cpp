#include <catch_amalgamated.hpp>

#include <set>

#include "ghwlab/codes.hpp"

using namespace ghwlab;

TEST_CASE("defining sets") {
    SECTION("q=7 canonical skew set is {1, 2, 4}") {
        auto P = cyclotomy_params(build_field(7, 1), 1);
        auto D = defining_set(P, Family::C, SkewSpec{true, 0});
        CHECK(D.elements == std::vector<felem>{1, 2, 4});
    }
    SECTION("q=27, N=2, family A: 13 distinct powers of theta = alpha^2") {
        auto F = build_field(3, 3);
        auto P = cyclotomy_params(F, 2);
        auto D = defining_set(P, Family::A);
        REQUIRE(D.elements.size() == 13);
        CHECK(std::set<felem>(D.elements.begin(), D.elements.end()).size() == 13);
        CHECK(D.elements[0] == F->one());
        CHECK(D.elements[1] == F->pow(F->alpha, 2));
    }
    SECTION("q=25, N=2, family B: {1, theta, theta^2}") {
        auto F = build_field(5, 2);
        auto P = cyclotomy_params(F, 2);
        auto D = defining_set(P, Family::B);
        REQUIRE(P.n2 == 3);
        CHECK(D.elements ==
              std::vector<felem>{F->one(), P.theta, F->mul(P.theta, P.theta)});
    }
    SECTION("families A and B demand the order assumption") {
        auto P = cyclotomy_params(build_field(3, 2), 4);  // ord_2(3) = 1 != 2
        CHECK_FALSE(P.ord_ok);
        CHECK_THROWS_AS(defining_set(P, Family::A), OrderAssumptionViolated);
        CHECK_THROWS_AS(defining_set(P, Family::B), OrderAssumptionViolated);
    }
    SECTION("family B rejects N1 > sqrt(q)") {
        // q = 343, N = 38: n1 = 9 with ord_9(7) = 3, and N1 = gcd(38, 57) = 19 > sqrt(343).
        auto P = cyclotomy_params(build_field(7, 3), 38);
        REQUIRE(P.ord_ok);
        REQUIRE(P.N1 == 19);
        CHECK_NOTHROW(defining_set(P, Family::A));
        CHECK_THROWS_AS(defining_set(P, Family::B), IsoPreconditionFailed);
    }
    SECTION("canonical skew set needs q = 3 (mod 4)") {
        auto P = cyclotomy_params(build_field(5, 2), 1);
        CHECK_THROWS_AS(defining_set(P, Family::C, SkewSpec{true, 0}), SkewCanonicalUnavailable);
        CHECK_NOTHROW(defining_set(P, Family::C, SkewSpec{false, 7}));
    }
    SECTION("every skew set partitions F_q^* with -D") {
        for (auto [p, m] : {std::pair<long long, int>{3, 2}, {3, 3}, {5, 2}, {7, 2}, {11, 1}}) {
            auto F = build_field(p, m);
            auto P = cyclotomy_params(F, 1);
            for (std::uint64_t seed : {1u, 2u, 3u}) {
                auto D = defining_set(P, Family::C, SkewSpec{false, seed});
                REQUIRE(D.elements.size() == static_cast<std::size_t>((F->q - 1) / 2));
                std::set<felem> all(D.elements.begin(), D.elements.end());
                for (felem d : D.elements) all.insert(F->neg(d));
                REQUIRE(all.size() == static_cast<std::size_t>(F->q - 1));
            }
        }
    }
}

TEST_CASE("building codes") {
    SECTION("q=9, D = F_9^*: an [8, 2] code") {
        auto P = cyclotomy_params(build_field(3, 2), 1);
        auto C = build_code(defining_set(P, Family::A));
        CHECK(C.n == 8);
        CHECK(C.k == 2);
    }
    SECTION("q=7, D = {1,2,4}: [3, 1] with generator row (1, 2, 4)") {
        auto P = cyclotomy_params(build_field(7, 1), 1);
        auto C = build_code(defining_set(P, Family::C, SkewSpec{true, 0}));
        CHECK(C.n == 3);
        CHECK(C.k == 1);
        CHECK(C.trace_rows[C.basis_rows[0]] == std::vector<int>{1, 2, 4});
    }
    SECTION("ad-hoc D = {1, -1} in F_9 has rank 1") {
        auto F = build_field(3, 2);
        auto P = cyclotomy_params(F, 1);
        auto C = build_code_from_elements(P, std::vector<felem>{F->one(), F->neg(F->one())});
        CHECK(C.n == 2);
        CHECK(C.k == 1);
    }
}

TEST_CASE("codewords") {
    SECTION("c(0) is the zero word") {
        auto P = cyclotomy_params(build_field(3, 2), 1);
        auto C = build_code(defining_set(P, Family::A));
        auto w = codeword(C, 0);
        CHECK(w.weight == 0);
        CHECK(std::all_of(w.coords.begin(), w.coords.end(), [](int c) { return c == 0; }));
    }
    SECTION("q=7, D={1,2,4}, a=1 gives (1,2,4)") {
        auto P = cyclotomy_params(build_field(7, 1), 1);
        auto C = build_code(defining_set(P, Family::C, SkewSpec{true, 0}));
        auto w = codeword(C, 1);
        CHECK(w.coords == std::vector<int>{1, 2, 4});
        CHECK(w.weight == 3);
    }
    SECTION("q=9, D=F_9^*: every nonzero message has weight 6") {
        auto F = build_field(3, 2);
        auto P = cyclotomy_params(F, 1);
        auto C = build_code(defining_set(P, Family::A));
        for (long long a = 1; a < 9; ++a)
            CHECK(codeword(C, static_cast<felem>(a)).weight == 6);
    }
}

TEST_CASE("weight distributions") {
    SECTION("q=9, D=F_9^*: {0:1, 6:8}") {
        auto P = cyclotomy_params(build_field(3, 2), 1);
        auto C = build_code(defining_set(P, Family::A));
        CHECK(weight_distribution(C) == std::map<long long, long long>{{0, 1}, {6, 8}});
    }
    SECTION("q=7 skew: {0:1, 3:6}") {
        auto P = cyclotomy_params(build_field(7, 1), 1);
        auto C = build_code(defining_set(P, Family::C, SkewSpec{true, 0}));
        CHECK(weight_distribution(C) == std::map<long long, long long>{{0, 1}, {3, 6}});
    }
    SECTION("q=25, family B, N=2: {0:1, 2:12, 3:12}") {
        auto P = cyclotomy_params(build_field(5, 2), 2);
        auto C = build_code(defining_set(P, Family::B));
        CHECK(weight_distribution(C) ==
              std::map<long long, long long>{{0, 1}, {2, 12}, {3, 12}});
    }
    SECTION("rank-deficient codes enumerate p^k codewords") {
        auto F = build_field(3, 2);
        auto P = cyclotomy_params(F, 1);
        auto C = build_code_from_elements(P, std::vector<felem>{F->one(), F->neg(F->one())});
        auto wd = weight_distribution(C);
        long long total = 0;
        for (auto [w, c] : wd) total += c;
        CHECK(total == 3);  // p^k = 3^1
    }
    SECTION("budget guard") {
        auto P = cyclotomy_params(build_field(3, 4), 1);
        auto C = build_code(defining_set(P, Family::A));
        CHECK_THROWS_AS(weight_distribution(C, 100), EnumerationBudgetExceeded);
    }
}

TEST_CASE("family-B weight theorem") {
    SECTION("q=25, N=2: class weights 3 and 2, minimum 2") {
        auto P = cyclotomy_params(build_field(5, 2), 2);
        auto C = build_code(defining_set(P, Family::B));
        auto rep = check_family_B_weights(C);
        CHECK(rep.class_weights == std::vector<long long>{3, 2});
        CHECK(rep.min_weight == 2);
        CHECK(rep.checked == 24);
    }
    SECTION("holds on every valid instance with q <= 343") {
        for (auto [p, m] : {std::pair<long long, int>{3, 2}, {3, 3}, {3, 5}, {5, 2}, {5, 3},
                            {7, 2}, {7, 3}, {11, 2}, {17, 2}}) {
            auto F = build_field(p, m);
            for (long long N = 1; N <= F->q - 1; ++N) {
                if ((F->q - 1) % N != 0) continue;
                auto P = cyclotomy_params(F, N);
                if (!P.ord_ok || P.N1 * P.N1 > F->q) continue;
                auto C = build_code(defining_set(P, Family::B));
                REQUIRE(C.k == F->m);
                REQUIRE_NOTHROW(check_family_B_weights(C));
            }
        }
    }
}

TEST_CASE("weight is invariant under scalar multiples of the message") {
    for (auto [p, m, N] : {std::tuple<long long, int, long long>{3, 3, 2}, {5, 2, 2}, {7, 2, 3}}) {
        auto F = build_field(p, m);
        auto P = cyclotomy_params(F, N);
        auto C = build_code(defining_set(P, Family::A));
        for (long long a = 1; a < F->q; ++a)
            for (long long z = 1; z < p; ++z) {
                auto ea = static_cast<felem>(a);
                REQUIRE(hamming_weight(C, F->mul(ea, F->scalar(z))) == hamming_weight(C, ea));
            }
    }
}

TEST_CASE("family A weights are constant on classes of order N1") {
    for (auto [p, m, N] : {std::tuple<long long, int, long long>{3, 2, 2}, {5, 2, 2}, {5, 2, 3},
                           {3, 4, 2}, {7, 2, 3}}) {
        auto F = build_field(p, m);
        auto P = cyclotomy_params(F, N);
        auto C = build_code(defining_set(P, Family::A));
        std::vector<long long> wt(static_cast<std::size_t>(P.N1), -1);
        for (long long idx = 0; idx < F->q - 1; ++idx) {
            long long w = hamming_weight(C, F->exp_table[idx]);
            long long& ref = wt[idx % P.N1];
            if (ref < 0) ref = w;
            REQUIRE(ref == w);
        }
    }
}
