#include <catch_amalgamated.hpp>

#include <set>

#include "ghwlab/field.hpp"
#include "ghwlab/subspace.hpp"

using namespace ghwlab;

TEST_CASE("gaussian binomial") {
    CHECK(gaussian_binomial(5, 0, 3) == 1);
    CHECK(gaussian_binomial(2, 1, 3) == 4);
    CHECK(gaussian_binomial(4, 2, 3) == 130);
    CHECK(gaussian_binomial(6, 3, 3) == 33880);
    CHECK(gaussian_binomial(6, 3, 7) == 48177200);
    CHECK(gaussian_binomial(4, 4, 5) == 1);
    CHECK_THROWS_AS(gaussian_binomial(3, 4, 3), PreconditionError);
}

TEST_CASE("enumeration order for (m=2, r=1, p=3)") {
    SubspaceEnumerator en(2, 1, 3);
    REQUIRE(en.total() == 4);
    std::vector<std::vector<int>> rows;
    en.for_each([&](const Subspace& s, unsigned long long) { rows.push_back(s.rows); });
    CHECK(rows == std::vector<std::vector<int>>{{1, 0}, {1, 1}, {1, 2}, {0, 1}});
}

TEST_CASE("full-dimension enumeration is the identity basis") {
    SubspaceEnumerator en(3, 3, 5);
    REQUIRE(en.total() == 1);
    const Subspace s = en.at(0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(s.at(i, j) == (i == j ? 1 : 0));
}

TEST_CASE("(4, 2, 3): 130 distinct row spaces") {
    SubspaceEnumerator en(4, 2, 3);
    REQUIRE(en.total() == 130);
    std::set<std::vector<int>> bases;
    // Row spaces are distinct iff the RREF bases are: collect the full element
    // sets too, as an independent distinctness check.
    auto F = build_field(3, 4);
    std::set<std::set<felem>> spaces;
    en.for_each([&](const Subspace& s, unsigned long long) {
        bases.insert(s.rows);
        felem a0 = F->from_coeffs({s.at(0, 0), s.at(0, 1), s.at(0, 2), s.at(0, 3)});
        felem a1 = F->from_coeffs({s.at(1, 0), s.at(1, 1), s.at(1, 2), s.at(1, 3)});
        std::set<felem> space;
        for (int c0 = 0; c0 < 3; ++c0)
            for (int c1 = 0; c1 < 3; ++c1)
                space.insert(F->add(F->mul(F->scalar(c0), a0), F->mul(F->scalar(c1), a1)));
        spaces.insert(std::move(space));
    });
    CHECK(bases.size() == 130);
    CHECK(spaces.size() == 130);
}

TEST_CASE("enumeration counts match gaussian binomials") {
    for (long long p : {3, 5}) {
        for (int m = 1; m <= 5; ++m) {
            for (int r = 0; r <= m; ++r) {
                SubspaceEnumerator en(m, r, p);
                unsigned long long seen = 0;
                en.for_each([&](const Subspace&, unsigned long long) { ++seen; });
                INFO("m=" << m << " r=" << r << " p=" << p);
                REQUIRE(seen == gaussian_binomial(m, r, p));
                REQUIRE(en.total() == seen);
            }
        }
    }
}

TEST_CASE("random access agrees with iteration") {
    SubspaceEnumerator en(4, 2, 3);
    en.for_each([&](const Subspace& s, unsigned long long idx) {
        REQUIRE(en.at(idx).rows == s.rows);
    });
    CHECK_THROWS_AS(en.at(en.total()), PreconditionError);
}

TEST_CASE("row spaces are closed under scalar multiplication") {
    auto F = build_field(5, 3);
    SubspaceEnumerator en(3, 2, 5);
    en.for_each([&](const Subspace& s, unsigned long long) {
        std::set<felem> space;
        std::vector<felem> rows;
        for (int i = 0; i < s.r; ++i) {
            std::vector<int> c(s.m);
            for (int j = 0; j < s.m; ++j) c[j] = s.at(i, j);
            rows.push_back(F->from_coeffs(c));
        }
        for (int c0 = 0; c0 < 5; ++c0)
            for (int c1 = 0; c1 < 5; ++c1)
                space.insert(F->add(F->mul(F->scalar(c0), rows[0]),
                                    F->mul(F->scalar(c1), rows[1])));
        for (felem a : space)
            for (long long z = 1; z < 5; ++z)
                REQUIRE(space.count(F->mul(a, F->scalar(z))) == 1);
    });
}
