// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "fourrank/jacobian.hpp"
#include "fourrank/redei.hpp"

using namespace fourrank;

namespace {

Poly P(std::uint32_t q, const char* s) { return parse_poly(q, s); }
Poly mul(std::uint32_t q, std::initializer_list<const char*> fs) {
    Poly out = Poly::constant(q, 1);
    for (auto s : fs) out = out * P(q, s);
    return out;
}

}  // namespace

TEST_CASE("branch data and base point") {
    const auto odd = build_branch_data(P(3, "1,0,0,0,0,1"));
    CHECK(odd.p0.is_infinity());
    CHECK(odd.n() == factor_squarefree(P(3, "1,0,0,0,0,1")).factors.size());

    const Poly f = mul(3, {"0,1", "1,1", "1,0,1"});
    const auto bd = build_branch_data(f);
    REQUIRE_FALSE(bd.p0.is_infinity());
    CHECK(bd.p0.finite().poly() == P(3, "0,1"));
    REQUIRE(bd.n() == 2);
    CHECK(bd.points[0].finite().poly() == P(3, "1,1"));
    CHECK(bd.points[1].finite().poly() == P(3, "1,0,1"));
    CHECK(bd.degrees == std::vector<unsigned>{1, 1, 2});
    CHECK(base_class(bd) == 1);
    CHECK(base_class(build_branch_data(mul(3, {"0,1", "2,1", "1,0,1"}))) == -1);
    CHECK(base_class(build_branch_data(P(3, "1,0,0,0,0,1"))) == 1);

    try {
        build_branch_data(mul(3, {"1,0,1", "2,1,1"}));
        FAIL("expected NoOddBranchPoint");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoOddBranchPoint);
    }
    CHECK_THROWS_AS(build_branch_data(P(3, "0,0,1")), Error);
    CHECK_THROWS_AS(build_branch_data(P(3, "0,2")), Error);
}

TEST_CASE("base point override") {
    const Poly f = mul(3, {"0,1", "1,1", "1,0,1"});
    const auto alt = build_branch_data(f, Place(MonicIrreducible(P(3, "1,1"))));
    CHECK(alt.p0.finite().poly() == P(3, "1,1"));
    CHECK(four_rank(alt) == four_rank(f));
    CHECK_THROWS_AS(build_branch_data(f, Place(MonicIrreducible(P(3, "1,0,1")))), Error);
    CHECK_THROWS_AS(build_branch_data(f, Place(MonicIrreducible(P(3, "2,1")))), Error);
    CHECK_THROWS_AS(build_branch_data(P(3, "0,2,0,1"), Place(MonicIrreducible(P(3, "0,1")))), Error);

    // Every admissible base point gives the same 4-rank.
    Rng rng = make_stream(21, 0);
    for (int t = 0; t < 300; ++t) {
        const Poly g = random_monic_squarefree(t % 2 ? 3 : 5, 2 * (2 + t % 5), rng);
        std::vector<std::size_t> ranks;
        for (const auto& h : factor_squarefree(g).factors)
            if (h.degree() % 2) ranks.push_back(four_rank(build_branch_data(g, Place(h))));
        if (ranks.size() > 1) CHECK(std::adjacent_find(ranks.begin(), ranks.end(), std::not_equal_to<>()) == ranks.end());
    }
}

TEST_CASE("second-order classes") {
    CHECK(second_order_class(P(3, "1,0,1"), Place(MonicIrreducible(P(3, "0,1")))) == 1);
    CHECK(second_order_class(P(3, "1,0,1"), Place::infinity()) == 1);
    CHECK(second_order_class(P(3, "2,1,1"), Place(MonicIrreducible(P(3, "0,1")))) == -1);
    CHECK_THROWS_AS(second_order_class(P(3, "0,1,1"), Place(MonicIrreducible(P(3, "0,1")))), Error);
    CHECK_THROWS_AS(second_order_class(P(3, "1,0,0,1"), Place::infinity()), Error);
}

TEST_CASE("small matrices") {
    const auto bd = build_branch_data(mul(3, {"0,1", "1,1", "2,1"}));
    REQUIRE(bd.n() == 3);
    CHECK(redei_entry(bd, 0, 1) == false);
    CHECK(redei_entry(bd, 1, 0) == true);
    const auto m = redei_matrix(bd);
    for (std::size_t i = 0; i < 3; ++i) {
        bool r = false, c = false;
        for (std::size_t j = 0; j < 3; ++j) r ^= m.entries.get(i, j), c ^= m.entries.get(j, i);
        CHECK_FALSE(r);
        CHECK_FALSE(c);
    }
    CHECK(two_rank(bd) == 2);
    const auto jac = enumerate_jacobian(bd.f);
    CHECK(two_rank_direct(jac) == 2);
    CHECK(four_rank(bd) == four_rank_direct(jac));

    const auto q5 = redei_matrix(build_branch_data(mul(5, {"0,1", "1,1", "2,1"})));
    CHECK(q5.entries == q5.entries.transpose());

    const auto single = redei_matrix(build_branch_data(P(3, "1,2,0,1")));  // x^3 + 2x + 1
    CHECK(single.n == 1);
    CHECK(nullity(single.entries) == 1);
    CHECK(four_rank(P(3, "1,2,0,1")) == 0);
    CHECK(two_rank(build_branch_data(P(3, "1,2,0,1"))) == 0);
}

TEST_CASE("structure on random curves") {
    Rng rng = make_stream(8, 0);
    for (std::uint32_t q : {3u, 5u, 7u, 13u})
        for (int t = 0; t < 150; ++t) {
            const Poly f = random_monic_squarefree(q, 1 + t % 30, rng);
            BranchData bd;
            try {
                bd = build_branch_data(f);
            } catch (const Error& e) {
                CHECK(e.code() == ErrorCode::NoOddBranchPoint);
                continue;
            }
            const auto m = redei_matrix(bd);  // check_structure runs inside
            CHECK(m.n_even + m.n_odd == m.n);
            CHECK(m.c.rank() <= m.n);
            CHECK(four_rank(bd) <= two_rank(bd));
            if (q % 4 == 1) CHECK(m.entries == m.entries.transpose());
        }
}

TEST_CASE("permutation invariance") {
    Rng rng = make_stream(9, 0);
    for (int t = 0; t < 100; ++t) {
        const Poly f = random_monic_squarefree(3, 9 + t % 12, rng);
        BranchData bd;
        try {
            bd = build_branch_data(f);
        } catch (const Error&) {
            continue;
        }
        const std::size_t base = four_rank(bd);
        std::vector<std::size_t> perm(bd.n());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        BranchData shuffled = bd;
        for (std::size_t i = 0; i < perm.size(); ++i) {
            shuffled.points[i] = bd.points[perm[i]];
            shuffled.degrees[i + 1] = bd.degrees[perm[i] + 1];
        }
        BitMatrix m(bd.n(), bd.n());
        for (std::size_t i = 0; i < bd.n(); ++i) {
            bool diag = false;
            for (std::size_t j = 0; j < bd.n(); ++j)
                if (i != j) {
                    const bool e = redei_entry(shuffled, i, j);
                    m.set(i, j, e);
                    diag ^= e;
                }
            m.set(i, i, diag);
        }
        CHECK(nullity(m) - 1 == base);
    }
}

TEST_CASE("header json") {
    const auto bd = build_branch_data(mul(3, {"0,1", "1,1", "2,1"}));
    const auto h = header_json(bd, redei_matrix(bd));
    CHECK(h.find("\"p0\":\"inf\"") != std::string::npos);
    CHECK(h.find("\"four_rank\"") != std::string::npos);
}
