// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>

#include "fourrank/jacobian.hpp"
#include "fourrank/redei.hpp"

using namespace fourrank;

namespace {

Poly P(std::uint32_t q, const char* s) { return parse_poly(q, s); }

}  // namespace

TEST_CASE("group law") {
    const Poly f = P(3, "1,2,0,1");  // x^3 + 2x + 1
    REQUIRE(is_squarefree(f));
    const auto j = enumerate_jacobian(f);
    CHECK(j.genus == 1);
    CHECK(j.order() == affine_point_count(f) + 1);
    const auto e = jacobian_identity(3);
    for (const auto& a : j.elements) {
        CHECK(is_valid(a, f));
        CHECK(cantor_add(a, e, f) == a);
        CHECK(cantor_add(a, cantor_negate(a, f), f) == e);
        CHECK(cantor_multiply(a, j.order(), f) == e);
        for (const auto& b : j.elements) CHECK(cantor_add(a, b, f) == cantor_add(b, a, f));
    }
}

TEST_CASE("genus two group") {
    Rng rng = make_stream(4, 0);
    for (int t = 0; t < 10; ++t) {
        const Poly f = random_monic_squarefree(5, 5, rng);
        const auto j = enumerate_jacobian(f);
        CHECK(j.genus == 2);
        CHECK(within_weil_bounds(j));
        for (std::size_t k = 0; k < j.order(); k += 7) {
            const auto& a = j.elements[k];
            const auto& b = j.elements[(k * 13 + 5) % j.order()];
            const auto& c = j.elements[(k * 29 + 3) % j.order()];
            CHECK(cantor_add(cantor_add(a, b, f), c, f) == cantor_add(a, cantor_add(b, c, f), f));
            CHECK(cantor_multiply(a, j.order(), f) == jacobian_identity(5));
        }
        CHECK(four_rank_direct(j) <= two_rank_direct(j));
    }
}

TEST_CASE("small cases") {
    const auto g0 = enumerate_jacobian(P(3, "1,1"));
    CHECK(g0.order() == 1);
    CHECK(four_rank_direct(g0) == 0);
    CHECK(two_rank_direct(g0) == 0);

    const Poly f = P(3, "0,2,0,1");  // x(x+1)(x+2)
    const auto j = enumerate_jacobian(f);
    CHECK(j.order() == affine_point_count(f) + 1);
    CHECK(two_rank_direct(j) == 2);
    CHECK(four_rank_direct(j) == four_rank(f));
    CHECK_THROWS_AS(enumerate_jacobian(P(3, "0,0,1,1")), Error);  // not squarefree / even
    CHECK_THROWS_AS(enumerate_jacobian(random_monic_squarefree(7, 9, *std::make_unique<Rng>(1)), 1000), Error);
}

TEST_CASE("substituted odd model") {
    const Poly f = P(3, "2,0,0,0,1");  // x^4 + 2, roots 1 and 2
    const Poly h = odd_degree_model(f);
    CHECK(h.degree() == 3);
    CHECK(h.is_monic());
    CHECK(is_squarefree(h));
    CHECK(substitute_and_compare(f).agree());
    CHECK_THROWS_AS(odd_degree_model(P(3, "1,0,1")), Error);  // no root
    CHECK_THROWS_AS(odd_degree_model(P(3, "0,2,0,1")), Error);  // odd degree
}
