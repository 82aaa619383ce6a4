// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "fourrank/ffpoly.hpp"

using namespace fourrank;

namespace {

Poly P(std::uint32_t q, const char* s) { return parse_poly(q, s); }
MonicIrreducible H(std::uint32_t q, const char* s) { return MonicIrreducible(parse_poly(q, s)); }

}  // namespace

TEST_CASE("mulmod and modpow") {
    CHECK(mulmod(P(3, "0,1"), P(3, "0,1"), P(3, "1,0,1")) == P(3, "2"));
    CHECK(mulmod(P(3, "1"), P(3, "2,1,1"), P(3, "1,0,1")) == rem(P(3, "2,1,1"), P(3, "1,0,1")));
    CHECK(mulmod(P(3, "1,1"), P(3, "2,1"), P(3, "0,0,1")) == P(3, "2"));
    CHECK(modpow(P(3, "2,1"), std::uint64_t(0), P(3, "1,0,1")) == P(3, "1"));
    CHECK(modpow(P(3, "0,1"), std::uint64_t(3), P(3, "1,1")) == P(3, "2"));
    CHECK(modpow(P(3, "0,1"), BigInt(4), P(3, "1,0,1")) == P(3, "1"));
}

TEST_CASE("squarefree and irreducible") {
    CHECK(is_squarefree(P(3, "1,0,1")));
    CHECK_FALSE(is_squarefree(P(3, "0,0,1")));
    CHECK_FALSE(is_squarefree(P(3, "0,0,0,1")));
    CHECK(is_irreducible(P(3, "1,0,1")));
    CHECK_FALSE(is_irreducible(P(3, "2,0,1")));
    for (std::uint32_t a = 0; a < 5; ++a) CHECK(is_irreducible(Poly(5, {a, 1})));
    CHECK_THROWS_AS(MonicIrreducible(P(3, "2,0,1")), Error);
}

TEST_CASE("factorization") {
    auto fx = factor_squarefree(P(3, "0,2,1"));
    REQUIRE(fx.factors.size() == 2);
    CHECK(fx.factors[0].poly() == P(3, "0,1"));
    CHECK(fx.factors[1].poly() == P(3, "2,1"));
    CHECK(fx.lead == 1);
    auto three = factor_squarefree(P(3, "0,2,0,1"));
    REQUIRE(three.factors.size() == 3);
    CHECK(three.factors[1].poly() == P(3, "1,1"));
    CHECK(factor_squarefree(P(3, "1,0,1")).factors.size() == 1);

    Rng rng = make_stream(11, 0);
    for (int t = 0; t < 200; ++t) {
        const Poly f = random_monic_squarefree(5, 1 + t % 12, rng);
        Poly g = Poly::constant(5, 1);
        for (const auto& h : factor_squarefree(f).factors) g = g * h.poly();
        CHECK(g == f);
    }
}

TEST_CASE("irreducible counts") {
    CHECK(count_irreducibles(3, 1) == 3);
    CHECK(count_irreducibles(3, 2) == 3);
    CHECK(count_irreducibles(5, 3) == 40);
    for (std::uint32_t q : {3u, 5u, 7u})
        for (unsigned d = 1; d <= 12; ++d) {
            BigInt total = 0;
            for (unsigned e = 1; e <= d; ++e)
                if (d % e == 0) total += e * count_irreducibles(q, e);
            CHECK(total == boost::multiprecision::pow(BigInt(q), d));
        }
    CHECK(enumerate_irreducibles(3, 4).size() == count_irreducibles(3, 4));
}

TEST_CASE("random squarefree acceptance") {
    Rng rng = make_stream(3, 0);
    int ok = 0;
    const int n = 30000;
    for (int t = 0; t < n; ++t) ok += is_squarefree(random_monic(3, 2, rng));
    CHECK(static_cast<double>(ok) / n == doctest::Approx(2.0 / 3.0).epsilon(0.02));
    for (int t = 0; t < 100; ++t) CHECK(is_squarefree(random_monic_squarefree(3, 1 + t % 20, rng)));
}

TEST_CASE("quadratic residue symbol") {
    CHECK(chi(1, 3) == 1);
    CHECK(chi(2, 3) == -1);
    CHECK(chi(4, 5) == 1);
    CHECK(chi(0, 5) == 0);
    CHECK(qr_symbol(P(3, "0,1"), H(3, "1,1")) == -1);
    CHECK(qr_symbol(P(3, "1,1"), H(3, "0,1")) == 1);
    CHECK(qr_symbol(P(3, "1,2,1"), H(3, "1,0,1")) == 1);
    CHECK(qr_symbol(P(3, "0,0,1"), H(3, "0,1")) == 0);
    CHECK(reciprocity_check(H(3, "0,1"), H(3, "1,1")));

    // Euler criterion against brute-force squaring in F_q[x]/(h).
    for (std::uint32_t q : {3u, 5u}) {
        for (unsigned d = 1; std::pow(q, d) <= 125; ++d)
            for (const auto& h : enumerate_irreducibles(q, d)) {
                std::set<std::vector<std::uint32_t>> squares;
                const auto all = static_cast<std::uint64_t>(std::pow(q, d));
                for (std::uint64_t c = 1; c < all; ++c) {
                    std::vector<std::uint32_t> co(d);
                    auto x = c;
                    for (unsigned i = 0; i < d; ++i, x /= q) co[i] = static_cast<std::uint32_t>(x % q);
                    const Poly a(q, co);
                    squares.insert(mulmod(a, a, h.poly()).coeffs());
                }
                for (std::uint64_t c = 1; c < all; ++c) {
                    std::vector<std::uint32_t> co(d);
                    auto x = c;
                    for (unsigned i = 0; i < d; ++i, x /= q) co[i] = static_cast<std::uint32_t>(x % q);
                    const Poly a(q, co);
                    const int want = squares.count(a.coeffs()) ? 1 : -1;
                    CHECK(qr_symbol(a, h) == want);
                    CHECK(qr_symbol_euler(a, h) == want);
                }
            }
    }
}

TEST_CASE("symbol multiplicativity") {
    Rng rng = make_stream(5, 0);
    for (int t = 0; t < 300; ++t) {
        const auto h = random_monic_irreducible(7, 1 + t % 6, rng);
        const Poly a = random_monic(7, 1 + t % 9, rng), b = random_monic(7, 1 + t % 5, rng);
        const int s = qr_symbol(a * b, h);
        CHECK(s == qr_symbol(a, h) * qr_symbol(b, h));
    }
}

TEST_CASE("parsing and places") {
    CHECK(format_poly(P(5, "1, 2 ,3")) == "1,2,3");
    CHECK_THROWS_AS(P(3, "1,3"), Error);
    CHECK_THROWS_AS(P(3, "x"), Error);
    const auto pts = parse_place_list(3, "1,0,1; inf ;0,1");
    REQUIRE(pts.size() == 3);
    CHECK(pts[1].is_infinity());
    CHECK(format_place(pts[1]) == "inf");
    CHECK(Place::infinity() < pts[2]);
    CHECK(pts[2] < pts[0]);
}
