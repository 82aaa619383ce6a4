// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "fourrank/matstat.hpp"

using namespace fourrank;

TEST_CASE("fields and nullity") {
    for (unsigned ell : {2u, 3u, 4u, 5u, 9u}) {
        const auto F = GaloisField::get(ell);
        for (unsigned a = 1; a < ell; ++a) CHECK(F->mul(a, F->inv(a)) == 1);
        for (unsigned a = 0; a < ell; ++a) CHECK(F->add(a, F->neg(a)) == 0);
    }
    CHECK_THROWS_AS(GaloisField::get(6), Error);
    CHECK(nullity(BitMatrix::identity(70)) == 0);
    CHECK(nullity(BitMatrix(70, 70)) == 70);
    BitMatrix ones(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) ones.set(i, j, true);
    CHECK(nullity(ones) == 1);
    CHECK(nullity(MatFl::from_bits(ones)) == 1);
}

TEST_CASE("closed forms") {
    CHECK(q_binomial(4, 2, 2) == 35);
    CHECK(q_binomial(3, 1, 3) == 13);
    CHECK(uniform_pmf(2, 1, 0) == Rational(1, 2));
    CHECK(uniform_pmf(2, 2, 0) == Rational(3, 8));
    CHECK(invertible_fraction(2, 2) == Rational(3, 8));
    CHECK(macwilliams_pmf(2, 1, 0) == Rational(1, 2));
    CHECK(macwilliams_pmf(2, 1, 1) == Rational(1, 2));
    CHECK(macwilliams_pmf(3, 3, 3) == Rational(1, 729));
    for (unsigned n = 1; n <= 8; ++n) {
        Rational u = 0, s = 0;
        for (unsigned r = 0; r <= n; ++r) u += uniform_pmf(3, n, r), s += macwilliams_pmf(3, n, r);
        CHECK(u == 1);
        CHECK(s == 1);
    }
    CHECK(mu_cl(2, 0) == doctest::Approx(0.2887880951).epsilon(1e-9));
    CHECK(mu_cl(2, 1) == doctest::Approx(0.5775761902).epsilon(1e-9));
    CHECK(mu_s(2, 0) == doctest::Approx(0.4194224418).epsilon(1e-9));
}

TEST_CASE("exhaustive agreement") {
    for (unsigned n = 1; n <= 3; ++n) {
        const auto e = exhaustive_pmf(2, n, MatrixModel::Uniform);
        for (unsigned r = 0; r <= n; ++r) CHECK(e.exact[r] == uniform_pmf(2, n, r));
        const auto s = exhaustive_pmf(2, n, MatrixModel::Symmetric);
        for (unsigned r = 0; r <= n; ++r) CHECK(s.exact[r] == macwilliams_pmf(2, n, r));
    }
}

TEST_CASE("standard form and samplers") {
    const auto c = standard_redei_form(2, 3, 3);
    CHECK(c.size() == 5);
    CHECK(c.rank() == 2);
    CHECK(c.rows_sum_to_zero());
    CHECK(standard_redei_form(2, 3, 5).rank() == 0);
    CHECK_FALSE(standard_redei_form(0, 2, 3).rows_sum_to_zero());

    Rng rng = make_stream(2, 0);
    const auto& cm = c.matrix();
    for (int t = 0; t < 200; ++t) {
        const MatFl m = sample_c_symmetric(c, rng);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) CHECK((m(i, j) ^ m(j, i)) == cm(i, j));
        CHECK(nullity(m) <= 5 - c.rank() / 2);
        const MatFl z = sample_c_symmetric_zero_sums(c, rng);
        CHECK(nullity(z) == nullity(z.without_last_row_col()) + 1);
    }
    CHECK_THROWS_AS(sample_c_symmetric_zero_sums(standard_redei_form(0, 2, 3), rng), Error);
}

TEST_CASE("symmetric sampler matches MacWilliams") {
    Rng rng = make_stream(3, 0);
    const auto c = AlternatingForm::zero(2, 2);
    std::map<std::size_t, int> hist;
    const int n = 100000;
    for (int t = 0; t < n; ++t) ++hist[nullity(sample_c_symmetric(c, rng))];
    for (unsigned r = 0; r <= 2; ++r)
        CHECK(std::abs(hist[r] / double(n) - static_cast<double>(macwilliams_pmf(2, 2, r))) < 0.01);
}

TEST_CASE("zero-sum support is uniform") {
    const auto c = AlternatingForm::zero(2, 3);
    const auto support = c_symmetric_support(c, true);
    CHECK(support.size() == 8);
    std::map<std::vector<std::uint8_t>, int> hist;
    Rng rng = make_stream(4, 0);
    const int n = 100000;
    for (int t = 0; t < n; ++t) ++hist[sample_c_symmetric_zero_sums(c, rng).data()];
    CHECK(hist.size() == 8);
    double chi2 = 0;
    for (const auto& [k, v] : hist) chi2 += (v - n / 8.0) * (v - n / 8.0) / (n / 8.0);
    CHECK(chi2 < 24.3);  // 7 dof, p = 0.001
}

TEST_CASE("kernel probabilities") {
    const auto c = AlternatingForm::zero(2, 3);
    CHECK(kernel_contains_prob(c, {{1, 0, 0}}) == Rational(1, 8));
    const auto k = standard_redei_form(0, 3, 3);
    CHECK(kernel_contains_prob(k, {{1, 0, 0}, {0, 1, 0}}) == 0);
}

TEST_CASE("mixing statistic") {
    CHECK(mixing_stat(4, 4, 1, 1, 0).value == Rational(9, 16));
    CHECK(mixing_stat(3, 2, 3, 2, 5).value == 1);
    Rational total = 0;
    for (unsigned d = 0; d <= 4; ++d) {
        const auto s = mixing_stat(7, 5, 2, 2, d);
        total += s.value;
        if (d > 0) CHECK(s.value <= s.bound);
    }
    CHECK(total == 1);
}

TEST_CASE("json and total variation") {
    CHECK(total_variation({0.5, 0.5}, {1.0}) == doctest::Approx(0.5));
    const auto d = exhaustive_pmf(2, 1, MatrixModel::Symmetric);
    const auto j = d.to_json();
    CHECK(j.find("\"1/2\"") != std::string::npos);
}
