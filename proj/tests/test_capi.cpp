// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <thread>

#include "fourrank/fourrank.h"

TEST_CASE("curve handle") {
    fr_curve* c = nullptr;
    REQUIRE(fr_curve_new(3, "0,2,0,1", nullptr, &c) == FR_OK);
    size_t four = 99, two = 99, direct = 99;
    CHECK(fr_curve_four_rank(c, &four) == FR_OK);
    CHECK(fr_curve_two_rank(c, &two) == FR_OK);
    CHECK(two == 2);
    CHECK(fr_curve_direct_four_rank(c, 1000000, &direct) == FR_OK);
    CHECK(direct == four);
    char* m = nullptr;
    CHECK(fr_curve_matrix(c, &m) == FR_OK);
    CHECK(std::string(m).size() == 12);
    fr_string_free(m);
    char* h = nullptr;
    CHECK(fr_curve_header_json(c, &h) == FR_OK);
    CHECK(std::string(h).find("\"four_rank\"") != std::string::npos);
    fr_string_free(h);
    fr_curve_free(c);

    fr_curve* e = nullptr;
    REQUIRE(fr_curve_new(3, "2,0,0,0,1", "1,1", &e) == FR_OK);
    CHECK(fr_curve_direct_four_rank(e, 1000000, &direct) == FR_OK);
    CHECK(fr_curve_four_rank(e, &four) == FR_OK);
    CHECK(direct == four);
    fr_curve_free(e);
}

TEST_CASE("errors") {
    fr_curve* c = nullptr;
    CHECK(fr_curve_new(3, "0,0,1", nullptr, &c) == FR_NOT_SQUAREFREE);
    CHECK(c == nullptr);
    CHECK(std::string(fr_last_error()).size() > 0);
    CHECK(fr_curve_new(3, "1,0,1,0,1", nullptr, &c) == FR_NOT_SQUAREFREE);
    CHECK(fr_curve_new(4, "1,1", nullptr, &c) == FR_INVALID_ARGUMENT);
    CHECK(fr_curve_new(3, "a,1", nullptr, &c) == FR_PARSE);
    CHECK(fr_curve_new(3, nullptr, nullptr, &c) == FR_INVALID_ARGUMENT);
    CHECK(fr_curve_four_rank(nullptr, nullptr) == FR_INVALID_ARGUMENT);
    CHECK(std::string(fr_status_name(FR_NO_ODD_BRANCH_POINT)) == "no odd-degree branch point");

    fr_curve* even = nullptr;  // (x^2 + 1)(x^2 + x + 2)
    CHECK(fr_curve_new(3, "2,1,0,1,1", nullptr, &even) == FR_NO_ODD_BRANCH_POINT);

    // Last error is per thread.
    std::string other;
    std::thread t([&] { other = fr_last_error(); });
    t.join();
    CHECK(other.empty());
}

TEST_CASE("symbols and limits") {
    int s = 0;
    CHECK(fr_qr_symbol(3, "0,1", "1,1", &s) == FR_OK);
    CHECK(s == -1);
    CHECK(fr_qr_symbol(3, "0,1", "2,0,1", &s) == FR_NOT_IRREDUCIBLE);
    double mu = 0;
    CHECK(fr_mu(2, 0, 0, &mu) == FR_OK);
    CHECK(mu == doctest::Approx(0.2887880951));
}

TEST_CASE("experiment round trip") {
    fr_experiment_config cfg;
    fr_experiment_config_init(&cfg);
    cfg.q = 3;
    cfg.branch_set = 1;
    cfg.degree = 12;
    cfg.trials = 200;
    cfg.ramified = "0,1";
    cfg.split = "1,1";
    cfg.inert = "2,1";
    fr_report* r = nullptr;
    REQUIRE(fr_run_experiment(&cfg, &r) == FR_OK);
    uint64_t acc = 0, none = 0, rej = 0;
    CHECK(fr_report_outcomes(r, &acc, &none, &rej) == FR_OK);
    CHECK(acc + none + rej == 200);
    double pmf[8];
    size_t len = 0;
    CHECK(fr_report_pmf(r, pmf, 8, &len) == FR_OK);
    CHECK(len >= 4);
    CHECK(fr_report_reference(r, nullptr, 0, &len) == FR_OK);
    char* js = nullptr;
    CHECK(fr_report_json(r, 0, &js) == FR_OK);
    CHECK(std::string(js).find("\"branch-set\"") != std::string::npos);
    fr_string_free(js);
    fr_report_free(r);

    cfg.inert = "inf";
    cfg.split = nullptr;
    CHECK(fr_run_experiment(&cfg, &r) == FR_INFEASIBLE);
}

TEST_CASE("check entry points") {
    int passed = 0;
    char* js = nullptr;
    CHECK(fr_oracle_sweep(3, 3, 0, 1, 1, &passed, &js) == FR_OK);
    CHECK(passed == 1);
    fr_string_free(js);
    CHECK(fr_degree_stats(3, 100, 2000, 1, 0.5, 0.1, &passed, nullptr) == FR_OK);
}
