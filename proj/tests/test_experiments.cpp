// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fourrank/experiments.hpp"

using namespace fourrank;

namespace {

ErrorCode code_of(const ExperimentConfig& c) {
    try {
        validate(c);
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode{};
}

ExperimentConfig local(std::uint64_t trials) {
    ExperimentConfig c;
    c.q = 3;
    c.mode = Mode::BranchSet;
    c.degree = 12;
    c.trials = trials;
    c.ramified = parse_place_list(3, "0,1");
    c.split = parse_place_list(3, "1,1");
    c.inert = parse_place_list(3, "2,1");
    return c;
}

}  // namespace

TEST_CASE("config validation") {
    ExperimentConfig c;
    c.degree = 9;
    CHECK(code_of(c) == ErrorCode{});
    c.q = 9;
    CHECK(code_of(c) == ErrorCode::InvalidArgument);
    c.q = 3;
    c.trials = 0;
    CHECK(code_of(c) == ErrorCode::InvalidArgument);
    c.trials = 5;
    c.split = parse_place_list(3, "0,1");
    CHECK(code_of(c) == ErrorCode::InvalidArgument);

    auto l = local(5);
    CHECK(code_of(l) == ErrorCode{});
    l.inert.push_back(Place::infinity());
    CHECK(code_of(l) == ErrorCode::Infeasible);
    l = local(5);
    l.split.push_back(l.ramified[0]);
    CHECK(code_of(l) == ErrorCode::InvalidArgument);
    l = local(5);
    l.degree = 13;
    CHECK(code_of(l) == ErrorCode::InvalidArgument);
    l = local(5);
    l.degree = 2;
    l.ramified = parse_place_list(3, "0,1;1,0,1");
    CHECK(code_of(l) == ErrorCode::Infeasible);
}

TEST_CASE("reports are independent of the worker count") {
    ExperimentConfig c;
    c.q = 3;
    c.degree = 15;
    c.trials = 300;
    c.seed = 42;
    c.matched_draws = 2;
    const auto one = run_experiment(c);
    c.threads = 3;
    const auto three = run_experiment(c);
    CHECK(one.to_json() == three.to_json());
    CHECK(one.to_csv() == three.to_csv());

    auto l = local(300);
    const auto a = run_experiment(l);
    l.threads = 4;
    CHECK(a.to_json() == run_experiment(l).to_json());
}

TEST_CASE("report bookkeeping") {
    ExperimentConfig c;
    c.q = 3;
    c.degree = 8;
    c.trials = 500;
    const auto r = run_experiment(c);
    std::uint64_t sum = 0;
    for (auto k : r.counts) sum += k;
    CHECK(sum == r.config.trials - r.no_odd_branch_point - r.local_rejected);
    CHECK(r.trials.size() == 500);
    CHECK(r.reference.size() == r.counts.size());
    CHECK(r.to_csv().rfind("trial,outcome,four_rank", 0) == 0);
    CHECK(r.to_json().find("runtime") == std::string::npos);
    CHECK(r.to_json(true).find("runtime_seconds") != std::string::npos);

    auto l = local(400);
    l.split.clear();
    l.inert.clear();
    const auto free = run_experiment(l);
    CHECK(free.acceptance_rate() == 1.0);
    const auto cond = run_experiment(local(400));
    CHECK(cond.accepted + cond.local_rejected + cond.no_odd_branch_point == 400);
}

TEST_CASE("odd-degree branch points become common") {
    ExperimentConfig c;
    c.q = 3;
    c.trials = 3000;
    c.matched_draws = 0;
    c.degree = 4;
    const auto small = run_experiment(c);
    c.degree = 16;
    const auto large = run_experiment(c);
    CHECK(small.no_odd_branch_point > large.no_odd_branch_point);
}

TEST_CASE("reference law") {
    CHECK(reference_distribution(3, 0)[0] == doctest::Approx(0.288788).epsilon(1e-5));
    CHECK(reference_distribution(5, 0)[0] == doctest::Approx(0.419422).epsilon(1e-5));
}

TEST_CASE("oracle sweep") {
    OracleConfig o;
    o.q = 3;
    o.dmax = 5;
    const auto r = run_oracle_sweep(o);
    CHECK(r.passed);
    CHECK(r.json.find("\"curves\": 162") != std::string::npos);
    CHECK(r.json.find("\"curves\": 18") != std::string::npos);
    o.q = 5;
    o.random_samples = 100;
    o.even_degrees = false;
    CHECK(run_oracle_sweep(o).passed);
}

TEST_CASE("degree statistics") {
    DegreeStatsConfig c;
    c.degree = 200;
    c.trials = 5000;
    const auto r = run_degree_stats(c);
    CHECK(r.passed);
    CHECK(r.json.find("a1_a4_failure_fraction") != std::string::npos);
}
