// SPDX-License-Identifier: Apache-2.0
#include "fourrank/fourrank.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "fourrank/experiments.hpp"
#include "fourrank/jacobian.hpp"
#include "fourrank/matstat.hpp"
#include "fourrank/redei.hpp"

using namespace fourrank;

struct fr_curve {
    BranchData bd;
    RedeiMatrix m;
};

struct fr_report {
    ExperimentReport r;
};

namespace {

thread_local std::string last_error;

template <class F>
fr_status guard(F&& body) {
    try {
        body();
        last_error.clear();
        return FR_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return static_cast<fr_status>(static_cast<int>(e.code()));
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return FR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return FR_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    if (!p) fail(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void copy_out(const std::vector<double>& v, double* out, std::size_t cap, std::size_t* len) {
    need(len, "len");
    if (cap && !out) fail(ErrorCode::InvalidArgument, "out is null");
    for (std::size_t i = 0; i < v.size() && i < cap; ++i) out[i] = v[i];
    *len = v.size();
}

std::vector<Place> places(std::uint32_t q, const char* text) { return text ? parse_place_list(q, text) : std::vector<Place>{}; }

}  // namespace

extern "C" {

const char* fr_version(void) { return "0.1.0"; }

const char* fr_status_name(fr_status s) {
    switch (s) {
        case FR_OK: return "ok";
        case FR_INTERNAL: return "internal error";
        default: return to_string(static_cast<ErrorCode>(s));
    }
}

const char* fr_last_error(void) { return last_error.c_str(); }

void fr_string_free(char* s) { std::free(s); }

fr_status fr_curve_new(uint32_t q, const char* f, const char* base_point, fr_curve** out) {
    return guard([&] {
        need(f, "f");
        need(out, "out");
        *out = nullptr;
        check_modulus(q);
        const Poly poly = parse_poly(q, f);
        auto c = std::make_unique<fr_curve>();
        c->bd = base_point ? build_branch_data(poly, parse_place(q, base_point)) : build_branch_data(poly);
        c->m = redei_matrix(c->bd);
        *out = c.release();
    });
}

void fr_curve_free(fr_curve* c) { delete c; }

fr_status fr_curve_four_rank(const fr_curve* c, size_t* out) {
    return guard([&] {
        need(c, "curve");
        need(out, "out");
        *out = nullity(c->m.entries) - 1;
    });
}

fr_status fr_curve_two_rank(const fr_curve* c, size_t* out) {
    return guard([&] {
        need(c, "curve");
        need(out, "out");
        *out = two_rank(c->bd);
    });
}

fr_status fr_curve_header_json(const fr_curve* c, char** out) {
    return guard([&] {
        need(c, "curve");
        need(out, "out");
        *out = dup(header_json(c->bd, c->m));
    });
}

fr_status fr_curve_matrix(const fr_curve* c, char** out) {
    return guard([&] {
        need(c, "curve");
        need(out, "out");
        std::string s;
        for (const auto& row : c->m.entries.to_rows()) s += row + "\n";
        *out = dup(s);
    });
}

fr_status fr_curve_direct_four_rank(const fr_curve* c, uint64_t budget, size_t* out) {
    return guard([&] {
        need(c, "curve");
        need(out, "out");
        if (c->bd.f.degree() % 2) {
            *out = four_rank_direct(enumerate_jacobian(c->bd.f, budget));
        } else {
            *out = substitute_and_compare(c->bd.f, budget).direct_four_rank;
        }
    });
}

fr_status fr_qr_symbol(uint32_t q, const char* f, const char* h, int* out) {
    return guard([&] {
        need(f, "f");
        need(h, "h");
        need(out, "out");
        check_modulus(q);
        *out = qr_symbol(parse_poly(q, f), MonicIrreducible(parse_poly(q, h)));
    });
}

fr_status fr_mu(uint32_t ell, unsigned r, int symmetric, double* out) {
    return guard([&] {
        need(out, "out");
        *out = symmetric ? mu_s(ell, r) : mu_cl(ell, r);
    });
}

void fr_experiment_config_init(fr_experiment_config* cfg) {
    if (!cfg) return;
    const ExperimentConfig d;
    *cfg = fr_experiment_config{d.q,      0, d.degree, d.trials, d.seed, nullptr, nullptr, nullptr, nullptr, d.threads,
                                d.matched_draws, d.gamma, d.epsilon};
}

fr_status fr_run_experiment(const fr_experiment_config* cfg, fr_report** out) {
    return guard([&] {
        need(cfg, "config");
        need(out, "out");
        *out = nullptr;
        check_modulus(cfg->q);
        ExperimentConfig c;
        c.q = cfg->q;
        c.mode = cfg->branch_set ? Mode::BranchSet : Mode::MonicSquarefree;
        c.degree = cfg->degree;
        c.trials = cfg->trials;
        c.seed = cfg->seed;
        c.ramified = places(c.q, cfg->ramified);
        c.split = places(c.q, cfg->split);
        c.inert = places(c.q, cfg->inert);
        c.unramified = places(c.q, cfg->unramified);
        c.threads = cfg->threads;
        c.matched_draws = cfg->matched_draws;
        c.gamma = cfg->gamma;
        c.epsilon = cfg->epsilon;
        auto r = std::make_unique<fr_report>();
        r->r = run_experiment(c);
        *out = r.release();
    });
}

void fr_report_free(fr_report* r) { delete r; }

fr_status fr_report_json(const fr_report* r, int with_runtime, char** out) {
    return guard([&] {
        need(r, "report");
        need(out, "out");
        *out = dup(r->r.to_json(with_runtime != 0));
    });
}

fr_status fr_report_csv(const fr_report* r, char** out) {
    return guard([&] {
        need(r, "report");
        need(out, "out");
        *out = dup(r->r.to_csv());
    });
}

fr_status fr_report_outcomes(const fr_report* r, uint64_t* accepted, uint64_t* no_odd_branch_point, uint64_t* local_rejected) {
    return guard([&] {
        need(r, "report");
        if (accepted) *accepted = r->r.accepted;
        if (no_odd_branch_point) *no_odd_branch_point = r->r.no_odd_branch_point;
        if (local_rejected) *local_rejected = r->r.local_rejected;
    });
}

fr_status fr_report_acceptance_rate(const fr_report* r, double* out) {
    return guard([&] {
        need(r, "report");
        need(out, "out");
        *out = r->r.acceptance_rate();
    });
}

fr_status fr_report_pmf(const fr_report* r, double* out, size_t cap, size_t* len) {
    return guard([&] {
        need(r, "report");
        copy_out(r->r.pmf(), out, cap, len);
    });
}

fr_status fr_report_matched_pmf(const fr_report* r, double* out, size_t cap, size_t* len) {
    return guard([&] {
        need(r, "report");
        copy_out(r->r.matched_pmf(), out, cap, len);
    });
}

fr_status fr_report_reference(const fr_report* r, double* out, size_t cap, size_t* len) {
    return guard([&] {
        need(r, "report");
        copy_out(r->r.reference, out, cap, len);
    });
}

fr_status fr_oracle_sweep(uint32_t q, unsigned dmax, uint64_t random_samples, uint64_t seed, int even_degrees, int* passed,
                          char** json) {
    return guard([&] {
        need(passed, "passed");
        OracleConfig c;
        c.q = q;
        c.dmax = dmax;
        c.random_samples = random_samples;
        c.seed = seed;
        c.even_degrees = even_degrees != 0;
        const auto r = run_oracle_sweep(c);
        *passed = r.passed;
        if (json) *json = dup(r.json);
    });
}

fr_status fr_matstat_validate(uint64_t seed, uint64_t samples, int* passed, char** json) {
    return guard([&] {
        need(passed, "passed");
        const auto r = run_matstat_validation(seed, samples);
        *passed = r.passed;
        if (json) *json = dup(r.json);
    });
}

fr_status fr_degree_stats(uint32_t q, unsigned degree, uint64_t trials, uint64_t seed, double gamma, double epsilon, int* passed,
                          char** json) {
    return guard([&] {
        need(passed, "passed");
        DegreeStatsConfig c;
        c.q = q;
        c.degree = degree;
        c.trials = trials;
        c.seed = seed;
        c.gamma = gamma;
        c.epsilon = epsilon;
        const auto r = run_degree_stats(c);
        *passed = r.passed;
        if (json) *json = dup(r.json);
    });
}

}  // extern "C"
