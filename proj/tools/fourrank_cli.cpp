// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fourrank/fourrank.h"

namespace {

int report_failure(fr_status s) {
    std::cerr << "error: " << fr_status_name(s) << ": " << fr_last_error() << "\n";
    return 2;
}

bool emit(char* text, const std::string& path) {
    bool ok = true;
    if (path.empty() || path == "-") {
        std::cout << text << "\n";
    } else {
        std::ofstream out(path);
        out << text << "\n";
        ok = static_cast<bool>(out);
        if (!ok) std::cerr << "error: cannot write " << path << "\n";
    }
    fr_string_free(text);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"4-ranks of hyperelliptic Jacobians over finite fields"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(fr_version()));

    // four-rank
    auto* fr = app.add_subcommand("four-rank", "4-rank of y^2 = f(x) via the Redei matrix");
    unsigned q1 = 3;
    std::string f, base;
    bool show_matrix = false, direct = false;
    std::uint64_t budget = 1000000;
    fr->add_option("--q", q1, "odd prime field size")->required();
    fr->add_option("--f", f, "coefficients of monic squarefree f, ascending, comma-separated")->required();
    fr->add_option("--p0", base, "base point (odd degree), default: canonical choice");
    fr->add_flag("--matrix", show_matrix, "print the Redei matrix");
    fr->add_flag("--direct", direct, "also compute the 4-rank from the enumerated Jacobian");
    fr->add_option("--budget", budget, "Jacobian enumeration budget");

    // dist
    auto* dist = app.add_subcommand("dist", "empirical 4-rank distribution");
    fr_experiment_config cfg;
    fr_experiment_config_init(&cfg);
    unsigned degree = 0, genus = 0;
    std::string ramified, split, inert, unramified, out_json, out_csv;
    bool runtime = false;
    dist->add_option("--q", cfg.q, "odd prime field size")->required();
    auto* dopt = dist->add_option("--d", degree, "deg f (monic mode) or total branch degree (branch-set mode)");
    auto* gopt = dist->add_option("--genus", genus, "genus; selects branch-set mode with total degree 2g+2");
    dopt->excludes(gopt);
    dist->add_option("--trials", cfg.trials, "number of draws")->check(CLI::PositiveNumber);
    dist->add_option("--seed", cfg.seed, "RNG seed");
    dist->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
    dist->add_option("--matched-draws", cfg.matched_draws, "matched-model matrices per accepted curve");
    dist->add_option("--gamma", cfg.gamma, "gamma for condition A1");
    dist->add_option("--epsilon", cfg.epsilon, "epsilon for condition A2");
    dist->add_option("--ramified", ramified, "points required in the branch set (';'-separated)");
    dist->add_option("--split", split, "points that must split");
    dist->add_option("--inert", inert, "points that must be inert");
    dist->add_option("--unramified", unramified, "points kept out of the branch set");
    dist->add_option("--json", out_json, "JSON report path ('-' for stdout)");
    dist->add_option("--csv", out_csv, "per-trial CSV path");
    dist->add_flag("--runtime", runtime, "include runtime in the JSON report");

    // oracle-sweep
    auto* sweep = app.add_subcommand("oracle-sweep", "Redei 4-rank against the enumerated Jacobian");
    unsigned q2 = 3, dmax = 5;
    std::uint64_t samples = 0, sweep_seed = 1;
    bool odd_only = false;
    std::string sweep_out;
    sweep->add_option("--q", q2, "odd prime field size")->required();
    sweep->add_option("--dmax", dmax, "largest odd degree")->required();
    sweep->add_option("--random", samples, "random curves per degree instead of all of them");
    sweep->add_option("--seed", sweep_seed, "RNG seed for --random");
    sweep->add_flag("--odd-only", odd_only, "skip substituted even-degree models");
    sweep->add_option("--json", sweep_out, "report path");

    // matstat-validate
    auto* mat = app.add_subcommand("matstat-validate", "closed forms and samplers against enumeration");
    std::uint64_t mat_seed = 1, mat_samples = 100000;
    std::string mat_out;
    mat->add_option("--seed", mat_seed, "RNG seed");
    mat->add_option("--samples", mat_samples, "samples per Monte Carlo check");
    mat->add_option("--json", mat_out, "report path");

    // degree-stats
    auto* deg = app.add_subcommand("degree-stats", "branch-degree statistics of uniform branch sets");
    unsigned q3 = 3, d3 = 200;
    std::uint64_t deg_trials = 10000, deg_seed = 1;
    double gamma = 0.5, eps = 0.1;
    std::string deg_out;
    deg->add_option("--q", q3, "odd prime field size")->required();
    deg->add_option("--d", d3, "total degree")->required();
    deg->add_option("--trials", deg_trials, "number of draws");
    deg->add_option("--seed", deg_seed, "RNG seed");
    deg->add_option("--gamma", gamma, "gamma for condition A1");
    deg->add_option("--epsilon", eps, "epsilon for condition A2");
    deg->add_option("--json", deg_out, "report path");

    CLI11_PARSE(app, argc, argv);

    if (fr->parsed()) {
        fr_curve* c = nullptr;
        fr_status s = fr_curve_new(q1, f.c_str(), base.empty() ? nullptr : base.c_str(), &c);
        if (s != FR_OK) return report_failure(s);
        char* header = nullptr;
        s = fr_curve_header_json(c, &header);
        if (s == FR_OK) emit(header, "");
        if (s == FR_OK && show_matrix) {
            char* m = nullptr;
            s = fr_curve_matrix(c, &m);
            if (s == FR_OK) std::cout << m, fr_string_free(m);
        }
        int code = 0;
        if (s == FR_OK && direct) {
            size_t redei = 0, jac = 0;
            s = fr_curve_four_rank(c, &redei);
            if (s == FR_OK) s = fr_curve_direct_four_rank(c, budget, &jac);
            if (s == FR_OK) {
                std::cout << "{\"direct_four_rank\":" << jac << ",\"agree\":" << (jac == redei ? "true" : "false") << "}\n";
                if (jac != redei) code = 1;
            }
        }
        fr_curve_free(c);
        return s == FR_OK ? code : report_failure(s);
    }

    if (dist->parsed()) {
        const bool local = !ramified.empty() || !split.empty() || !inert.empty() || !unramified.empty();
        if (gopt->count()) {
            cfg.branch_set = 1;
            cfg.degree = 2 * genus + 2;
        } else if (dopt->count()) {
            cfg.branch_set = local ? 1 : 0;
            cfg.degree = degree;
        } else {
            std::cerr << "error: one of --d or --genus is required\n";
            return 2;
        }
        cfg.ramified = ramified.empty() ? nullptr : ramified.c_str();
        cfg.split = split.empty() ? nullptr : split.c_str();
        cfg.inert = inert.empty() ? nullptr : inert.c_str();
        cfg.unramified = unramified.empty() ? nullptr : unramified.c_str();
        fr_report* r = nullptr;
        fr_status s = fr_run_experiment(&cfg, &r);
        if (s != FR_OK) return report_failure(s);
        char* js = nullptr;
        s = fr_report_json(r, runtime ? 1 : 0, &js);
        bool ok = s == FR_OK && emit(js, out_json);
        if (ok && !out_csv.empty()) {
            char* csv = nullptr;
            s = fr_report_csv(r, &csv);
            ok = s == FR_OK && emit(csv, out_csv);
        }
        fr_report_free(r);
        if (s != FR_OK) return report_failure(s);
        return ok ? 0 : 2;
    }

    int passed = 0;
    char* js = nullptr;
    fr_status s = FR_OK;
    std::string path;
    if (sweep->parsed()) {
        s = fr_oracle_sweep(q2, dmax, samples, sweep_seed, odd_only ? 0 : 1, &passed, &js);
        path = sweep_out;
    } else if (mat->parsed()) {
        s = fr_matstat_validate(mat_seed, mat_samples, &passed, &js);
        path = mat_out;
    } else {
        s = fr_degree_stats(q3, d3, deg_trials, deg_seed, gamma, eps, &passed, &js);
        path = deg_out;
    }
    if (s != FR_OK) return report_failure(s);
    if (!emit(js, path)) return 2;
    return passed ? 0 : 1;
}
