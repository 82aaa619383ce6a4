// SPDX-License-Identifier: Apache-2.0
//
// Seeded, parallel experiment drivers producing JSON/CSV reports.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fourrank/ffpoly.hpp"

namespace fourrank {

enum class Mode { MonicSquarefree, BranchSet };

struct ExperimentConfig {
    std::uint32_t q = 3;
    Mode mode = Mode::MonicSquarefree;
    unsigned degree = 0;  // deg f, or total branch degree 2g + 2 in branch-set mode
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    std::vector<Place> ramified, split, inert;
    std::vector<Place> unramified;  // kept out of the branch set, no class condition
    unsigned threads = 1;
    unsigned matched_draws = 1;  // matched-model matrices per accepted curve
    double gamma = 0.5, epsilon = 0.1;
};

/// Throws InvalidArgument or Infeasible for unusable configurations.
void validate(const ExperimentConfig& cfg);

struct TrialRecord {
    std::uint64_t index = 0;
    enum class Outcome { Accepted, NoOddBranchPoint, LocalRejected } outcome = Outcome::Accepted;
    std::size_t four_rank = 0;
    std::size_t n_odd = 0, n_even = 0;  // degree parities among p1..pn
    std::size_t points = 0;
    bool a1 = false, a2 = false, a3 = false, a4 = false;
    std::vector<std::size_t> matched;  // nullity - 1 of each matched-model draw
};

struct ExperimentReport {
    ExperimentConfig config;
    std::uint64_t accepted = 0, no_odd_branch_point = 0, local_rejected = 0;
    std::vector<std::uint64_t> counts;          // by 4-rank
    std::vector<std::uint64_t> matched_counts;  // by nullity - 1 of the matched model
    std::vector<double> reference;              // mu(r)
    std::vector<TrialRecord> trials;
    double runtime_seconds = 0;

    std::vector<double> pmf() const;
    std::vector<double> matched_pmf() const;
    /// Accepted fraction of all draws (before any rejection).
    double acceptance_rate() const;
    /// Runtime is left out unless asked for, so equal configs give equal bytes.
    std::string to_json(bool with_runtime = false) const;
    std::string to_csv() const;
};

/// Dispatches on cfg.mode.
ExperimentReport run_experiment(const ExperimentConfig& cfg);
ExperimentReport run_monic_experiment(const ExperimentConfig& cfg);
ExperimentReport run_local_experiment(const ExperimentConfig& cfg);

/// mu_CL,2 if q = 3 mod 4, else mu_S,2, for r = 0..rmax.
std::vector<double> reference_distribution(std::uint32_t q, std::size_t rmax);

/// Generic pass/fail report with a JSON body.
struct CheckReport {
    bool passed = true;
    std::string json;
};

struct OracleConfig {
    std::uint32_t q = 3;
    unsigned dmax = 5;
    std::uint64_t random_samples = 0;  // 0: exhaustive; otherwise per odd degree
    std::uint64_t seed = 1;
    bool even_degrees = true;  // also check substituted even-degree models
};

/// Redei 4-rank against the enumerated Jacobian on every odd degree <= dmax,
/// plus even degrees with a rational root through the substituted model.
CheckReport run_oracle_sweep(const OracleConfig& cfg);

CheckReport run_matstat_validation(std::uint64_t seed, std::uint64_t samples = 100000);

struct DegreeStatsConfig {
    std::uint32_t q = 3;
    unsigned degree = 200;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    double gamma = 0.5, epsilon = 0.1;
};

CheckReport run_degree_stats(const DegreeStatsConfig& cfg);

}  // namespace fourrank
