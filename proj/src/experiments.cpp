// SPDX-License-Identifier: Apache-2.0
#include "fourrank/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "fourrank/jacobian.hpp"
#include "fourrank/matstat.hpp"
#include "fourrank/redei.hpp"
#include "fourrank/selection.hpp"

namespace fourrank {

using nlohmann::json;

namespace {

template <class F>
void parallel_for(std::uint64_t n, unsigned threads, F&& body) {
    const unsigned t = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, n)));
    if (t == 1) {
        for (std::uint64_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(t);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < t; ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::uint64_t i = w; i < n; i += t) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

json places_json(const std::vector<Place>& ps) {
    json j = json::array();
    for (const auto& p : ps) j.push_back(format_place(p));
    return j;
}

std::vector<double> normalize(const std::vector<std::uint64_t>& counts) {
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    std::vector<double> p(counts.size(), 0.0);
    if (total)
        for (std::size_t i = 0; i < counts.size(); ++i) p[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
    return p;
}

void bump(std::vector<std::uint64_t>& v, std::size_t k) {
    if (v.size() <= k) v.resize(k + 1, 0);
    ++v[k];
}

// Redei 4-rank of the curve plus matched-model draws, using the trial's stream.
void curve_trial(const ExperimentConfig& cfg, const Poly& f, Rng& rng, TrialRecord& rec) {
    BranchData bd;
    try {
        bd = build_branch_data(f);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoOddBranchPoint) throw;
        rec.outcome = TrialRecord::Outcome::NoOddBranchPoint;
        rec.points = factor_squarefree(f).factors.size() + (f.degree() % 2);
        return;
    }
    const RedeiMatrix m = redei_matrix(bd);
    rec.four_rank = nullity(m.entries) - 1;
    rec.n_odd = m.n_odd;
    rec.n_even = m.n_even;
    rec.points = bd.n() + 1;
    const auto od = order_degrees(bd.degrees);
    const auto c = check_conditions(od, static_cast<unsigned>(std::accumulate(bd.degrees.begin(), bd.degrees.end(), 0u)),
                                    cfg.gamma, cfg.epsilon);
    rec.a1 = c.a1;
    rec.a2 = c.a2;
    rec.a3 = c.a3;
    rec.a4 = c.a4;
    const BitMatrix cbits = m.c.matrix().to_bits();
    for (unsigned k = 0; k < cfg.matched_draws; ++k)
        rec.matched.push_back(nullity(sample_c_symmetric_zero_sums_bits(cbits, rng)) - 1);
}

ExperimentReport assemble(const ExperimentConfig& cfg, std::vector<TrialRecord> trials, double seconds) {
    ExperimentReport r;
    r.config = cfg;
    r.runtime_seconds = seconds;
    for (const auto& t : trials) {
        switch (t.outcome) {
            case TrialRecord::Outcome::Accepted:
                ++r.accepted;
                bump(r.counts, t.four_rank);
                for (auto k : t.matched) bump(r.matched_counts, k);
                break;
            case TrialRecord::Outcome::NoOddBranchPoint: ++r.no_odd_branch_point; break;
            case TrialRecord::Outcome::LocalRejected: ++r.local_rejected; break;
        }
    }
    const std::size_t width = std::max<std::size_t>({r.counts.size(), r.matched_counts.size(), 4});
    r.counts.resize(width, 0);
    r.matched_counts.resize(width, 0);
    r.reference = reference_distribution(cfg.q, width - 1);
    r.trials = std::move(trials);
    return r;
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
    check_modulus(cfg.q);
    if (cfg.trials < 1) fail(ErrorCode::InvalidArgument, "trials must be at least 1");
    if (cfg.degree < 1) fail(ErrorCode::InvalidArgument, "degree must be positive");
    std::set<Place> seen;
    for (const auto* list : {&cfg.ramified, &cfg.split, &cfg.inert, &cfg.unramified})
        for (const auto& p : *list) {
            if (!p.is_infinity() && p.finite().poly().modulus() != cfg.q) fail(ErrorCode::InvalidArgument, "point over the wrong field");
            if (!seen.insert(p).second) fail(ErrorCode::InvalidArgument, "ramified, split, inert and unramified sets must be disjoint");
        }
    if (cfg.mode == Mode::MonicSquarefree) {
        if (!seen.empty()) fail(ErrorCode::InvalidArgument, "local conditions need branch-set mode");
        return;
    }
    if (cfg.degree % 2) fail(ErrorCode::InvalidArgument, "total branch degree must be even");
    unsigned w = 0;
    for (const auto& p : cfg.ramified) w += static_cast<unsigned>(p.degree());
    if (w > cfg.degree) fail(ErrorCode::Infeasible, "ramified set exceeds the total branch degree");
    for (const auto& p : cfg.inert)
        if (p.is_infinity()) fail(ErrorCode::Infeasible, "monic models are split at infinity when unramified there");
}

std::vector<double> ExperimentReport::pmf() const { return normalize(counts); }
std::vector<double> ExperimentReport::matched_pmf() const { return normalize(matched_counts); }

double ExperimentReport::acceptance_rate() const {
    return config.trials ? static_cast<double>(accepted) / static_cast<double>(config.trials) : 0.0;
}

std::string ExperimentReport::to_json(bool with_runtime) const {
    json j;
    json c;
    c["q"] = config.q;
    c["mode"] = config.mode == Mode::MonicSquarefree ? "monic" : "branch-set";
    c["degree"] = config.degree;
    if (config.mode == Mode::BranchSet) c["genus"] = config.degree / 2 - 1;
    c["trials"] = config.trials;
    c["seed"] = config.seed;
    c["matched_draws"] = config.matched_draws;
    c["ramified"] = places_json(config.ramified);
    c["split"] = places_json(config.split);
    c["inert"] = places_json(config.inert);
    c["unramified"] = places_json(config.unramified);
    c["gamma"] = config.gamma;
    c["epsilon"] = config.epsilon;
    j["config"] = c;
    j["accepted"] = accepted;
    j["rejected"] = {{"no_odd_branch_point", no_odd_branch_point}, {"local_conditions", local_rejected}};
    j["acceptance_rate"] = acceptance_rate();
    j["counts"] = counts;
    j["pmf"] = pmf();
    j["matched_counts"] = matched_counts;
    j["matched_pmf"] = matched_pmf();
    j["reference"] = reference;
    j["tv_matched"] = total_variation(pmf(), matched_pmf());
    j["tv_reference"] = total_variation(pmf(), reference);
    std::uint64_t a1a4_fail = 0, no_a = 0;
    std::uint64_t flags[4] = {0, 0, 0, 0};
    std::map<std::string, std::uint64_t> parities;
    double points = 0;
    for (const auto& t : trials) {
        points += static_cast<double>(t.points);
        if (t.outcome == TrialRecord::Outcome::Accepted) {
            ++no_a;
            if (!(t.a1 && t.a4)) ++a1a4_fail;
            flags[0] += t.a1;
            flags[1] += t.a2;
            flags[2] += t.a3;
            flags[3] += t.a4;
            ++parities[std::to_string(t.n_even) + "," + std::to_string(t.n_odd)];
        }
    }
    const double acc = no_a ? static_cast<double>(no_a) : 1.0;
    j["condition_fractions"] = {{"A1", flags[0] / acc}, {"A2", flags[1] / acc}, {"A3", flags[2] / acc}, {"A4", flags[3] / acc}};
    j["parity_counts"] = parities;  // "n_even,n_odd" among p1..pn
    j["mean_points"] = trials.empty() ? 0.0 : points / static_cast<double>(trials.size());
    j["a1_a4_failure_fraction"] = no_a ? static_cast<double>(a1a4_fail) / static_cast<double>(no_a) : 0.0;
    if (with_runtime) j["runtime_seconds"] = runtime_seconds;
    return j.dump(2);
}

std::string ExperimentReport::to_csv() const {
    std::ostringstream os;
    os << "trial,outcome,four_rank,n_odd,n_even,points,a1,a2,a3,a4,matched\n";
    for (const auto& t : trials) {
        const char* outcome = t.outcome == TrialRecord::Outcome::Accepted           ? "accepted"
                              : t.outcome == TrialRecord::Outcome::NoOddBranchPoint ? "no_odd_branch_point"
                                                                                    : "local_rejected";
        os << t.index << ',' << outcome << ',' << t.four_rank << ',' << t.n_odd << ',' << t.n_even << ',' << t.points << ','
           << t.a1 << ',' << t.a2 << ',' << t.a3 << ',' << t.a4 << ',';
        for (std::size_t k = 0; k < t.matched.size(); ++k) os << (k ? ";" : "") << t.matched[k];
        os << '\n';
    }
    return os.str();
}

std::vector<double> reference_distribution(std::uint32_t q, std::size_t rmax) {
    std::vector<double> mu;
    for (std::size_t r = 0; r <= rmax; ++r)
        mu.push_back(q % 4 == 3 ? mu_cl(2, static_cast<unsigned>(r)) : mu_s(2, static_cast<unsigned>(r)));
    return mu;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    return cfg.mode == Mode::MonicSquarefree ? run_monic_experiment(cfg) : run_local_experiment(cfg);
}

ExperimentReport run_monic_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    if (cfg.mode != Mode::MonicSquarefree) fail(ErrorCode::InvalidArgument, "expected monic mode");
    const auto start = std::chrono::steady_clock::now();
    std::vector<TrialRecord> trials(cfg.trials);
    parallel_for(cfg.trials, cfg.threads, [&](std::uint64_t s) {
        Rng rng = make_stream(cfg.seed, s);
        trials[s].index = s;
        const Poly f = random_monic_squarefree(cfg.q, cfg.degree, rng);
        curve_trial(cfg, f, rng, trials[s]);
    });
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return assemble(cfg, std::move(trials), secs);
}

ExperimentReport run_local_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    if (cfg.mode != Mode::BranchSet) fail(ErrorCode::InvalidArgument, "expected branch-set mode");
    const auto start = std::chrono::steady_clock::now();
    std::vector<Place> excluded = cfg.split;
    excluded.insert(excluded.end(), cfg.inert.begin(), cfg.inert.end());
    excluded.insert(excluded.end(), cfg.unramified.begin(), cfg.unramified.end());
    const WeightedUniverse universe(cfg.q, cfg.ramified, excluded);
    const SubsetSampler sampler(universe, cfg.degree - universe.included_weight());
    std::vector<Rng> streams;
    streams.reserve(cfg.trials);
    for (std::uint64_t s = 0; s < cfg.trials; ++s) streams.push_back(make_stream(cfg.seed, s));
    const auto sets = sampler.sample(streams, true);
    std::vector<TrialRecord> trials(cfg.trials);
    parallel_for(cfg.trials, cfg.threads, [&](std::uint64_t s) {
        auto& rec = trials[s];
        rec.index = s;
        Poly f = Poly::constant(cfg.q, 1);
        for (const auto& p : sets[s].points)
            if (!p.is_infinity()) f = f * p.finite().poly();
        for (const auto& p : cfg.split)
            if (second_order_class(f, p) != 1) rec.outcome = TrialRecord::Outcome::LocalRejected;
        for (const auto& p : cfg.inert)
            if (second_order_class(f, p) != -1) rec.outcome = TrialRecord::Outcome::LocalRejected;
        if (rec.outcome == TrialRecord::Outcome::LocalRejected) {
            rec.points = sets[s].size();
            return;
        }
        curve_trial(cfg, f, streams[s], rec);
    });
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return assemble(cfg, std::move(trials), secs);
}

// ---------------------------------------------------------------------------
// Oracle sweep

namespace {

Poly poly_from_counter(std::uint32_t q, std::uint64_t c, unsigned d) {
    std::vector<std::uint32_t> co(d + 1, 0);
    for (unsigned i = 0; i < d; ++i, c /= q) co[i] = static_cast<std::uint32_t>(c % q);
    co[d] = 1;
    return Poly(q, std::move(co));
}

bool has_root(const Poly& f) {
    for (std::uint32_t a = 0; a < f.modulus(); ++a)
        if (eval(f, a) == 0) return true;
    return false;
}

}  // namespace

CheckReport run_oracle_sweep(const OracleConfig& cfg) {
    check_modulus(cfg.q);
    if (cfg.dmax < 1) fail(ErrorCode::InvalidArgument, "dmax must be positive");
    CheckReport out;
    json degrees = json::array();
    json mismatches = json::array();
    const unsigned top = cfg.even_degrees ? cfg.dmax + 1 : cfg.dmax;
    for (unsigned d = 1; d <= top; ++d) {
        const bool odd = d % 2 == 1;
        if (!odd && (!cfg.even_degrees || d < 2)) continue;
        std::vector<Poly> curves;
        if (cfg.random_samples == 0) {
            const double space = std::pow(static_cast<double>(cfg.q), d);
            if (space > static_cast<double>(1u << 22)) fail(ErrorCode::BudgetExceeded, "exhaustive sweep too large");
            for (std::uint64_t c = 0; c < static_cast<std::uint64_t>(space); ++c) {
                Poly f = poly_from_counter(cfg.q, c, d);
                if (is_squarefree(f) && (odd || has_root(f))) curves.push_back(std::move(f));
            }
        } else {
            Rng rng = make_stream(cfg.seed, d);
            while (curves.size() < cfg.random_samples) {
                Poly f = random_monic_squarefree(cfg.q, d, rng);
                if (odd || has_root(f)) curves.push_back(std::move(f));
            }
        }
        std::map<std::size_t, std::uint64_t> hist;
        std::uint64_t bad = 0;
        for (const auto& f : curves) {
            std::size_t redei = 0, direct = 0;
            bool ok = true;
            if (odd) {
                const auto bd = build_branch_data(f);
                redei = four_rank(bd);
                const auto jac = enumerate_jacobian(f);
                direct = four_rank_direct(jac);
                ok = redei == direct && two_rank(bd) == two_rank_direct(jac) && within_weil_bounds(jac);
            } else {
                const auto r = substitute_and_compare(f);
                redei = r.redei_four_rank;
                direct = r.direct_four_rank;
                ok = r.agree();
            }
            ++hist[redei];
            if (!ok) {
                ++bad;
                if (mismatches.size() < 20)
                    mismatches.push_back({{"f", format_poly(f)}, {"redei", redei}, {"direct", direct}});
            }
        }
        json h = json::object();
        for (auto [k, v] : hist) h[std::to_string(k)] = v;
        degrees.push_back({{"degree", d},
                           {"model", odd ? "odd" : "substituted"},
                           {"curves", curves.size()},
                           {"mismatches", bad},
                           {"four_rank_counts", h}});
        if (bad) out.passed = false;
    }
    json j;
    j["q"] = cfg.q;
    j["dmax"] = cfg.dmax;
    j["mode"] = cfg.random_samples ? "random" : "exhaustive";
    if (cfg.random_samples) {
        j["samples_per_degree"] = cfg.random_samples;
        j["seed"] = cfg.seed;
    }
    j["degrees"] = degrees;
    j["mismatches"] = mismatches;
    j["passed"] = out.passed;
    out.json = j.dump(2);
    return out;
}

// ---------------------------------------------------------------------------
// Matrix statistics validation

namespace {

// All alternating n x n forms over F_ell.
std::vector<AlternatingForm> all_forms(unsigned ell, std::size_t n) {
    const auto F = GaloisField::get(ell);
    const std::size_t pairs = n * (n - 1) / 2;
    std::vector<AlternatingForm> out;
    std::vector<std::uint8_t> digits(pairs, 0);
    for (;;) {
        MatFl c(F, n, n);
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                c(i, j) = digits[k++];
                c(j, i) = F->neg(c(i, j));
            }
        out.emplace_back(std::move(c));
        std::size_t i = 0;
        while (i < pairs && ++digits[i] == ell) digits[i++] = 0;
        if (i == pairs) break;
    }
    return out;
}

std::vector<std::vector<std::uint8_t>> all_vectors(unsigned ell, std::size_t n) {
    std::vector<std::vector<std::uint8_t>> out;
    std::vector<std::uint8_t> v(n, 0);
    for (;;) {
        std::size_t i = 0;
        while (i < n && ++v[i] == ell) v[i++] = 0;
        if (i == n) break;
        out.push_back(v);
    }
    return out;
}

bool annihilates(const MatFl& m, const std::vector<std::uint8_t>& v) {
    const GaloisField& F = m.field();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::uint8_t s = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) s = F.add(s, F.mul(m(i, j), v[j]));
        if (s) return false;
    }
    return true;
}

bool exact_equal(const RankDistribution& a, const std::vector<Rational>& b) {
    if (a.exact.size() != b.size()) return false;
    for (std::size_t i = 0; i < b.size(); ++i)
        if (a.exact[i] != b[i]) return false;
    return true;
}

RankDistribution support_pmf(const std::vector<MatFl>& support, std::size_t n, unsigned ell, MatrixModel model) {
    RankDistribution d;
    d.model = model;
    d.n = n;
    d.ell = ell;
    std::vector<BigInt> counts(n + 1, 0);
    for (const auto& m : support) ++counts[nullity(m)];
    for (auto& c : counts) {
        d.exact.emplace_back(c, BigInt(support.size()));
        d.probs.push_back(static_cast<double>(d.exact.back()));
    }
    return d;
}

}  // namespace

CheckReport run_matstat_validation(std::uint64_t seed, std::uint64_t samples) {
    CheckReport out;
    json checks = json::array();
    auto record = [&](const std::string& name, bool ok, json detail) {
        detail["name"] = name;
        detail["passed"] = ok;
        checks.push_back(detail);
        if (!ok) out.passed = false;
    };

    // Closed forms and samplers against exhaustive enumeration.
    for (auto [ell, nmax] : {std::pair<unsigned, std::size_t>{2, 4}, {3, 3}}) {
        for (std::size_t n = 1; n <= nmax; ++n) {
            const auto uni = exhaustive_pmf(ell, static_cast<unsigned>(n), MatrixModel::Uniform);
            const auto sym = exhaustive_pmf(ell, static_cast<unsigned>(n), MatrixModel::Symmetric);
            std::vector<Rational> u, s;
            for (unsigned r = 0; r <= n; ++r) {
                u.push_back(uniform_pmf(ell, static_cast<unsigned>(n), r));
                s.push_back(macwilliams_pmf(ell, static_cast<unsigned>(n), r));
            }
            record("uniform_pmf", exact_equal(uni, u), {{"ell", ell}, {"n", n}});
            record("macwilliams_pmf", exact_equal(sym, s), {{"ell", ell}, {"n", n}});

            bool support_ok = true, zero_ok = true, kernel_ok = true;
            std::size_t forms = 0, zero_forms = 0, subspaces = 0;
            const auto vectors = all_vectors(ell, n);
            for (const auto& c : all_forms(ell, n)) {
                ++forms;
                const auto all = exhaustive_pmf(ell, static_cast<unsigned>(n), MatrixModel::CSymmetric, &c);
                const auto support = c_symmetric_support(c, false);
                const std::set<std::vector<std::uint8_t>> distinct = [&] {
                    std::set<std::vector<std::uint8_t>> s2;
                    for (const auto& m : support) s2.insert(m.data());
                    return s2;
                }();
                if (distinct.size() != support.size() ||
                    !exact_equal(all, support_pmf(support, n, ell, MatrixModel::CSymmetric).exact))
                    support_ok = false;
                if (c.rows_sum_to_zero()) {
                    ++zero_forms;
                    const auto zall = exhaustive_pmf(ell, static_cast<unsigned>(n), MatrixModel::CSymmetricZeroSums, &c);
                    const auto zsupport = c_symmetric_support(c, true);
                    if (!exact_equal(zall, support_pmf(zsupport, n, ell, MatrixModel::CSymmetricZeroSums).exact))
                        zero_ok = false;
                }
                // kernel_contains_prob over every 1- and 2-dimensional V (via spanning pairs).
                for (std::size_t a = 0; a < vectors.size(); ++a) {
                    for (std::size_t b = a; b < vectors.size(); ++b) {
                        std::vector<std::vector<std::uint8_t>> basis{vectors[a]};
                        if (b != a) basis.push_back(vectors[b]);
                        MatFl bm(GaloisField::get(ell), basis.size(), n);
                        for (std::size_t x = 0; x < basis.size(); ++x)
                            for (std::size_t y = 0; y < n; ++y) bm(x, y) = basis[x][y];
                        if (rank(bm) != basis.size()) continue;
                        ++subspaces;
                        std::uint64_t hits = 0;
                        for (const auto& m : support) {
                            bool all_zero = true;
                            for (const auto& v : basis) all_zero = all_zero && annihilates(m, v);
                            if (all_zero) ++hits;
                        }
                        if (kernel_contains_prob(c, basis) != Rational(BigInt(hits), BigInt(support.size()))) kernel_ok = false;
                    }
                }
            }
            record("c_symmetric_support", support_ok, {{"ell", ell}, {"n", n}, {"forms", forms}});
            record("c_symmetric_zero_sums_support", zero_ok, {{"ell", ell}, {"n", n}, {"forms", zero_forms}});
            record("kernel_contains_prob", kernel_ok, {{"ell", ell}, {"n", n}, {"subspaces_checked", subspaces}});
        }
    }

    // Limits sum to one.
    for (unsigned ell : {2u, 3u}) {
        double scl = 0, ss = 0;
        for (unsigned r = 0; r <= 40; ++r) {
            scl += mu_cl(ell, r);
            ss += mu_s(ell, r);
        }
        record("mu_sums", std::abs(scl - 1) < 1e-12 && std::abs(ss - 1) < 1e-12, {{"ell", ell}, {"mu_cl", scl}, {"mu_s", ss}});
    }

    // C-symmetric limit: n = 40, rank C = 20.
    {
        const auto c = standard_redei_form(20, 20, 3).matrix().to_bits();
        std::vector<std::uint64_t> counts(41, 0);
        Rng rng = make_stream(seed, 0);
        for (std::uint64_t s = 0; s < samples; ++s) ++counts[nullity(sample_c_symmetric_bits(c, rng))];
        const auto p = normalize(counts);
        double worst = 0;
        json diffs = json::array();
        for (unsigned r = 0; r <= 2; ++r) {
            const double d = std::abs(p[r] - mu_cl(2, r));
            worst = std::max(worst, d);
            diffs.push_back(d);
        }
        record("c_symmetric_limit", worst < 0.01, {{"n", 40}, {"rank_c", 20}, {"samples", samples}, {"abs_diff", diffs}});
    }

    // Rank trend at n = 20: distance to the uniform law shrinks as rank C grows.
    {
        json errs = json::array();
        std::vector<double> e;
        for (std::size_t cr : {2u, 6u, 12u, 20u}) {
            const auto c = standard_redei_form(20 - cr, cr, 3).matrix().to_bits();
            std::vector<std::uint64_t> counts(21, 0);
            Rng rng = make_stream(seed, 100 + cr);
            for (std::uint64_t s = 0; s < samples; ++s) ++counts[nullity(sample_c_symmetric_bits(c, rng))];
            const auto p = normalize(counts);
            double err = 0;
            for (unsigned r = 0; r <= 2; ++r) err += std::abs(p[r] - static_cast<double>(uniform_pmf(2, 20, r)));
            e.push_back(err);
            errs.push_back({{"rank_c", cr}, {"error", err}});
        }
        const bool monotone = std::is_sorted(e.rbegin(), e.rend());
        record("c_symmetric_trend", e.front() > e.back(), {{"errors", errs}, {"monotone", monotone}});
    }

    // Per-draw properties: isotropic kernels and the remove-column relation.
    {
        bool iso = true, drop = true;
        Rng rng = make_stream(seed, 7);
        for (unsigned ell : {2u, 3u}) {
            const auto F = GaloisField::get(ell);
            for (int trial = 0; trial < 2000; ++trial) {
                const std::size_t n = 2 + trial % 5;
                const std::size_t n_odd = n % 2 ? n : n - 1;  // odd block keeps row sums zero
                MatFl cm(F, n, n);
                for (std::size_t i = n - n_odd; i < n; ++i)
                    for (std::size_t j = n - n_odd; j < n; ++j)
                        if (i != j) cm(i, j) = i < j ? 1 : F->neg(1);
                AlternatingForm c(cm);
                const MatFl m = sample_c_symmetric(c, rng);
                // Kernel vectors v (right kernel) satisfy v^T C v' = 0 pairwise.
                std::vector<std::vector<std::uint8_t>> ker;
                for (const auto& v : all_vectors(ell, n))
                    if (annihilates(m, v)) ker.push_back(v);
                for (const auto& v : ker)
                    for (const auto& w : ker) {
                        std::uint8_t s = 0;
                        for (std::size_t i = 0; i < n; ++i)
                            for (std::size_t j = 0; j < n; ++j) s = F->add(s, F->mul(v[i], F->mul(cm(i, j), w[j])));
                        if (s) iso = false;
                    }
                if (ell == 2 || c.rows_sum_to_zero()) {
                    if (!c.rows_sum_to_zero()) continue;
                    const MatFl z = sample_c_symmetric_zero_sums(c, rng);
                    if (nullity(z) != nullity(z.without_last_row_col()) + 1) drop = false;
                }
            }
        }
        record("kernel_isotropic", iso, json::object());
        record("remove_column", drop, json::object());
    }

    // Mixing statistic sanity.
    {
        const auto s = mixing_stat(4, 4, 1, 1, 0);
        Rational total = 0;
        for (unsigned d = 0; d <= 5; ++d) total += mixing_stat(6, 5, 3, 2, d).value;
        record("mixing_stat", s.value == Rational(9, 16) && total == 1, {{"value", s.value.str()}, {"sum", total.str()}});
    }

    json j;
    j["seed"] = seed;
    j["samples"] = samples;
    j["checks"] = checks;
    j["passed"] = out.passed;
    out.json = j.dump(2);
    return out;
}

// ---------------------------------------------------------------------------
// Degree statistics

CheckReport run_degree_stats(const DegreeStatsConfig& cfg) {
    check_modulus(cfg.q);
    if (cfg.degree < 1 || cfg.trials < 1) fail(ErrorCode::InvalidArgument, "degree and trials must be positive");
    CheckReport out;
    const WeightedUniverse u(cfg.q);
    const SubsetSampler sampler(u, cfg.degree);
    std::vector<Rng> streams;
    for (std::uint64_t s = 0; s < cfg.trials; ++s) streams.push_back(make_stream(cfg.seed, s));
    const auto sets = sampler.sample(streams, false);

    const double logd = std::log(static_cast<double>(cfg.degree));
    double mean = 0;
    std::uint64_t fail_a1a4 = 0, d0_even = 0;
    std::uint64_t a[4] = {0, 0, 0, 0};
    std::vector<std::uint64_t> npoints;
    std::vector<std::vector<std::uint64_t>> low(4);  // weight i = 1..3 counts
    for (const auto& ms : sets) {
        mean += static_cast<double>(ms.size());
        bump(npoints, ms.size());
        const auto od = order_degrees(ms.degrees);
        if (!od.d0_odd) ++d0_even;
        const auto c = check_conditions(od, cfg.degree, cfg.gamma, cfg.epsilon);
        a[0] += c.a1;
        a[1] += c.a2;
        a[2] += c.a3;
        a[3] += c.a4;
        if (!(c.a1 && c.a4)) ++fail_a1a4;
        for (unsigned i = 1; i <= 3; ++i)
            bump(low[i], static_cast<std::size_t>(std::count(ms.degrees.begin(), ms.degrees.end(), i)));
    }
    const double n = static_cast<double>(cfg.trials);
    mean /= n;

    // Number of points against Poisson(log d).
    const auto pn = normalize(npoints);
    std::vector<double> poisson(pn.size() + 40, 0.0);
    for (std::size_t k = 0; k < poisson.size(); ++k)
        poisson[k] = std::exp(-logd + static_cast<double>(k) * std::log(logd) - std::lgamma(static_cast<double>(k) + 1));
    const double tv_poisson = total_variation(pn, poisson);

    // Low-weight counts against the independent binomial model.
    std::vector<std::vector<std::uint64_t>> zlow(4);
    Rng zr = make_stream(cfg.seed, cfg.trials + 1);
    for (std::uint64_t s = 0; s < cfg.trials; ++s) {
        const auto z = zi_model(u, 3, zr);
        for (unsigned i = 1; i <= 3; ++i) bump(zlow[i], z[i]);
    }
    double tv_zi = 0;
    for (unsigned i = 1; i <= 3; ++i) tv_zi = std::max(tv_zi, total_variation(normalize(low[i]), normalize(zlow[i])));

    const bool mean_ok = std::abs(mean - logd) < 0.5;
    out.passed = mean_ok && tv_poisson < 0.15 && tv_zi < 0.05;
    json j;
    j["q"] = cfg.q;
    j["degree"] = cfg.degree;
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["gamma"] = cfg.gamma;
    j["epsilon"] = cfg.epsilon;
    j["log_subset_count"] = sampler.log_count();
    j["mean_points"] = mean;
    j["log_d"] = logd;
    j["mean_points_ok"] = mean_ok;
    j["points_pmf"] = pn;
    j["tv_points_vs_poisson"] = tv_poisson;
    j["tv_low_weight_vs_binomial_model"] = tv_zi;
    j["condition_fractions"] = {{"A1", a[0] / n}, {"A2", a[1] / n}, {"A3", a[2] / n}, {"A4", a[3] / n}};
    j["a1_a4_failure_fraction"] = static_cast<double>(fail_a1a4) / n;
    j["d0_even_fraction"] = static_cast<double>(d0_even) / n;
    j["passed"] = out.passed;
    out.json = j.dump(2);
    return out;
}

}  // namespace fourrank
