// SPDX-License-Identifier: Apache-2.0
#include "fourrank/selection.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>

namespace fourrank {

namespace {

// Exact counts are used while q^i stays below 2^52.
bool small_weight(std::uint32_t q, unsigned i) { return i * std::log2(static_cast<double>(q)) < 52; }

BigInt binom_big(const BigInt& m, unsigned k) {
    if (m < k) return 0;
    BigInt r = 1;
    for (unsigned j = 0; j < k; ++j) r = r * (m - j) / (j + 1);
    return r;
}

std::vector<Place> points_of_degree(std::uint32_t q, unsigned i) {
    std::vector<Place> out;
    if (i == 1) out.push_back(Place::infinity());
    for (auto& h : enumerate_irreducibles(q, i)) out.emplace_back(std::move(h));
    return out;
}

// Cache of all places of a given small degree, shared by every sampler.
const std::vector<Place>& cached_points(std::uint32_t q, unsigned i) {
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, unsigned>, std::vector<Place>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find({q, i});
    if (it == cache.end()) it = cache.emplace(std::make_pair(q, i), points_of_degree(q, i)).first;
    return it->second;
}

bool enumerable(std::uint32_t q, unsigned i) { return std::pow(static_cast<double>(q), i) <= 4096; }

}  // namespace

// ---------------------------------------------------------------------------
// WeightedUniverse

WeightedUniverse::WeightedUniverse(std::uint32_t q, std::vector<Place> included, std::vector<Place> excluded)
    : q_(q), included_(std::move(included)), excluded_(std::move(excluded)) {
    check_modulus(q);
    std::set<Place> seen;
    for (const auto* list : {&included_, &excluded_})
        for (const auto& p : *list) {
            if (!p.is_infinity() && p.finite().poly().modulus() != q) fail(ErrorCode::InvalidArgument, "point over the wrong field");
            if (!seen.insert(p).second) fail(ErrorCode::InvalidArgument, "point listed twice in the universe");
            ++removed_[static_cast<unsigned>(p.degree())];
        }
    for (const auto& p : included_) included_weight_ += static_cast<unsigned>(p.degree());
    std::sort(included_.begin(), included_.end());
    std::sort(excluded_.begin(), excluded_.end());
}

unsigned WeightedUniverse::removed(unsigned i) const {
    auto it = removed_.find(i);
    return it == removed_.end() ? 0 : it->second;
}

BigInt WeightedUniverse::count(unsigned i) const {
    if (i == 0) fail(ErrorCode::InvalidArgument, "weights start at 1");
    BigInt m = count_irreducibles(q_, i);
    if (i == 1) m += 1;
    return m - removed(i);
}

double WeightedUniverse::scaled_count(unsigned i) const {
    if (i == 0) fail(ErrorCode::InvalidArgument, "weights start at 1");
    if (small_weight(q_, i))
        return static_cast<double>(count(i)) / std::pow(static_cast<double>(q_), static_cast<double>(i));
    return irreducible_density(q_, i) - removed(i) * std::pow(static_cast<double>(q_), -static_cast<double>(i));
}

bool WeightedUniverse::available(const Place& p) const {
    return !std::binary_search(included_.begin(), included_.end(), p) &&
           !std::binary_search(excluded_.begin(), excluded_.end(), p);
}

BigInt count_subsets(const WeightedUniverse& u, unsigned d) {
    std::vector<BigInt> row(d + 1, 0);
    row[0] = 1;
    for (unsigned i = 1; i <= d; ++i) {
        const BigInt m = u.count(i);
        std::vector<BigInt> c;
        for (unsigned k = 0; k * i <= d; ++k) {
            c.push_back(binom_big(m, k));
            if (c.back() == 0) break;
        }
        std::vector<BigInt> next(d + 1, 0);
        for (unsigned t = 0; t <= d; ++t)
            for (unsigned k = 0; k < c.size() && k * i <= t; ++k)
                if (row[t - k * i] != 0) next[t] += c[k] * row[t - k * i];
        row = std::move(next);
    }
    return row[d];
}

// ---------------------------------------------------------------------------
// SubsetSampler

SubsetSampler::SubsetSampler(const WeightedUniverse& u, unsigned d) : u_(&u), d_(d) {
    block_ = d <= 2048 ? 1 : static_cast<unsigned>(std::ceil(std::sqrt(static_cast<double>(d))));
    std::vector<double> row(d + 1, 0.0);
    row[0] = 1.0;
    checkpoints_.push_back(row);
    for (unsigned i = 1; i <= d; ++i) {
        row = next_row(row, i);
        if (i % block_ == 0 && i < d) checkpoints_.push_back(row);
    }
    top_ = std::move(row);
    if (!(top_[d] > 0)) fail(ErrorCode::Infeasible, "no subset has the requested total degree");
    log_count_ = std::log(top_[d]) + d * std::log(static_cast<double>(u.q()));
}

std::vector<double> SubsetSampler::weights(unsigned i, unsigned kmax) const {
    // w(k) = C(m_i, k) q^(-ik), built from the scaled count.
    const double s = u_->scaled_count(i);
    const double step = std::pow(static_cast<double>(u_->q()), -static_cast<double>(i));
    std::optional<BigInt> exact;
    if (small_weight(u_->q(), i)) exact = u_->count(i);
    std::vector<double> w{1.0};
    for (unsigned k = 1; k <= kmax; ++k) {
        if (exact && BigInt(k) > *exact) break;
        const double next = w.back() * (s - (k - 1) * step) / k;
        if (!(next > 1e-30)) break;
        w.push_back(next);
    }
    return w;
}

std::vector<double> SubsetSampler::next_row(const std::vector<double>& prev, unsigned i) const {
    const auto w = weights(i, d_ / i);
    std::vector<double> row(d_ + 1, 0.0);
    for (unsigned t = 0; t <= d_; ++t) {
        double s = 0;
        for (unsigned k = 0; k < w.size() && k * i <= t; ++k) s += w[k] * prev[t - k * i];
        row[t] = s;
    }
    return row;
}

std::vector<DegreeMultiset> SubsetSampler::sample(std::vector<Rng>& streams, bool with_points) const {
    const std::size_t ns = streams.size();
    std::vector<unsigned> remaining(ns, d_);
    std::vector<std::vector<std::pair<unsigned, unsigned>>> counts(ns);  // (weight, k)
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    // Rows 0..d-1 are needed in descending order; rebuild one block at a time.
    const unsigned last_row = d_ == 0 ? 0 : d_ - 1;
    for (long blk = static_cast<long>(last_row / block_); d_ > 0 && blk >= 0; --blk) {
        const unsigned lo = static_cast<unsigned>(blk) * block_;
        const unsigned hi = std::min(lo + block_ - 1, last_row);
        std::vector<std::vector<double>> rows;
        rows.push_back(checkpoints_[static_cast<std::size_t>(blk)]);
        for (unsigned r = lo + 1; r <= hi; ++r) rows.push_back(next_row(rows.back(), r));
        for (unsigned j = hi + 1; j-- > lo;) {
            const unsigned i = j + 1;
            const auto& prev = rows[j - lo];
            const auto w = weights(i, d_ / i);
            for (std::size_t s = 0; s < ns; ++s) {
                const unsigned t = remaining[s];
                if (t < i) continue;
                double total = 0;
                for (unsigned k = 0; k < w.size() && k * i <= t; ++k) total += w[k] * prev[t - k * i];
                double x = unif(streams[s]) * total;
                unsigned pick = 0;
                for (unsigned k = 0; k < w.size() && k * i <= t; ++k) {
                    const double p = w[k] * prev[t - k * i];
                    if (p <= 0) continue;
                    pick = k;
                    if (x < p) break;
                    x -= p;
                }
                if (pick) {
                    counts[s].emplace_back(i, pick);
                    remaining[s] = t - pick * i;
                }
            }
        }
    }
    std::vector<DegreeMultiset> out(ns);
    for (std::size_t s = 0; s < ns; ++s) {
        if (remaining[s] != 0) fail(ErrorCode::InvariantViolation, "subset sampler did not exhaust the degree");
        auto& ms = out[s];
        for (const auto& p : u_->included()) ms.degrees.push_back(static_cast<unsigned>(p.degree()));
        for (auto [i, k] : counts[s]) ms.degrees.insert(ms.degrees.end(), k, i);
        std::sort(ms.degrees.begin(), ms.degrees.end());
        if (!with_points) continue;
        ms.points = u_->included();
        const std::uint32_t q = u_->q();
        for (auto [i, k] : counts[s]) {
            if (enumerable(q, i)) {
                std::vector<Place> pool;
                for (const auto& p : cached_points(q, i))
                    if (u_->available(p)) pool.push_back(p);
                for (unsigned a = 0; a < k; ++a) {
                    std::uniform_int_distribution<std::size_t> pick(a, pool.size() - 1);
                    std::swap(pool[a], pool[pick(streams[s])]);
                    ms.points.push_back(pool[a]);
                }
            } else {
                std::set<Place> chosen;
                while (chosen.size() < k) {
                    Place p(random_monic_irreducible(q, i, streams[s]));
                    if (u_->available(p)) chosen.insert(std::move(p));
                }
                ms.points.insert(ms.points.end(), chosen.begin(), chosen.end());
            }
        }
        std::sort(ms.points.begin(), ms.points.end());
    }
    return out;
}

DegreeMultiset SubsetSampler::sample_one(Rng& rng, bool with_points) const {
    std::vector<Rng> one{rng};
    auto out = sample(one, with_points);
    rng = one[0];
    return std::move(out[0]);
}

std::vector<std::vector<Place>> enumerate_subsets(const WeightedUniverse& u, unsigned d, std::uint64_t budget) {
    std::vector<Place> pool;
    for (unsigned i = 1; i <= d; ++i) {
        if (!enumerable(u.q(), i)) fail(ErrorCode::BudgetExceeded, "universe too large to enumerate");
        for (const auto& p : cached_points(u.q(), i))
            if (u.available(p)) pool.push_back(p);
    }
    std::vector<std::vector<Place>> out;
    std::vector<Place> cur;
    auto rec = [&](auto&& self, std::size_t from, unsigned left) -> void {
        if (left == 0) {
            std::vector<Place> s = cur;
            s.insert(s.end(), u.included().begin(), u.included().end());
            std::sort(s.begin(), s.end());
            out.push_back(std::move(s));
            if (out.size() > budget) fail(ErrorCode::BudgetExceeded, "too many subsets to enumerate");
            return;
        }
        for (std::size_t j = from; j < pool.size(); ++j) {
            const unsigned w = static_cast<unsigned>(pool[j].degree());
            if (w > left) break;  // pool is sorted by degree
            cur.push_back(pool[j]);
            self(self, j + 1, left - w);
            cur.pop_back();
        }
    };
    rec(rec, 0, d);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::uint64_t> zi_model(const WeightedUniverse& u, unsigned max_weight, Rng& rng) {
    std::vector<std::uint64_t> z(max_weight + 1, 0);
    const double q = u.q();
    for (unsigned i = 1; i <= max_weight; ++i) {
        const double x = std::pow(q, -static_cast<double>(i));
        const double p = x / (1 + x);
        if (small_weight(u.q(), i)) {
            const auto m = static_cast<std::int64_t>(u.count(i));
            if (m <= 0) continue;
            std::binomial_distribution<std::int64_t> b(m, p);
            z[i] = static_cast<std::uint64_t>(b(rng));
        } else {
            std::poisson_distribution<std::int64_t> po(u.scaled_count(i) / (1 + x));
            z[i] = static_cast<std::uint64_t>(po(rng));
        }
    }
    return z;
}

// ---------------------------------------------------------------------------
// Degree conditions

OrderedDegrees order_degrees(const std::vector<unsigned>& degrees) {
    if (degrees.empty()) fail(ErrorCode::InvalidArgument, "empty degree multiset");
    auto v2 = [](unsigned x) { return x == 0 ? 64u : static_cast<unsigned>(std::countr_zero(x)); };
    std::size_t best = 0;
    for (std::size_t k = 1; k < degrees.size(); ++k) {
        const auto a = std::make_pair(v2(degrees[k]), degrees[k]);
        const auto b = std::make_pair(v2(degrees[best]), degrees[best]);
        if (a < b) best = k;
    }
    OrderedDegrees od;
    od.d0 = degrees[best];
    od.d0_odd = od.d0 % 2 == 1;
    for (std::size_t k = 0; k < degrees.size(); ++k)
        if (k != best) od.rest.push_back(degrees[k]);
    std::sort(od.rest.begin(), od.rest.end());
    return od;
}

Conditions check_conditions(const OrderedDegrees& od, unsigned d, double gamma, double epsilon) {
    Conditions c;
    const double n = static_cast<double>(od.n());
    c.a1 = d > 0 && n >= (1 - gamma) * std::log(static_cast<double>(d));
    std::size_t odd = od.d0 % 2, even = 1 - od.d0 % 2;
    for (auto x : od.rest) (x % 2 ? odd : even) += 1;
    c.a2 = odd >= epsilon * n && even >= epsilon * n;
    const double cut = od.n() >= 1 ? std::sqrt(std::max(0.0, std::log(n))) : 0.0;
    c.a3 = false;
    c.a4 = true;
    for (std::size_t i = 1; i <= od.n(); ++i) {
        const unsigned di = od.rest[i - 1];
        if (static_cast<double>(i) < cut) {
            if (di % 2) c.a3 = true;
        } else if (di < 2 * i * (i - 1)) {
            c.a4 = false;
        }
    }
    return c;
}

}  // namespace fourrank
