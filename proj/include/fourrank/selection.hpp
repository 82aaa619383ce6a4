// SPDX-License-Identifier: Apache-2.0
//
// Uniform random branch sets of fixed total degree on P^1 over F_q, the
// independent-binomial comparison model, and the degree conditions A1..A4.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "fourrank/ffpoly.hpp"

namespace fourrank {

/// Closed points of P^1 over F_q minus `excluded` and `included`; the latter
/// are added to every sampled set.
class WeightedUniverse {
public:
    /// Throws InvalidArgument if the lists overlap or repeat a point.
    WeightedUniverse(std::uint32_t q, std::vector<Place> included = {}, std::vector<Place> excluded = {});

    std::uint32_t q() const noexcept { return q_; }
    const std::vector<Place>& included() const noexcept { return included_; }
    const std::vector<Place>& excluded() const noexcept { return excluded_; }
    unsigned included_weight() const noexcept { return included_weight_; }

    /// m_i: available points of degree i (infinity counts in degree 1).
    BigInt count(unsigned i) const;
    /// m_i * q^-i in floating point.
    double scaled_count(unsigned i) const;
    /// Number of included or excluded points of degree i.
    unsigned removed(unsigned i) const;
    bool available(const Place& p) const;

private:
    std::uint32_t q_;
    std::vector<Place> included_, excluded_;
    std::map<unsigned, unsigned> removed_;
    unsigned included_weight_ = 0;
};

/// Number of subsets of available points with total degree d.
BigInt count_subsets(const WeightedUniverse& u, unsigned d);

struct DegreeMultiset {
    std::vector<unsigned> degrees;  // ascending, included points counted
    std::vector<Place> points;      // sorted; empty when points were not drawn
    std::size_t size() const noexcept { return degrees.size(); }
};

/// Uniform sampler over subsets of total degree d (plus the included points).
/// Per-weight counts come from a backward pass over a normalized counting
/// table; the table is checkpointed so memory stays O(d^1.5).
class SubsetSampler {
public:
    SubsetSampler(const WeightedUniverse& u, unsigned d);

    unsigned total_degree() const noexcept { return d_; }
    /// log of the number of subsets, from the normalized table.
    double log_count() const noexcept { return log_count_; }

    /// One draw per stream; draw s depends only on streams[s].
    std::vector<DegreeMultiset> sample(std::vector<Rng>& streams, bool with_points) const;
    DegreeMultiset sample_one(Rng& rng, bool with_points) const;

private:
    std::vector<double> next_row(const std::vector<double>& prev, unsigned i) const;
    std::vector<double> weights(unsigned i, unsigned kmax) const;

    const WeightedUniverse* u_;
    unsigned d_, block_;
    std::vector<std::vector<double>> checkpoints_;  // rows 0, B, 2B, ...
    std::vector<double> top_;                       // row d
    double log_count_ = 0;
};

/// Every subset of total degree d (plus included points), sorted. For toy
/// universes only; BudgetExceeded past `budget` subsets.
std::vector<std::vector<Place>> enumerate_subsets(const WeightedUniverse& u, unsigned d, std::uint64_t budget = 1u << 20);

/// Independent counts Z_i ~ Binomial(m_i, q^-i / (1 + q^-i)), i = 1..max_weight.
/// Index 0 of the result is unused.
std::vector<std::uint64_t> zi_model(const WeightedUniverse& u, unsigned max_weight, Rng& rng);

struct OrderedDegrees {
    unsigned d0 = 0;
    std::vector<unsigned> rest;  // d1 <= ... <= dn
    bool d0_odd = false;
    std::size_t n() const noexcept { return rest.size(); }
};

/// d0 has minimal 2-adic valuation, then minimal value; the rest ascending.
OrderedDegrees order_degrees(const std::vector<unsigned>& degrees);

struct Conditions {
    bool a1 = false, a2 = false, a3 = false, a4 = false;
};

/// Natural logarithms throughout; d is the total degree.
Conditions check_conditions(const OrderedDegrees& od, unsigned d, double gamma, double epsilon);

}  // namespace fourrank
