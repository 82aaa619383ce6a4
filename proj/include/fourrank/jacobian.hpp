// SPDX-License-Identifier: Apache-2.0
//
// Brute-force Jacobian of y^2 = f(x), deg f odd, in Mumford representation.
// Used as an independent oracle for the Redei 4-rank.
#pragma once

#include <cstdint>
#include <vector>

#include "fourrank/ffpoly.hpp"

namespace fourrank {

/// Reduced divisor class (u, v): u monic, deg v < deg u, u | v^2 - f.
/// The identity is (1, 0).
struct MumfordDivisor {
    Poly u;
    Poly v;

    friend bool operator==(const MumfordDivisor&, const MumfordDivisor&) = default;
};

MumfordDivisor jacobian_identity(std::uint32_t q);
bool is_valid(const MumfordDivisor& d, const Poly& f);

MumfordDivisor cantor_add(const MumfordDivisor& a, const MumfordDivisor& b, const Poly& f);
MumfordDivisor cantor_negate(const MumfordDivisor& a, const Poly& f);
MumfordDivisor cantor_multiply(const MumfordDivisor& a, std::uint64_t k, const Poly& f);

struct JacobianTable {
    std::uint32_t q = 3;
    Poly f;
    unsigned genus = 0;
    std::vector<MumfordDivisor> elements;

    std::size_t order() const noexcept { return elements.size(); }
    /// Index of d in elements; throws InvariantViolation if absent.
    std::size_t index_of(const MumfordDivisor& d) const;
};

/// Every reduced pair, found by scanning all (u, v) of degree <= g.
/// BudgetExceeded if more than `budget` candidate pairs would be tested.
JacobianTable enumerate_jacobian(const Poly& f, std::uint64_t budget = 1000000);

/// (sqrt q - 1)^{2g} <= |J| <= (sqrt q + 1)^{2g}
bool within_weil_bounds(const JacobianTable& j);

/// log2 #{D : 2D = 0}
std::size_t two_rank_direct(const JacobianTable& j);
/// log2 #{2D : 4D = 0}
std::size_t four_rank_direct(const JacobianTable& j);

/// Number of affine solutions of y^2 = f(x) over F_q.
std::uint64_t affine_point_count(const Poly& f);

/// For monic squarefree f of even degree with a root a in F_q, the model
/// x = a + 1/z turns y^2 = f into y^2 = H(w) with H monic of odd degree.
struct SubstitutionCheck {
    Poly odd_model;
    std::size_t redei_four_rank = 0;   // of f, base point finite
    std::size_t direct_four_rank = 0;  // of H, from the enumerated Jacobian
    bool agree() const noexcept { return redei_four_rank == direct_four_rank; }
};

/// InvalidArgument unless deg f is even and f has a root in F_q.
Poly odd_degree_model(const Poly& f);
SubstitutionCheck substitute_and_compare(const Poly& f, std::uint64_t budget = 1000000);

}  // namespace fourrank
