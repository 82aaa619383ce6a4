// SPDX-License-Identifier: Apache-2.0
//
// Redei matrix of y^2 = f(x) and the 4-rank of the Jacobian over F_q.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fourrank/ffpoly.hpp"
#include "fourrank/matstat.hpp"

namespace fourrank {

using BranchPoint = Place;

/// Branch points of y^2 = f with a distinguished base point p0 of odd degree.
struct BranchData {
    std::uint32_t q = 3;
    Poly f;
    BranchPoint p0 = BranchPoint::infinity();
    std::vector<BranchPoint> points;  // p1..pn
    std::vector<unsigned> degrees;    // d0, d1, ..., dn

    std::size_t n() const noexcept { return points.size(); }
    /// "1/x" at infinity, otherwise the base polynomial in text format.
    std::string uniformizer() const;
};

/// Throws NotSquarefree / InvalidArgument for bad f, NoOddBranchPoint if deg f
/// is even and every factor has even degree.
BranchData build_branch_data(const Poly& f);

/// Same with a caller-chosen base point, which must be an odd-degree branch
/// point. With deg f odd only infinity is accepted.
BranchData build_branch_data(const Poly& f, const BranchPoint& p0);

/// +1 if p splits in y^2 = f, -1 if inert. RamifiedPoint if p is a branch point.
int second_order_class(const Poly& f, const BranchPoint& p);

/// Class of f at p0 with respect to the recorded uniformizer.
int base_class(const BranchData& bd);

/// Off-diagonal entry for 0-based indices i != j into bd.points.
bool redei_entry(const BranchData& bd, std::size_t i, std::size_t j);

struct RedeiMatrix {
    std::size_t n = 0;
    BitMatrix entries;                     // indexed like BranchData::points
    std::vector<std::size_t> block_order;  // even-degree indices first, then odd
    std::vector<unsigned> degrees;         // d1..dn
    std::size_t n_even = 0, n_odd = 0;
    AlternatingForm c = AlternatingForm::zero(2, 0);  // in block order

    BitMatrix block_form() const { return entries.permuted(block_order); }
};

/// Builds the matrix and checks zero row/column sums and the C-symmetry
/// relation; a failed check throws InvariantViolation.
RedeiMatrix redei_matrix(const BranchData& bd);

/// Throws InvariantViolation describing the first failed structural property.
void check_structure(const BranchData& bd, const RedeiMatrix& m);

std::size_t four_rank(const BranchData& bd);
std::size_t four_rank(const Poly& f);
std::size_t two_rank(const BranchData& bd);

/// {q, degrees, p0, C_rank, nullity, four_rank}
std::string header_json(const BranchData& bd, const RedeiMatrix& m);

}  // namespace fourrank
