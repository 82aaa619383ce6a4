// SPDX-License-Identifier: Apache-2.0
#include "fourrank/redei.hpp"

#include <algorithm>

#include <json.hpp>

namespace fourrank {

namespace {

int plus(int symbol) { return symbol < 0 ? 1 : 0; }

int checked_symbol(const Poly& f, const MonicIrreducible& h) {
    const int s = qr_symbol(f, h);
    if (s == 0) fail(ErrorCode::InvariantViolation, "residue symbol vanished between distinct branch points");
    return s;
}

int power(int symbol, unsigned e) { return (e % 2 == 0) ? 1 : symbol; }

std::vector<BranchPoint> branch_set(const Poly& f) {
    if (f.degree() < 1) fail(ErrorCode::InvalidArgument, "f must have positive degree");
    if (!f.is_monic()) fail(ErrorCode::InvalidArgument, "f must be monic");
    if (!is_squarefree(f)) fail(ErrorCode::NotSquarefree, "f is not squarefree");
    std::vector<BranchPoint> pts;
    for (auto& h : factor_squarefree(f).factors) pts.emplace_back(h);
    if (f.degree() % 2) pts.push_back(BranchPoint::infinity());
    std::sort(pts.begin(), pts.end());
    return pts;
}

BranchData assemble(const Poly& f, std::vector<BranchPoint> pts, const BranchPoint& p0) {
    BranchData bd;
    bd.q = f.modulus();
    bd.f = f;
    bd.p0 = p0;
    bd.degrees.push_back(static_cast<unsigned>(p0.degree()));
    for (auto& p : pts) {
        if (p == p0) continue;
        bd.degrees.push_back(static_cast<unsigned>(p.degree()));
        bd.points.push_back(std::move(p));
    }
    return bd;
}

}  // namespace

std::string BranchData::uniformizer() const { return p0.is_infinity() ? "1/x" : format_poly(p0.finite().poly()); }

BranchData build_branch_data(const Poly& f) {
    auto pts = branch_set(f);
    if (f.degree() % 2) return assemble(f, std::move(pts), BranchPoint::infinity());
    // pts is sorted by degree then canonically, so the first odd-degree point is the base.
    for (const auto& p : pts)
        if (p.degree() % 2) return assemble(f, pts, p);
    fail(ErrorCode::NoOddBranchPoint, "every branch point has even degree");
}

BranchData build_branch_data(const Poly& f, const BranchPoint& p0) {
    auto pts = branch_set(f);
    if (std::find(pts.begin(), pts.end(), p0) == pts.end()) fail(ErrorCode::InvalidArgument, "base point is not a branch point");
    if (p0.degree() % 2 == 0) fail(ErrorCode::InvalidArgument, "base point must have odd degree");
    if (f.degree() % 2 && !p0.is_infinity()) fail(ErrorCode::InvalidArgument, "odd-degree f needs the base point at infinity");
    return assemble(f, std::move(pts), p0);
}

int second_order_class(const Poly& f, const BranchPoint& p) {
    if (!f.is_monic()) fail(ErrorCode::InvalidArgument, "f must be monic");
    if (p.is_infinity()) {
        if (f.degree() % 2) fail(ErrorCode::RamifiedPoint, "infinity is ramified for odd-degree f");
        return 1;
    }
    const int s = qr_symbol(f, p.finite());
    if (s == 0) fail(ErrorCode::RamifiedPoint, "point divides f");
    return s;
}

int base_class(const BranchData& bd) {
    if (bd.p0.is_infinity()) return 1;
    const Poly& h0 = bd.p0.finite().poly();
    return checked_symbol(exact_div(bd.f, h0), bd.p0.finite());
}

bool redei_entry(const BranchData& bd, std::size_t i, std::size_t j) {
    if (i == j || i >= bd.n() || j >= bd.n()) fail(ErrorCode::InvalidArgument, "entry indices must be distinct and in range");
    const auto& hi = bd.points[i];
    const auto& hj = bd.points[j];
    if (hi.is_infinity() || hj.is_infinity()) fail(ErrorCode::InvariantViolation, "infinity cannot be a non-base point here");
    const int base = base_class(bd);
    if (bd.p0.is_infinity()) return (plus(checked_symbol(hj.finite().poly(), hi.finite())) ^ plus(base)) != 0;
    const auto& h0 = bd.p0.finite();
    const unsigned di = bd.degrees[i + 1], dj = bd.degrees[j + 1];
    const int s = power(checked_symbol(hj.finite().poly(), h0), di) * checked_symbol(hj.finite().poly(), hi.finite()) *
                  power(checked_symbol(h0.poly(), hi.finite()), dj);
    return (plus(s) ^ plus(power(base, di * dj))) != 0;
}

RedeiMatrix redei_matrix(const BranchData& bd) {
    if (bd.degrees.empty() || bd.degrees[0] % 2 == 0) fail(ErrorCode::NoOddBranchPoint, "base point must have odd degree");
    RedeiMatrix m;
    m.n = bd.n();
    m.entries = BitMatrix(m.n, m.n);
    m.degrees.assign(bd.degrees.begin() + 1, bd.degrees.end());
    for (std::size_t i = 0; i < m.n; ++i) {
        bool diag = false;
        for (std::size_t j = 0; j < m.n; ++j) {
            if (i == j) continue;
            const bool e = redei_entry(bd, i, j);
            m.entries.set(i, j, e);
            diag ^= e;
        }
        m.entries.set(i, i, diag);
    }
    for (std::size_t i = 0; i < m.n; ++i)
        if (m.degrees[i] % 2 == 0) m.block_order.push_back(i);
    m.n_even = m.block_order.size();
    for (std::size_t i = 0; i < m.n; ++i)
        if (m.degrees[i] % 2) m.block_order.push_back(i);
    m.n_odd = m.n - m.n_even;
    m.c = standard_redei_form(m.n_even, m.n_odd, bd.q);
    check_structure(bd, m);
    return m;
}

void check_structure(const BranchData& bd, const RedeiMatrix& m) {
    const std::size_t n = m.n;
    for (std::size_t i = 0; i < n; ++i) {
        bool row = false, col = false;
        for (std::size_t j = 0; j < n; ++j) {
            row ^= m.entries.get(i, j);
            col ^= m.entries.get(j, i);
        }
        if (row) fail(ErrorCode::InvariantViolation, "nonzero row sum in Redei matrix");
        if (col) fail(ErrorCode::InvariantViolation, "nonzero column sum in Redei matrix");
    }
    const unsigned half = (bd.q - 1) / 2;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool want = (half * m.degrees[i] * m.degrees[j]) % 2;
            if ((m.entries.get(i, j) != m.entries.get(j, i)) != want)
                fail(ErrorCode::InvariantViolation, "Redei matrix violates the symmetry relation");
        }
    const BitMatrix b = m.block_form();
    const MatFl& c = m.c.matrix();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if ((b.get(i, j) != b.get(j, i)) != (c(i, j) != 0))
                fail(ErrorCode::InvariantViolation, "M - M^T differs from the standard form");
}

std::size_t four_rank(const BranchData& bd) {
    const auto m = redei_matrix(bd);
    const std::size_t k = nullity(m.entries);
    if (k == 0) fail(ErrorCode::InvariantViolation, "all-ones vector missing from the kernel");
    return k - 1;
}

std::size_t four_rank(const Poly& f) { return four_rank(build_branch_data(f)); }

std::size_t two_rank(const BranchData& bd) { return bd.n() == 0 ? 0 : bd.n() - 1; }

std::string header_json(const BranchData& bd, const RedeiMatrix& m) {
    const std::size_t k = nullity(m.entries);
    nlohmann::json j;
    j["q"] = bd.q;
    j["degrees"] = bd.degrees;
    j["p0"] = format_place(bd.p0);
    j["C_rank"] = m.c.rank();
    j["nullity"] = k;
    j["four_rank"] = k - 1;
    return j.dump();
}

}  // namespace fourrank
