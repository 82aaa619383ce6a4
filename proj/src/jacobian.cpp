// SPDX-License-Identifier: Apache-2.0
#include "fourrank/jacobian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "fourrank/redei.hpp"

namespace fourrank {

namespace {

struct XGcd {
    Poly g, s, t;  // g = s*a + t*b, g monic (or zero)
};

XGcd xgcd(const Poly& a, const Poly& b) {
    const std::uint32_t q = a.modulus();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(q, 1), s1(q);
    Poly t0(q), t1 = Poly::constant(q, 1);
    while (!r1.is_zero()) {
        auto [quot, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = s0 - quot * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = t0 - quot * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    const std::uint32_t inv = fq_inv(r0.lead(), q);
    return {scale(r0, inv), scale(s0, inv), scale(t0, inv)};
}

void check_curve(const Poly& f) {
    if (!f.is_monic() || f.degree() % 2 == 0) fail(ErrorCode::InvalidArgument, "Jacobian oracle needs monic f of odd degree");
}

std::vector<std::uint32_t> key_of(const MumfordDivisor& d) {
    std::vector<std::uint32_t> k = d.u.coeffs();
    k.push_back(0xffffffffu);
    k.insert(k.end(), d.v.coeffs().begin(), d.v.coeffs().end());
    return k;
}

// All polynomials of degree < k (monic of degree k when monic is set), by counter.
Poly from_counter(std::uint32_t q, std::uint64_t c, unsigned k, bool monic) {
    std::vector<std::uint32_t> co(k + (monic ? 1 : 0), 0);
    for (unsigned i = 0; i < k; ++i, c /= q) co[i] = static_cast<std::uint32_t>(c % q);
    if (monic) co[k] = 1;
    return Poly(q, std::move(co));
}

std::size_t exact_log2(std::size_t n) {
    if (n == 0 || (n & (n - 1))) fail(ErrorCode::InvariantViolation, "subgroup order is not a power of two");
    std::size_t r = 0;
    while (n > 1) {
        n >>= 1;
        ++r;
    }
    return r;
}

}  // namespace

MumfordDivisor jacobian_identity(std::uint32_t q) { return {Poly::constant(q, 1), Poly(q)}; }

bool is_valid(const MumfordDivisor& d, const Poly& f) {
    if (!d.u.is_monic() || d.v.degree() >= d.u.degree()) return false;
    if (2 * d.u.degree() > f.degree() - 1) return false;
    return rem(d.v * d.v - f, d.u).is_zero();
}

MumfordDivisor cantor_add(const MumfordDivisor& a, const MumfordDivisor& b, const Poly& f) {
    check_curve(f);
    if (!is_valid(a, f) || !is_valid(b, f)) fail(ErrorCode::InvalidArgument, "invalid Mumford pair");
    const int g = (f.degree() - 1) / 2;
    const auto [d1, e1, e2] = xgcd(a.u, b.u);
    const auto [d, c1, c2] = xgcd(d1, a.v + b.v);
    Poly u = exact_div(a.u * b.u, d * d);
    Poly v = (c1 * e1) * a.u * b.v + (c1 * e2) * b.u * a.v + c2 * (a.v * b.v + f);
    v = rem(exact_div(v, d), u);
    while (u.degree() > g) {
        Poly u2 = make_monic(exact_div(f - v * v, u));
        v = rem(-v, u2);
        u = std::move(u2);
    }
    u = make_monic(u);
    v = rem(v, u);
    return {u, v};
}

MumfordDivisor cantor_negate(const MumfordDivisor& a, const Poly& f) {
    if (!is_valid(a, f)) fail(ErrorCode::InvalidArgument, "invalid Mumford pair");
    return {a.u, rem(-a.v, a.u)};
}

MumfordDivisor cantor_multiply(const MumfordDivisor& a, std::uint64_t k, const Poly& f) {
    MumfordDivisor acc = jacobian_identity(f.modulus()), base = a;
    for (; k; k >>= 1) {
        if (k & 1) acc = cantor_add(acc, base, f);
        base = cantor_add(base, base, f);
    }
    return acc;
}

std::size_t JacobianTable::index_of(const MumfordDivisor& d) const {
    auto it = std::find(elements.begin(), elements.end(), d);
    if (it == elements.end()) fail(ErrorCode::InvariantViolation, "divisor missing from the Jacobian table");
    return static_cast<std::size_t>(it - elements.begin());
}

JacobianTable enumerate_jacobian(const Poly& f, std::uint64_t budget) {
    check_curve(f);
    if (!is_squarefree(f)) fail(ErrorCode::NotSquarefree, "f is not squarefree");
    const std::uint32_t q = f.modulus();
    JacobianTable j;
    j.q = q;
    j.f = f;
    j.genus = static_cast<unsigned>((f.degree() - 1) / 2);
    double candidates = 0;
    for (unsigned k = 0; k <= j.genus; ++k) candidates += std::pow(static_cast<double>(q), 2.0 * k);
    if (candidates > static_cast<double>(budget)) fail(ErrorCode::BudgetExceeded, "Jacobian enumeration exceeds the budget");
    for (unsigned k = 0; k <= j.genus; ++k) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < k; ++i) count *= q;
        for (std::uint64_t cu = 0; cu < count; ++cu) {
            const Poly u = from_counter(q, cu, k, true);
            for (std::uint64_t cv = 0; cv < count; ++cv) {
                Poly v = from_counter(q, cv, k, false);
                if (rem(v * v - f, u).is_zero()) j.elements.push_back({u, std::move(v)});
            }
        }
    }
    return j;
}

bool within_weil_bounds(const JacobianTable& j) {
    const double s = std::sqrt(static_cast<double>(j.q));
    const double lo = std::pow(s - 1, 2.0 * j.genus), hi = std::pow(s + 1, 2.0 * j.genus);
    const double n = static_cast<double>(j.order());
    return n >= lo - 1e-9 && n <= hi + 1e-9;
}

std::size_t two_rank_direct(const JacobianTable& j) {
    std::size_t count = 0;
    const auto id = jacobian_identity(j.q);
    for (const auto& d : j.elements)
        if (cantor_add(d, d, j.f) == id) ++count;
    return exact_log2(count);
}

std::size_t four_rank_direct(const JacobianTable& j) {
    const auto id = jacobian_identity(j.q);
    std::set<std::vector<std::uint32_t>> doubles;
    for (const auto& d : j.elements) {
        const auto d2 = cantor_add(d, d, j.f);
        if (cantor_add(d2, d2, j.f) == id) doubles.insert(key_of(d2));
    }
    return exact_log2(doubles.size());
}

std::uint64_t affine_point_count(const Poly& f) {
    const std::uint32_t q = f.modulus();
    std::uint64_t n = 0;
    for (std::uint32_t x = 0; x < q; ++x) n += 1 + chi(eval(f, x), q);
    return n;
}

Poly odd_degree_model(const Poly& f) {
    const std::uint32_t q = f.modulus();
    if (!f.is_monic() || f.degree() < 2 || f.degree() % 2) fail(ErrorCode::InvalidArgument, "need monic f of even degree");
    std::uint32_t a = 0;
    while (a < q && eval(f, a) != 0) ++a;
    if (a == q) fail(ErrorCode::InvalidArgument, "f has no root in F_q");
    const int e = f.degree();
    // P(z) = z^E f(a + 1/z) = sum_k c_k (a z + 1)^k z^(E - k)
    const Poly az1(q, {1, a});
    Poly p(q), pw = Poly::constant(q, 1);
    for (int k = 0; k <= e; ++k) {
        p = p + scale(pw, f[static_cast<std::size_t>(k)]) * Poly::monomial(q, 1, static_cast<std::size_t>(e - k));
        pw = pw * az1;
    }
    const int d = p.degree();
    if (d != e - 1) fail(ErrorCode::InvariantViolation, "substituted model has unexpected degree");
    // H(w) = c^(D-1) P(w / c), monic; c^(D-1) is a square since D - 1 is even.
    const std::uint32_t c = p.lead();
    std::vector<std::uint32_t> h(static_cast<std::size_t>(d) + 1);
    const std::uint32_t cinv = fq_inv(c, q);
    std::uint32_t pow = fq_pow(c, static_cast<std::uint64_t>(d - 1), q);
    for (int k = 0; k <= d; ++k) {
        h[static_cast<std::size_t>(k)] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(p[static_cast<std::size_t>(k)]) * pow % q);
        pow = static_cast<std::uint32_t>(static_cast<std::uint64_t>(pow) * cinv % q);
    }
    Poly out(q, std::move(h));
    if (!out.is_monic()) fail(ErrorCode::InvariantViolation, "substituted model is not monic");
    return out;
}

SubstitutionCheck substitute_and_compare(const Poly& f, std::uint64_t budget) {
    SubstitutionCheck r;
    r.odd_model = odd_degree_model(f);
    r.redei_four_rank = four_rank(f);
    r.direct_four_rank = four_rank_direct(enumerate_jacobian(r.odd_model, budget));
    return r;
}

}  // namespace fourrank
