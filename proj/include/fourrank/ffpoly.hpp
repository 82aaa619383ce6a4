// SPDX-License-Identifier: Apache-2.0
//
// Arithmetic in F_q (q an odd prime) and in F_q[x]: irreducibility,
// squarefree factorization, and quadratic residue symbols.
#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fourrank/common.hpp"

namespace fourrank {

/// True iff q is an odd prime below 2^31.
bool is_odd_prime(std::uint64_t q);

/// Throws InvalidArgument unless q is an odd prime below 2^31.
void check_modulus(std::uint64_t q);

struct FieldElement {
    std::uint32_t value = 0;
    std::uint32_t q = 3;
};

std::uint32_t fq_pow(std::uint32_t a, std::uint64_t e, std::uint32_t q);
std::uint32_t fq_inv(std::uint32_t a, std::uint32_t q);

/// Quadratic character of F_q: +1, -1, or 0 for a = 0.
int chi(FieldElement a);
int chi(std::uint32_t a, std::uint32_t q);

/// Dense polynomial over F_q, coefficients in ascending degree order with no
/// trailing zeros. The zero polynomial has an empty coefficient list and
/// degree -1.
class Poly {
public:
    explicit Poly(std::uint32_t q = 3) : q_(q) {}
    Poly(std::uint32_t q, std::vector<std::uint32_t> coeffs);

    static Poly constant(std::uint32_t q, std::uint32_t c);
    static Poly x(std::uint32_t q);
    static Poly monomial(std::uint32_t q, std::uint32_t c, std::size_t k);

    std::uint32_t modulus() const noexcept { return q_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_constant() const noexcept { return c_.size() <= 1; }
    bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }
    std::uint32_t lead() const noexcept { return c_.empty() ? 0 : c_.back(); }
    std::uint32_t operator[](std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
    const std::vector<std::uint32_t>& coeffs() const noexcept { return c_; }

    friend bool operator==(const Poly&, const Poly&) = default;

private:
    void normalize();

    std::uint32_t q_;
    std::vector<std::uint32_t> c_;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Poly& a, const Poly& b);
Poly scale(const Poly& a, std::uint32_t c);

struct DivMod {
    Poly quotient;
    Poly remainder;
};
DivMod divmod(const Poly& a, const Poly& b);
Poly rem(const Poly& a, const Poly& m);
Poly exact_div(const Poly& a, const Poly& b);

/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
Poly derivative(const Poly& f);
Poly make_monic(const Poly& f);
std::uint32_t eval(const Poly& f, std::uint32_t x);

Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly modpow(const Poly& base, const BigInt& exponent, const Poly& m);
Poly modpow(const Poly& base, std::uint64_t exponent, const Poly& m);

/// Res(a, b) = lc(a)^deg(b) * prod over roots r of a of b(r).
std::uint32_t resultant(const Poly& a, const Poly& b);

bool is_squarefree(const Poly& f);
bool is_irreducible(const Poly& f);

/// A monic irreducible polynomial; irreducibility is certified on construction.
class MonicIrreducible {
public:
    explicit MonicIrreducible(Poly p);

    /// Skips the certificate. Only for polynomials produced by factorization
    /// or enumeration that already guarantee irreducibility.
    static MonicIrreducible trusted(Poly p);

    const Poly& poly() const noexcept { return p_; }
    int degree() const noexcept { return p_.degree(); }

    friend bool operator==(const MonicIrreducible&, const MonicIrreducible&) = default;
    friend std::strong_ordering operator<=>(const MonicIrreducible& a, const MonicIrreducible& b);

private:
    struct TrustedTag {};
    MonicIrreducible(Poly p, TrustedTag) : p_(std::move(p)) {}

    Poly p_;
};

/// Canonical order on polynomials: by degree, then lexicographic on the
/// ascending coefficient list.
std::strong_ordering canonical_compare(const Poly& a, const Poly& b);

struct Factorization {
    std::uint32_t lead = 1;
    std::vector<MonicIrreducible> factors;  // canonical order
};

/// Factors a squarefree polynomial (distinct-degree then equal-degree
/// splitting). The result is a pure function of f.
Factorization factor_squarefree(const Poly& f);

/// Number of monic irreducibles of degree d over F_q.
BigInt count_irreducibles(std::uint32_t q, unsigned d);

/// count_irreducibles(q, d) * q^-d, evaluated in floating point.
double irreducible_density(std::uint32_t q, unsigned d);

Poly random_monic(std::uint32_t q, unsigned d, Rng& rng);
Poly random_monic_squarefree(std::uint32_t q, unsigned d, Rng& rng);
MonicIrreducible random_monic_irreducible(std::uint32_t q, unsigned d, Rng& rng);

/// All monic irreducibles of degree d in canonical order. Requires q^d <= 2^22.
std::vector<MonicIrreducible> enumerate_irreducibles(std::uint32_t q, unsigned d);

/// Legendre symbol (f / h): 0 if h | f, else +1 or -1 according to whether f
/// is a square in F_q[x]/(h). Evaluated through the norm Res(h, f mod h).
int qr_symbol(const Poly& f, const MonicIrreducible& h);

/// Same symbol via Euler's criterion f^((q^deg h - 1)/2) mod h. Throws
/// InvariantViolation if the power is not the constant +1 or -1.
int qr_symbol_euler(const Poly& f, const MonicIrreducible& h);

/// Checks (f/g)(g/f) = (-1)^(((q-1)/2) deg f deg g).
bool reciprocity_check(const MonicIrreducible& f, const MonicIrreducible& g);

/// "2,0,1" is x^2 + 2. Rejects residues >= q.
Poly parse_poly(std::uint32_t q, std::string_view text);
std::string format_poly(const Poly& f);
std::string pretty_poly(const Poly& f);

/// A closed point of P^1 over F_q: the point at infinity or a monic irreducible.
class Place {
public:
    static Place infinity() { return Place(); }
    explicit Place(MonicIrreducible h) : finite_(std::move(h)) {}

    bool is_infinity() const noexcept { return !finite_.has_value(); }
    const MonicIrreducible& finite() const;
    int degree() const noexcept { return finite_ ? finite_->degree() : 1; }

    friend bool operator==(const Place&, const Place&) = default;
    /// By degree; infinity precedes finite places of degree 1.
    friend std::strong_ordering operator<=>(const Place& a, const Place& b);

private:
    Place() = default;
    std::optional<MonicIrreducible> finite_;
};

/// "inf" or a polynomial in text format (must be monic irreducible).
Place parse_place(std::uint32_t q, std::string_view text);
/// Semicolon-separated list of places; empty text gives an empty list.
std::vector<Place> parse_place_list(std::uint32_t q, std::string_view text);
std::string format_place(const Place& p);

}  // namespace fourrank
