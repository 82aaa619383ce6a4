// SPDX-License-Identifier: Apache-2.0
#include "fourrank/ffpoly.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <sstream>

namespace fourrank {

namespace {

void check_same_field(const Poly& a, const Poly& b) {
    if (a.modulus() != b.modulus()) fail(ErrorCode::InvalidArgument, "polynomials over different fields");
}

int moebius(unsigned n) {
    int mu = 1;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}

}  // namespace

bool is_odd_prime(std::uint64_t q) {
    if (q < 3 || q % 2 == 0 || q >= (1ull << 31)) return false;
    for (std::uint64_t d = 3; d * d <= q; d += 2)
        if (q % d == 0) return false;
    return true;
}

void check_modulus(std::uint64_t q) {
    if (!is_odd_prime(q)) fail(ErrorCode::InvalidArgument, "q must be an odd prime below 2^31, got " + std::to_string(q));
}

std::uint32_t fq_pow(std::uint32_t a, std::uint64_t e, std::uint32_t q) {
    std::uint64_t result = 1 % q, base = a % q;
    while (e) {
        if (e & 1) result = result * base % q;
        base = base * base % q;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

std::uint32_t fq_inv(std::uint32_t a, std::uint32_t q) {
    if (a % q == 0) fail(ErrorCode::InvalidArgument, "inverse of zero");
    return fq_pow(a, q - 2, q);
}

int chi(std::uint32_t a, std::uint32_t q) {
    a %= q;
    if (a == 0) return 0;
    return fq_pow(a, (q - 1) / 2, q) == 1 ? 1 : -1;
}

int chi(FieldElement a) { return chi(a.value, a.q); }

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(std::uint32_t q, std::vector<std::uint32_t> coeffs) : q_(q), c_(std::move(coeffs)) {
    for (auto& v : c_) v %= q_;
    normalize();
}

void Poly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(std::uint32_t q, std::uint32_t c) { return Poly(q, {c}); }

Poly Poly::x(std::uint32_t q) { return Poly(q, {0, 1}); }

Poly Poly::monomial(std::uint32_t q, std::uint32_t c, std::size_t k) {
    std::vector<std::uint32_t> v(k + 1, 0);
    v[k] = c;
    return Poly(q, std::move(v));
}

Poly operator+(const Poly& a, const Poly& b) {
    check_same_field(a, b);
    const std::uint32_t q = a.modulus();
    std::vector<std::uint32_t> r(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint32_t s = a[i] + b[i];
        r[i] = s >= q ? s - q : s;
    }
    return Poly(q, std::move(r));
}

Poly operator-(const Poly& a) {
    const std::uint32_t q = a.modulus();
    std::vector<std::uint32_t> r(a.coeffs());
    for (auto& v : r) v = v ? q - v : 0;
    return Poly(q, std::move(r));
}

Poly operator-(const Poly& a, const Poly& b) {
    check_same_field(a, b);
    const std::uint32_t q = a.modulus();
    std::vector<std::uint32_t> r(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] >= b[i] ? a[i] - b[i] : a[i] + q - b[i];
    return Poly(q, std::move(r));
}

Poly operator*(const Poly& a, const Poly& b) {
    check_same_field(a, b);
    if (a.is_zero() || b.is_zero()) return Poly(a.modulus());
    const std::uint64_t q = a.modulus();
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    std::vector<std::uint64_t> acc(x.size() + y.size() - 1, 0);
    if (q < (1u << 16)) {
        // Products stay below 2^32, so up to 2^32 terms accumulate without overflow.
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!x[i]) continue;
            const std::uint64_t xi = x[i];
            for (std::size_t j = 0; j < y.size(); ++j) acc[i + j] += xi * y[j];
        }
    } else {
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!x[i]) continue;
            const std::uint64_t xi = x[i];
            for (std::size_t j = 0; j < y.size(); ++j) acc[i + j] = (acc[i + j] + xi * y[j]) % q;
        }
    }
    std::vector<std::uint32_t> r(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<std::uint32_t>(acc[i] % q);
    return Poly(a.modulus(), std::move(r));
}

Poly scale(const Poly& a, std::uint32_t c) {
    const std::uint64_t q = a.modulus();
    std::vector<std::uint32_t> r(a.coeffs());
    for (auto& v : r) v = static_cast<std::uint32_t>(v * std::uint64_t(c % q) % q);
    return Poly(a.modulus(), std::move(r));
}

DivMod divmod(const Poly& a, const Poly& b) {
    check_same_field(a, b);
    if (b.is_zero()) fail(ErrorCode::InvalidArgument, "division by zero polynomial");
    const std::uint64_t q = a.modulus();
    if (a.degree() < b.degree()) return {Poly(a.modulus()), a};
    std::vector<std::uint32_t> r(a.coeffs());
    const auto& m = b.coeffs();
    const std::size_t db = m.size() - 1;
    const std::uint64_t inv = fq_inv(b.lead(), a.modulus());
    std::vector<std::uint32_t> quot(r.size() - db, 0);
    for (std::size_t k = r.size(); k-- > db;) {
        const std::uint64_t t = r[k] * inv % q;
        quot[k - db] = static_cast<std::uint32_t>(t);
        if (!t) continue;
        const std::uint64_t neg = q - t;
        const std::size_t base = k - db;
        for (std::size_t j = 0; j < db; ++j) r[base + j] = static_cast<std::uint32_t>((r[base + j] + neg * m[j]) % q);
        r[k] = 0;
    }
    r.resize(db);
    return {Poly(a.modulus(), std::move(quot)), Poly(a.modulus(), std::move(r))};
}

Poly rem(const Poly& a, const Poly& m) {
    check_same_field(a, m);
    if (m.is_zero()) fail(ErrorCode::InvalidArgument, "zero modulus");
    if (a.degree() < m.degree()) return a;
    const std::uint64_t q = a.modulus();
    std::vector<std::uint32_t> r(a.coeffs());
    const auto& mc = m.coeffs();
    const std::size_t dm = mc.size() - 1;
    const std::uint64_t inv = m.is_monic() ? 1 : fq_inv(m.lead(), a.modulus());
    for (std::size_t k = r.size(); k-- > dm;) {
        const std::uint64_t t = r[k] * inv % q;
        if (!t) continue;
        const std::uint64_t neg = q - t;
        const std::size_t base = k - dm;
        for (std::size_t j = 0; j < dm; ++j) r[base + j] = static_cast<std::uint32_t>((r[base + j] + neg * mc[j]) % q);
        r[k] = 0;
    }
    r.resize(dm);
    return Poly(a.modulus(), std::move(r));
}

Poly exact_div(const Poly& a, const Poly& b) {
    auto [quot, r] = divmod(a, b);
    if (!r.is_zero()) fail(ErrorCode::InvariantViolation, "inexact polynomial division");
    return quot;
}

Poly make_monic(const Poly& f) {
    if (f.is_zero() || f.is_monic()) return f;
    return scale(f, fq_inv(f.lead(), f.modulus()));
}

Poly gcd(const Poly& a, const Poly& b) {
    check_same_field(a, b);
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = rem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return make_monic(x);
}

Poly derivative(const Poly& f) {
    if (f.degree() <= 0) return Poly(f.modulus());
    const std::uint64_t q = f.modulus();
    std::vector<std::uint32_t> r(f.coeffs().size() - 1);
    for (std::size_t i = 1; i < f.coeffs().size(); ++i) r[i - 1] = static_cast<std::uint32_t>(f[i] * (i % q) % q);
    return Poly(f.modulus(), std::move(r));
}

std::uint32_t eval(const Poly& f, std::uint32_t x) {
    const std::uint64_t q = f.modulus();
    std::uint64_t acc = 0;
    for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = (acc * x + f[i]) % q;
    return static_cast<std::uint32_t>(acc);
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) {
    if (m.is_zero()) fail(ErrorCode::InvalidArgument, "zero modulus");
    return rem(a * b, m);
}

Poly modpow(const Poly& base, const BigInt& exponent, const Poly& m) {
    if (m.is_zero()) fail(ErrorCode::InvalidArgument, "zero modulus");
    if (exponent < 0) fail(ErrorCode::InvalidArgument, "negative exponent");
    Poly result = rem(Poly::constant(m.modulus(), 1), m);
    if (exponent == 0) return result;
    const Poly b = rem(base, m);
    const std::size_t bits = boost::multiprecision::msb(exponent) + 1;
    for (std::size_t i = bits; i-- > 0;) {
        result = mulmod(result, result, m);
        if (boost::multiprecision::bit_test(exponent, i)) result = mulmod(result, b, m);
    }
    return result;
}

Poly modpow(const Poly& base, std::uint64_t exponent, const Poly& m) {
    return modpow(base, BigInt(exponent), m);
}

std::uint32_t resultant(const Poly& a_in, const Poly& b_in) {
    check_same_field(a_in, b_in);
    const std::uint32_t q = a_in.modulus();
    if (a_in.is_zero() || b_in.is_zero()) return 0;
    Poly a = a_in, b = b_in;
    std::uint64_t acc = 1;
    for (;;) {
        if (b.degree() == 0) return static_cast<std::uint32_t>(acc * fq_pow(b.lead(), a.degree(), q) % q);
        if (a.degree() == 0) {
            // Res(c, B) = c^deg B.
            return static_cast<std::uint32_t>(acc * fq_pow(a.lead(), b.degree(), q) % q);
        }
        Poly c = rem(a, b);
        if (c.is_zero()) return 0;
        if ((a.degree() % 2 == 1) && (b.degree() % 2 == 1)) acc = (q - acc) % q;
        acc = acc * fq_pow(b.lead(), a.degree() - c.degree(), q) % q;
        a = std::move(b);
        b = std::move(c);
    }
}

bool is_squarefree(const Poly& f) {
    if (f.is_zero()) fail(ErrorCode::InvalidArgument, "is_squarefree of the zero polynomial");
    if (f.degree() == 0) return true;
    const Poly df = derivative(f);
    if (df.is_zero()) return false;
    return gcd(f, df).degree() == 0;
}

bool is_irreducible(const Poly& f_in) {
    if (f_in.degree() < 1) fail(ErrorCode::InvalidArgument, "is_irreducible of a constant");
    const Poly f = make_monic(f_in);
    const unsigned n = static_cast<unsigned>(f.degree());
    if (n == 1) return true;
    const std::uint32_t q = f.modulus();
    const Poly x = rem(Poly::x(q), f);
    // No factor of degree <= n/2; exits early on most reducible inputs.
    Poly frob = x;
    for (unsigned k = 1; k <= n / 2; ++k) {
        frob = modpow(frob, std::uint64_t(q), f);
        if (gcd(frob - x, f).degree() != 0) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Irreducibles

MonicIrreducible::MonicIrreducible(Poly p) : p_(std::move(p)) {
    if (!p_.is_monic() || p_.degree() < 1) fail(ErrorCode::NotIrreducible, "expected a monic nonconstant polynomial: " + format_poly(p_));
    if (!is_irreducible(p_)) fail(ErrorCode::NotIrreducible, "polynomial is reducible: " + format_poly(p_));
}

MonicIrreducible MonicIrreducible::trusted(Poly p) { return MonicIrreducible(std::move(p), TrustedTag{}); }

std::strong_ordering canonical_compare(const Poly& a, const Poly& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin(),
                                                  b.coeffs().end());
}

std::strong_ordering operator<=>(const MonicIrreducible& a, const MonicIrreducible& b) {
    return canonical_compare(a.poly(), b.poly());
}

namespace {

Poly random_below(std::uint32_t q, int degree_bound, Rng& rng) {
    std::uniform_int_distribution<std::uint32_t> coef(0, q - 1);
    std::vector<std::uint32_t> v(static_cast<std::size_t>(degree_bound));
    for (auto& c : v) c = coef(rng);
    return Poly(q, std::move(v));
}

void equal_degree_split(const Poly& h, unsigned d, const BigInt& half_exp, Rng& rng, std::vector<MonicIrreducible>& out) {
    if (static_cast<unsigned>(h.degree()) == d) {
        out.push_back(MonicIrreducible::trusted(h));
        return;
    }
    const Poly one = Poly::constant(h.modulus(), 1);
    for (;;) {
        Poly a = random_below(h.modulus(), h.degree(), rng);
        if (a.degree() < 1) continue;
        Poly g = gcd(h, a);
        if (g.degree() < 1) g = gcd(h, modpow(a, half_exp, h) - one);
        if (g.degree() >= 1 && g.degree() < h.degree()) {
            equal_degree_split(g, d, half_exp, rng, out);
            equal_degree_split(exact_div(h, g), d, half_exp, rng, out);
            return;
        }
    }
}

}  // namespace

Factorization factor_squarefree(const Poly& f) {
    if (f.is_zero()) fail(ErrorCode::InvalidArgument, "factor of the zero polynomial");
    if (!is_squarefree(f)) fail(ErrorCode::NotSquarefree, "not squarefree: " + format_poly(f));
    const std::uint32_t q = f.modulus();
    Factorization result;
    result.lead = f.lead();
    if (f.degree() == 0) return result;

    // Seeded from the input so the splitting path is reproducible.
    std::uint64_t h = 1469598103934665603ull ^ q;
    for (auto c : f.coeffs()) h = (h ^ c) * 1099511628211ull;
    Rng rng(h);

    Poly rest = make_monic(f);
    const Poly x = Poly::x(q);
    Poly frob = rem(x, rest);
    for (unsigned i = 1; 2 * i <= static_cast<unsigned>(rest.degree()); ++i) {
        frob = modpow(frob, std::uint64_t(q), rest);
        Poly part = gcd(rest, frob - x);
        if (part.degree() > 0) {
            BigInt half = (boost::multiprecision::pow(BigInt(q), i) - 1) / 2;
            equal_degree_split(part, i, half, rng, result.factors);
            rest = exact_div(rest, part);
            frob = rem(frob, rest);
        }
    }
    if (rest.degree() > 0) result.factors.push_back(MonicIrreducible::trusted(rest));
    std::sort(result.factors.begin(), result.factors.end());
    return result;
}

BigInt count_irreducibles(std::uint32_t q, unsigned d) {
    if (d == 0) fail(ErrorCode::InvalidArgument, "degree must be positive");
    BigInt sum = 0;
    for (unsigned e = 1; e <= d; ++e) {
        if (d % e) continue;
        const int mu = moebius(e);
        if (mu == 0) continue;
        BigInt term = boost::multiprecision::pow(BigInt(q), d / e);
        if (mu > 0) sum += term; else sum -= term;
    }
    return sum / d;
}

double irreducible_density(std::uint32_t q, unsigned d) {
    if (d == 0) fail(ErrorCode::InvalidArgument, "degree must be positive");
    const double lq = std::log(static_cast<double>(q));
    double sum = 0;
    for (unsigned e = 1; e <= d; ++e) {
        if (d % e) continue;
        const int mu = moebius(e);
        if (mu == 0) continue;
        // q^(d/e) / q^d
        sum += mu * std::exp(lq * (static_cast<double>(d / e) - d));
    }
    return sum / d;
}

Poly random_monic(std::uint32_t q, unsigned d, Rng& rng) {
    std::uniform_int_distribution<std::uint32_t> coef(0, q - 1);
    std::vector<std::uint32_t> v(d + 1);
    for (unsigned i = 0; i < d; ++i) v[i] = coef(rng);
    v[d] = 1;
    return Poly(q, std::move(v));
}

Poly random_monic_squarefree(std::uint32_t q, unsigned d, Rng& rng) {
    if (d < 1) fail(ErrorCode::InvalidArgument, "degree must be positive");
    for (;;) {
        Poly f = random_monic(q, d, rng);
        if (is_squarefree(f)) return f;
    }
}

MonicIrreducible random_monic_irreducible(std::uint32_t q, unsigned d, Rng& rng) {
    if (d < 1) fail(ErrorCode::InvalidArgument, "degree must be positive");
    for (;;) {
        Poly f = random_monic(q, d, rng);
        if (is_irreducible(f)) return MonicIrreducible::trusted(std::move(f));
    }
}

std::vector<MonicIrreducible> enumerate_irreducibles(std::uint32_t q, unsigned d) {
    if (d < 1) fail(ErrorCode::InvalidArgument, "degree must be positive");
    const double space = std::pow(static_cast<double>(q), d);
    if (space > static_cast<double>(1u << 22)) fail(ErrorCode::BudgetExceeded, "too many polynomials to enumerate");
    std::vector<MonicIrreducible> out;
    std::vector<std::uint32_t> digits(d, 0);
    for (;;) {
        std::vector<std::uint32_t> c(digits);
        c.push_back(1);
        Poly f(q, std::move(c));
        if (is_irreducible(f)) out.push_back(MonicIrreducible::trusted(std::move(f)));
        // Odometer, least significant coefficient first.
        std::size_t i = 0;
        while (i < d && ++digits[i] == q) digits[i++] = 0;
        if (i == d) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Residue symbols

int qr_symbol(const Poly& f, const MonicIrreducible& h) {
    check_same_field(f, h.poly());
    const Poly r = rem(f, h.poly());
    if (r.is_zero()) return 0;
    return chi(resultant(h.poly(), r), f.modulus());
}

int qr_symbol_euler(const Poly& f, const MonicIrreducible& h) {
    check_same_field(f, h.poly());
    const std::uint32_t q = f.modulus();
    const Poly r = rem(f, h.poly());
    if (r.is_zero()) return 0;
    const BigInt e = (boost::multiprecision::pow(BigInt(q), h.degree()) - 1) / 2;
    const Poly p = modpow(r, e, h.poly());
    if (p == Poly::constant(q, 1)) return 1;
    if (p == Poly::constant(q, q - 1)) return -1;
    fail(ErrorCode::InvariantViolation, "Euler criterion gave a non-constant power modulo " + format_poly(h.poly()));
}

bool reciprocity_check(const MonicIrreducible& f, const MonicIrreducible& g) {
    if (f == g) fail(ErrorCode::InvalidArgument, "reciprocity_check needs distinct polynomials");
    const std::uint32_t q = f.poly().modulus();
    const int lhs = qr_symbol(f.poly(), g) * qr_symbol(g.poly(), f);
    const std::uint64_t e = std::uint64_t((q - 1) / 2) * f.degree() * g.degree();
    const int rhs = (e % 2) ? -1 : 1;
    return lhs == rhs;
}

// ---------------------------------------------------------------------------
// Text formats

Poly parse_poly(std::uint32_t q, std::string_view text) {
    std::vector<std::uint32_t> c;
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text.empty()) return Poly(q);
    std::size_t pos = 0;
    for (;;) {
        const std::size_t comma = text.find(',', pos);
        const std::string_view tok = trim(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos));
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
            fail(ErrorCode::Parse, "bad coefficient '" + std::string(tok) + "'");
        if (v >= q) fail(ErrorCode::Parse, "coefficient " + std::string(tok) + " is not a residue mod " + std::to_string(q));
        c.push_back(static_cast<std::uint32_t>(v));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return Poly(q, std::move(c));
}

std::string format_poly(const Poly& f) {
    if (f.is_zero()) return "0";
    std::string s;
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        if (i) s += ',';
        s += std::to_string(f[i]);
    }
    return s;
}

std::string pretty_poly(const Poly& f) {
    if (f.is_zero()) return "0";
    std::string s;
    for (int i = f.degree(); i >= 0; --i) {
        const std::uint32_t c = f[static_cast<std::size_t>(i)];
        if (!c) continue;
        if (!s.empty()) s += " + ";
        if (i == 0 || c != 1) s += std::to_string(c);
        if (i >= 1) s += "x";
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
}

const MonicIrreducible& Place::finite() const {
    if (!finite_) fail(ErrorCode::InvalidArgument, "place at infinity has no polynomial");
    return *finite_;
}

std::strong_ordering operator<=>(const Place& a, const Place& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    if (a.is_infinity() || b.is_infinity()) return b.is_infinity() <=> a.is_infinity();
    return a.finite() <=> b.finite();
}

Place parse_place(std::uint32_t q, std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text == "inf") return Place::infinity();
    return Place(MonicIrreducible(parse_poly(q, text)));
}

std::vector<Place> parse_place_list(std::uint32_t q, std::string_view text) {
    std::vector<Place> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t semi = text.find(';', pos);
        std::string_view tok = text.substr(pos, semi == std::string_view::npos ? text.npos : semi - pos);
        if (tok.find_first_not_of(' ') != std::string_view::npos) out.push_back(parse_place(q, tok));
        if (semi == std::string_view::npos) break;
        pos = semi + 1;
    }
    return out;
}

std::string format_place(const Place& p) { return p.is_infinity() ? "inf" : format_poly(p.finite().poly()); }

}  // namespace fourrank
