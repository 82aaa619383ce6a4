// SPDX-License-Identifier: Apache-2.0
#include "fourrank/matstat.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include <json.hpp>

namespace fourrank {

namespace {

bool prime_power(unsigned ell, unsigned& p, unsigned& k) {
    if (ell < 2) return false;
    unsigned x = ell;
    for (p = 2; p * p <= x; ++p)
        if (x % p == 0) break;
    if (p * p > x) p = x;
    k = 0;
    while (x % p == 0) {
        x /= p;
        ++k;
    }
    return x == 1;
}

// Digit-vector polynomial helpers over F_p for building the extension tables.
using Digits = std::vector<unsigned>;

Digits to_digits(unsigned v, unsigned p, unsigned k) {
    Digits d(k, 0);
    for (unsigned i = 0; i < k; ++i, v /= p) d[i] = v % p;
    return d;
}

unsigned from_digits(const Digits& d, unsigned p) {
    unsigned v = 0;
    for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
    return v;
}

// Remainder of a by monic m over F_p (little-endian digit vectors).
Digits poly_rem(Digits a, const Digits& m, unsigned p) {
    const std::size_t dm = m.size() - 1;
    for (std::size_t k = a.size(); k-- > dm;) {
        const unsigned t = a[k] % p;
        if (!t) continue;
        for (std::size_t j = 0; j <= dm; ++j) a[k - dm + j] = (a[k - dm + j] + (p - t) * m[j]) % p;
    }
    a.resize(dm);
    return a;
}

bool irreducible_small(const Digits& m, unsigned p) {
    const unsigned k = static_cast<unsigned>(m.size() - 1);
    // Trial division by every monic polynomial of degree 1..k/2.
    for (unsigned d = 1; 2 * d <= k; ++d) {
        unsigned count = 1;
        for (unsigned i = 0; i < d; ++i) count *= p;
        for (unsigned v = 0; v < count; ++v) {
            Digits f = to_digits(v, p, d);
            f.push_back(1);
            Digits r = poly_rem(m, f, p);
            if (std::all_of(r.begin(), r.end(), [](unsigned x) { return x == 0; })) return false;
        }
    }
    return true;
}

BigInt ipow(unsigned base, unsigned e) { return boost::multiprecision::pow(BigInt(base), e); }

BigInt binom(unsigned n, unsigned k) {
    if (k > n) return 0;
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// GaloisField

GaloisField::GaloisField(unsigned ell) : ell_(ell) {
    unsigned k = 0;
    if (ell > 256 || !prime_power(ell, p_, k)) fail(ErrorCode::InvalidArgument, "field order must be a prime power <= 256");
    Digits modulus;
    if (k > 1) {
        unsigned count = 1;
        for (unsigned i = 0; i < k; ++i) count *= p_;
        for (unsigned v = 0; v < count; ++v) {
            Digits m = to_digits(v, p_, k);
            m.push_back(1);
            if (irreducible_small(m, p_)) {
                modulus = std::move(m);
                break;
            }
        }
    }
    add_.resize(ell * ell);
    mul_.resize(ell * ell);
    neg_.resize(ell);
    inv_.assign(ell, 0);
    for (unsigned a = 0; a < ell; ++a) {
        const Digits da = to_digits(a, p_, k);
        Digits n(k);
        for (unsigned i = 0; i < k; ++i) n[i] = (p_ - da[i]) % p_;
        neg_[a] = static_cast<std::uint8_t>(from_digits(n, p_));
        for (unsigned b = 0; b < ell; ++b) {
            const Digits db = to_digits(b, p_, k);
            Digits s(k);
            for (unsigned i = 0; i < k; ++i) s[i] = (da[i] + db[i]) % p_;
            add_[a * ell + b] = static_cast<std::uint8_t>(from_digits(s, p_));
            Digits prod(2 * k - 1, 0);
            for (unsigned i = 0; i < k; ++i)
                for (unsigned j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
            if (k > 1) prod = poly_rem(prod, modulus, p_);
            mul_[a * ell + b] = static_cast<std::uint8_t>(from_digits(prod, p_));
        }
    }
    for (unsigned a = 1; a < ell; ++a)
        for (unsigned b = 1; b < ell; ++b)
            if (mul_[a * ell + b] == 1) inv_[a] = static_cast<std::uint8_t>(b);
}

std::shared_ptr<const GaloisField> GaloisField::get(unsigned ell) {
    static std::mutex mu;
    static std::map<unsigned, std::shared_ptr<const GaloisField>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[ell];
    if (!slot) slot = std::make_shared<const GaloisField>(ell);
    return slot;
}

std::uint8_t GaloisField::inv(std::uint8_t a) const {
    if (a == 0) fail(ErrorCode::InvalidArgument, "inverse of zero");
    return inv_[a];
}

// ---------------------------------------------------------------------------
// BitMatrix

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), bits_(rows * wpr_, 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (get(i, j)) t.set(j, i, true);
    return t;
}

BitMatrix BitMatrix::permuted(const std::vector<std::size_t>& perm) const {
    if (perm.size() != rows_ || rows_ != cols_) fail(ErrorCode::InvalidArgument, "permutation size mismatch");
    BitMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.set(i, j, get(perm[i], perm[j]));
    return m;
}

BitMatrix BitMatrix::without_last_row_col() const {
    if (rows_ == 0 || cols_ == 0) fail(ErrorCode::InvalidArgument, "empty matrix");
    BitMatrix m(rows_ - 1, cols_ - 1);
    for (std::size_t i = 0; i + 1 < rows_; ++i)
        for (std::size_t j = 0; j + 1 < cols_; ++j) m.set(i, j, get(i, j));
    return m;
}

std::vector<std::string> BitMatrix::to_rows() const {
    std::vector<std::string> out(rows_, std::string(cols_, '0'));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (get(i, j)) out[i][j] = '1';
    return out;
}

std::size_t nullity(const BitMatrix& m_in) {
    BitMatrix m = m_in;
    const std::size_t wpr = m.words_per_row();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        const std::size_t w = col >> 6;
        const std::uint64_t bit = std::uint64_t(1) << (col & 63);
        std::size_t pivot = rank;
        while (pivot < m.rows() && !(m.row(pivot)[w] & bit)) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != rank) std::swap_ranges(m.row(pivot), m.row(pivot) + wpr, m.row(rank));
        const std::uint64_t* prow = m.row(rank);
        for (std::size_t r = rank + 1; r < m.rows(); ++r) {
            std::uint64_t* row = m.row(r);
            if (!(row[w] & bit)) continue;
            for (std::size_t k = w; k < wpr; ++k) row[k] ^= prow[k];
        }
        ++rank;
    }
    return m.cols() - rank;
}

// ---------------------------------------------------------------------------
// MatFl

MatFl::MatFl(std::shared_ptr<const GaloisField> field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

MatFl MatFl::transpose() const {
    MatFl t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

MatFl MatFl::without_last_row_col() const {
    MatFl m(field_, rows_ - 1, cols_ - 1);
    for (std::size_t i = 0; i + 1 < rows_; ++i)
        for (std::size_t j = 0; j + 1 < cols_; ++j) m(i, j) = (*this)(i, j);
    return m;
}

BitMatrix MatFl::to_bits() const {
    if (ell() != 2) fail(ErrorCode::InvalidArgument, "to_bits needs ell = 2");
    BitMatrix b(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j)) b.set(i, j, true);
    return b;
}

MatFl MatFl::from_bits(const BitMatrix& m) {
    MatFl r(GaloisField::get(2), m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m.get(i, j) ? 1 : 0;
    return r;
}

std::size_t rank(const MatFl& m_in) {
    MatFl m = m_in;
    const GaloisField& F = m.field();
    std::size_t rk = 0;
    for (std::size_t col = 0; col < m.cols() && rk < m.rows(); ++col) {
        std::size_t pivot = rk;
        while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
        if (pivot == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(rk, j));
        const std::uint8_t inv = F.inv(m(rk, col));
        for (std::size_t j = col; j < m.cols(); ++j) m(rk, j) = F.mul(m(rk, j), inv);
        for (std::size_t r = rk + 1; r < m.rows(); ++r) {
            const std::uint8_t factor = m(r, col);
            if (!factor) continue;
            for (std::size_t j = col; j < m.cols(); ++j) m(r, j) = F.sub(m(r, j), F.mul(factor, m(rk, j)));
        }
        ++rk;
    }
    return rk;
}

std::size_t nullity(const MatFl& m) { return m.cols() - rank(m); }

// ---------------------------------------------------------------------------
// Alternating forms

AlternatingForm::AlternatingForm(MatFl c) : c_(std::move(c)) {
    if (c_.rows() != c_.cols()) fail(ErrorCode::InvalidArgument, "alternating form must be square");
    const GaloisField& F = c_.field();
    for (std::size_t i = 0; i < c_.rows(); ++i) {
        if (c_(i, i) != 0) fail(ErrorCode::InvalidArgument, "alternating form must vanish on the diagonal");
        for (std::size_t j = 0; j < i; ++j)
            if (c_(i, j) != F.neg(c_(j, i))) fail(ErrorCode::InvalidArgument, "form is not skew-symmetric");
    }
    rank_ = fourrank::rank(c_);
}

AlternatingForm AlternatingForm::zero(unsigned ell, std::size_t n) {
    return AlternatingForm(MatFl(GaloisField::get(ell), n, n));
}

bool AlternatingForm::rows_sum_to_zero() const {
    const GaloisField& F = c_.field();
    for (std::size_t i = 0; i < c_.rows(); ++i) {
        std::uint8_t s = 0;
        for (std::size_t j = 0; j < c_.cols(); ++j) s = F.add(s, c_(i, j));
        if (s) return false;
    }
    return true;
}

AlternatingForm AlternatingForm::without_last() const { return AlternatingForm(c_.without_last_row_col()); }

AlternatingForm standard_redei_form(std::size_t n_even, std::size_t n_odd, std::uint32_t q) {
    if (q % 2 == 0) fail(ErrorCode::InvalidArgument, "q must be odd");
    const std::size_t n = n_even + n_odd;
    MatFl c(GaloisField::get(2), n, n);
    if (q % 4 == 3)
        for (std::size_t i = n_even; i < n; ++i)
            for (std::size_t j = n_even; j < n; ++j)
                if (i != j) c(i, j) = 1;
    return AlternatingForm(std::move(c));
}

const char* to_string(MatrixModel m) {
    switch (m) {
        case MatrixModel::Uniform: return "uniform";
        case MatrixModel::Symmetric: return "symmetric";
        case MatrixModel::CSymmetric: return "c-symmetric";
        case MatrixModel::CSymmetricZeroSums: return "c-symmetric-zero-sums";
        case MatrixModel::Empirical: return "empirical";
    }
    return "unknown";
}

std::string RankDistribution::to_json() const {
    nlohmann::json j;
    j["model"] = fourrank::to_string(model);
    j["n"] = n;
    j["ell"] = ell;
    j["probs"] = probs;
    if (!exact.empty()) {
        std::vector<std::string> e;
        for (const auto& r : exact) e.push_back(r.str());
        j["exact"] = e;
    }
    return j.dump();
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        const double x = i < a.size() ? a[i] : 0.0;
        const double y = i < b.size() ? b[i] : 0.0;
        s += std::abs(x - y);
    }
    return s / 2;
}

// ---------------------------------------------------------------------------
// Exact laws

BigInt q_binomial(unsigned n, unsigned k, unsigned ell) {
    if (k > n) fail(ErrorCode::InvalidArgument, "q_binomial needs k <= n");
    BigInt num = 1, den = 1;
    for (unsigned i = 0; i < k; ++i) {
        num *= ipow(ell, n) - ipow(ell, i);
        den *= ipow(ell, k) - ipow(ell, i);
    }
    return num / den;
}

Rational uniform_pmf(unsigned ell, unsigned n, unsigned r) {
    if (r > n) fail(ErrorCode::InvalidArgument, "nullity out of range");
    Rational sum = 0;
    for (unsigned d = 0; d <= n - r; ++d) {
        Rational term(q_binomial(n - r, d, ell) * ipow(ell, d * (d - (d ? 1 : 0)) / 2), ipow(ell, (r + d) * n));
        if (d % 2) sum -= term; else sum += term;
    }
    return Rational(q_binomial(n, r, ell)) * sum;
}

Rational invertible_fraction(unsigned ell, unsigned n) {
    Rational p = 1;
    for (unsigned i = 1; i <= n; ++i) p *= Rational(ipow(ell, i) - 1, ipow(ell, i));
    return p;
}

Rational macwilliams_pmf(unsigned ell, unsigned n, unsigned r) {
    if (r > n) fail(ErrorCode::InvalidArgument, "nullity out of range");
    const unsigned m = n - r;
    // ell^(binom(m+1,2) - binom(n+1,2)); the exponent is never positive.
    Rational p(q_binomial(n, r, ell), ipow(ell, n * (n + 1) / 2 - m * (m + 1) / 2));
    if (m >= 1)
        for (unsigned k = 0; k <= (m - 1) / 2; ++k) p *= Rational(ipow(ell, 2 * k + 1) - 1, ipow(ell, 2 * k + 1));
    return p;
}

namespace {

// prod_{i >= start, step} (1 - ell^-i), truncated when the tail bound drops below tol.
long double tail_product(unsigned ell, unsigned start, unsigned step, double tol) {
    long double prod = 1;
    const long double L = ell;
    for (unsigned i = start;; i += step) {
        const long double x = std::pow(L, -static_cast<long double>(i));
        // Remaining terms contribute at most sum_{j >= i} 2 ell^-j to |log prod|.
        if (2 * x * L / (L - 1) < tol) break;
        prod *= 1 - x;
    }
    return prod;
}

long double inv_gl_order(unsigned ell, unsigned r) {
    // 1 / |GL_r(F_ell)| = ell^-r^2 / prod_{i=1..r} (1 - ell^-i)
    long double v = std::pow(static_cast<long double>(ell), -static_cast<long double>(r) * r);
    for (unsigned i = 1; i <= r; ++i) v /= 1 - std::pow(static_cast<long double>(ell), -static_cast<long double>(i));
    return v;
}

}  // namespace

double mu_cl(unsigned ell, unsigned r, double tol) {
    if (tol <= 0) fail(ErrorCode::InvalidArgument, "tolerance must be positive");
    return static_cast<double>(inv_gl_order(ell, r) * tail_product(ell, r + 1, 1, tol));
}

double mu_s(unsigned ell, unsigned r, double tol) {
    if (tol <= 0) fail(ErrorCode::InvalidArgument, "tolerance must be positive");
    const long double wedge = std::pow(static_cast<long double>(ell), static_cast<long double>(r) * (r - (r ? 1 : 0)) / 2);
    return static_cast<double>(wedge * inv_gl_order(ell, r) * tail_product(ell, 1, 2, tol));
}

Rational kernel_contains_prob(const AlternatingForm& c, const std::vector<std::vector<std::uint8_t>>& basis) {
    const std::size_t n = c.size();
    const unsigned ell = c.ell();
    const auto F = c.matrix().field_ptr();
    const std::size_t r = basis.size();
    if (r == 0) return 1;
    MatFl v(F, r, n);
    for (std::size_t a = 0; a < r; ++a) {
        if (basis[a].size() != n) fail(ErrorCode::InvalidArgument, "basis vector has wrong length");
        for (std::size_t i = 0; i < n; ++i) {
            if (basis[a][i] >= ell) fail(ErrorCode::InvalidArgument, "basis entry is not a field element");
            v(a, i) = basis[a][i];
        }
    }
    if (rank(v) != r) fail(ErrorCode::InvalidArgument, "basis vectors are dependent");
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = a + 1; b < r; ++b) {
            std::uint8_t s = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    s = F->add(s, F->mul(v(a, i), F->mul(c.matrix()(i, j), v(b, j))));
            if (s) return 0;
        }
    const unsigned exponent = static_cast<unsigned>(n * r - r * (r - 1) / 2);
    return Rational(1, ipow(ell, exponent));
}

// ---------------------------------------------------------------------------
// Samplers

namespace {

template <class Draw>
MatFl fill_c_symmetric(const AlternatingForm& c, bool zero_sums, Draw&& draw) {
    const std::size_t n = c.size();
    const auto F = c.matrix().field_ptr();
    MatFl m(F, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) m(i, j) = draw();
        if (!zero_sums) m(i, i) = draw();
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) m(i, j) = F->add(m(j, i), c.matrix()(i, j));
    if (zero_sums) {
        for (std::size_t i = 0; i < n; ++i) {
            std::uint8_t s = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) s = F->add(s, m(i, j));
            m(i, i) = F->neg(s);
        }
        for (std::size_t j = 0; j < n; ++j) {
            std::uint8_t s = 0;
            for (std::size_t i = 0; i < n; ++i) s = F->add(s, m(i, j));
            if (s) fail(ErrorCode::InvariantViolation, "zero-sum sampler produced a nonzero column sum");
        }
    }
    return m;
}

void require_zero_row_sums(const AlternatingForm& c) {
    if (!c.rows_sum_to_zero()) fail(ErrorCode::InvalidArgument, "zero-sum sampling needs C with zero row sums");
}

void fill_random_lower(BitMatrix& m, bool include_diagonal, Rng& rng) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const std::size_t len = include_diagonal ? i + 1 : i;  // bits [0, len)
        std::uint64_t* row = m.row(i);
        for (std::size_t w = 0; w * 64 < len; ++w) {
            std::uint64_t bits = rng();
            const std::size_t hi = std::min<std::size_t>(64, len - w * 64);
            if (hi < 64) bits &= (std::uint64_t(1) << hi) - 1;
            row[w] = bits;
        }
    }
}

}  // namespace

MatFl sample_c_symmetric(const AlternatingForm& c, Rng& rng) {
    std::uniform_int_distribution<unsigned> u(0, c.ell() - 1);
    return fill_c_symmetric(c, false, [&] { return static_cast<std::uint8_t>(u(rng)); });
}

MatFl sample_c_symmetric_zero_sums(const AlternatingForm& c, Rng& rng) {
    require_zero_row_sums(c);
    std::uniform_int_distribution<unsigned> u(0, c.ell() - 1);
    return fill_c_symmetric(c, true, [&] { return static_cast<std::uint8_t>(u(rng)); });
}

BitMatrix sample_c_symmetric_bits(const BitMatrix& c, Rng& rng) {
    const std::size_t n = c.rows();
    BitMatrix m(n, n);
    fill_random_lower(m, true, rng);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (m.get(j, i) != c.get(i, j)) m.set(i, j, true);
    return m;
}

BitMatrix sample_c_symmetric_zero_sums_bits(const BitMatrix& c, Rng& rng) {
    const std::size_t n = c.rows();
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t s = 0;
        for (std::size_t w = 0; w < c.words_per_row(); ++w) s += std::popcount(c.row(i)[w]);
        if (s % 2) fail(ErrorCode::InvalidArgument, "zero-sum sampling needs C with zero row sums");
    }
    BitMatrix m(n, n);
    fill_random_lower(m, false, rng);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (m.get(j, i) != c.get(i, j)) m.set(i, j, true);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t s = 0;
        for (std::size_t w = 0; w < m.words_per_row(); ++w) s += std::popcount(m.row(i)[w]);
        if (s % 2) m.set(i, i, true);
    }
    std::vector<std::uint64_t> colsum(m.words_per_row(), 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t w = 0; w < m.words_per_row(); ++w) colsum[w] ^= m.row(i)[w];
    for (auto w : colsum)
        if (w) fail(ErrorCode::InvariantViolation, "zero-sum sampler produced a nonzero column sum");
    return m;
}

std::vector<MatFl> c_symmetric_support(const AlternatingForm& c, bool zero_sums, std::uint64_t budget) {
    if (zero_sums) require_zero_row_sums(c);
    const std::size_t n = c.size();
    const std::size_t draws = n * (n - 1) / 2 + (zero_sums ? 0 : n);
    const unsigned ell = c.ell();
    double total = std::pow(static_cast<double>(ell), static_cast<double>(draws));
    if (total > static_cast<double>(budget)) fail(ErrorCode::BudgetExceeded, "support too large to enumerate");
    std::vector<MatFl> out;
    out.reserve(static_cast<std::size_t>(total));
    std::vector<std::uint8_t> digits(draws, 0);
    for (;;) {
        std::size_t k = 0;
        out.push_back(fill_c_symmetric(c, zero_sums, [&] { return digits[k++]; }));
        std::size_t i = 0;
        while (i < draws && ++digits[i] == ell) digits[i++] = 0;
        if (i == draws) break;
    }
    return out;
}

MixingStat mixing_stat(unsigned n_odd, unsigned n_even, unsigned n1_odd, unsigned n1_even, unsigned d) {
    if (n1_odd > n_odd || n1_even > n_even) fail(ErrorCode::InvalidArgument, "infeasible mixing parameters");
    BigInt num = 0;
    for (unsigned h1 = 0; h1 <= d; ++h1) {
        const unsigned h2 = d - h1;
        if (h1 > n1_odd || h2 > n1_even) continue;
        num += binom(n1_odd, h1) * binom(n_odd - n1_odd, n1_odd - h1) * binom(n1_even, h2) *
               binom(n_even - n1_even, n1_even - h2);
    }
    MixingStat s;
    s.value = Rational(num, binom(n_odd, n1_odd) * binom(n_even, n1_even));
    Rational base = 0;
    if (n_odd) base += Rational(n1_odd * n1_odd, n_odd);
    if (n_even) base += Rational(n1_even * n1_even, n_even);
    Rational bound = 1;
    for (unsigned i = 1; i <= d; ++i) bound *= base / i;
    s.bound = bound;
    if (s.value > s.bound) fail(ErrorCode::InvariantViolation, "mixing statistic exceeds its bound");
    return s;
}

RankDistribution exhaustive_pmf(unsigned ell, unsigned n, MatrixModel model, const AlternatingForm* c,
                                std::uint64_t budget) {
    const bool needs_c = model == MatrixModel::CSymmetric || model == MatrixModel::CSymmetricZeroSums;
    if (model == MatrixModel::Empirical) fail(ErrorCode::InvalidArgument, "empirical is not an enumerable model");
    if (needs_c && (!c || c->size() != n || c->ell() != ell)) fail(ErrorCode::InvalidArgument, "model needs a matching form C");
    const double total = std::pow(static_cast<double>(ell), static_cast<double>(n) * n);
    if (total > static_cast<double>(budget)) fail(ErrorCode::BudgetExceeded, "too many matrices to enumerate");
    const auto F = GaloisField::get(ell);
    std::vector<BigInt> counts(n + 1, 0);
    BigInt members = 0;
    MatFl m(F, n, n);
    std::vector<std::uint8_t> digits(n * n, 0);
    for (;;) {
        for (std::size_t k = 0; k < digits.size(); ++k) m(k / n, k % n) = digits[k];
        bool in_model = true;
        if (model != MatrixModel::Uniform) {
            for (std::size_t i = 0; i < n && in_model; ++i)
                for (std::size_t j = 0; j < n && in_model; ++j) {
                    const std::uint8_t want = model == MatrixModel::Symmetric ? 0 : c->matrix()(i, j);
                    if (F->sub(m(i, j), m(j, i)) != want) in_model = false;
                }
        }
        if (in_model && model == MatrixModel::CSymmetricZeroSums) {
            for (std::size_t i = 0; i < n && in_model; ++i) {
                std::uint8_t rs = 0, cs = 0;
                for (std::size_t j = 0; j < n; ++j) {
                    rs = F->add(rs, m(i, j));
                    cs = F->add(cs, m(j, i));
                }
                if (rs || cs) in_model = false;
            }
        }
        if (in_model) {
            ++members;
            ++counts[nullity(m)];
        }
        std::size_t i = 0;
        while (i < digits.size() && ++digits[i] == ell) digits[i++] = 0;
        if (i == digits.size()) break;
    }
    RankDistribution out;
    out.model = model;
    out.n = n;
    out.ell = ell;
    if (members == 0) fail(ErrorCode::Infeasible, "model is empty");
    for (const auto& k : counts) {
        out.exact.emplace_back(k, members);
        out.probs.push_back(static_cast<double>(out.exact.back()));
    }
    return out;
}

RankDistribution empirical_pmf(const std::vector<std::size_t>& nullities, std::size_t n, unsigned ell) {
    RankDistribution out;
    out.model = MatrixModel::Empirical;
    out.n = n;
    out.ell = ell;
    out.probs.assign(n + 1, 0.0);
    for (auto r : nullities) {
        if (r > n) fail(ErrorCode::InvalidArgument, "nullity out of range");
        out.probs[r] += 1;
    }
    if (!nullities.empty())
        for (auto& p : out.probs) p /= static_cast<double>(nullities.size());
    return out;
}

}  // namespace fourrank
