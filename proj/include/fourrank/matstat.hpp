// SPDX-License-Identifier: Apache-2.0
//
// Linear algebra over finite fields and corank statistics of random
// (C-symmetric) matrices.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fourrank/common.hpp"

namespace fourrank {

/// Finite field F_ell for a prime power ell <= 256, stored as lookup tables.
/// Elements are integers 0..ell-1 (base-p digit vectors of the polynomial
/// basis); 0 and 1 are the field's zero and one.
class GaloisField {
public:
    /// Shared, immutable instance per order. Throws unless ell is a prime power <= 256.
    static std::shared_ptr<const GaloisField> get(unsigned ell);

    unsigned order() const noexcept { return ell_; }
    unsigned characteristic() const noexcept { return p_; }

    std::uint8_t add(std::uint8_t a, std::uint8_t b) const noexcept { return add_[a * ell_ + b]; }
    std::uint8_t mul(std::uint8_t a, std::uint8_t b) const noexcept { return mul_[a * ell_ + b]; }
    std::uint8_t neg(std::uint8_t a) const noexcept { return neg_[a]; }
    std::uint8_t sub(std::uint8_t a, std::uint8_t b) const noexcept { return add(a, neg(b)); }
    std::uint8_t inv(std::uint8_t a) const;

    explicit GaloisField(unsigned ell);

private:
    unsigned ell_, p_;
    std::vector<std::uint8_t> add_, mul_, neg_, inv_;
};

/// Dense n x m matrix over F_2, rows packed into 64-bit words.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    static BitMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t words_per_row() const noexcept { return wpr_; }

    bool get(std::size_t i, std::size_t j) const noexcept { return (row(i)[j >> 6] >> (j & 63)) & 1u; }
    void set(std::size_t i, std::size_t j, bool v) noexcept {
        auto& w = row(i)[j >> 6];
        const std::uint64_t bit = std::uint64_t(1) << (j & 63);
        w = v ? (w | bit) : (w & ~bit);
    }
    void flip(std::size_t i, std::size_t j) noexcept { row(i)[j >> 6] ^= std::uint64_t(1) << (j & 63); }

    std::uint64_t* row(std::size_t i) noexcept { return bits_.data() + i * wpr_; }
    const std::uint64_t* row(std::size_t i) const noexcept { return bits_.data() + i * wpr_; }

    BitMatrix transpose() const;
    /// Entries (perm[i], perm[j]) moved to (i, j).
    BitMatrix permuted(const std::vector<std::size_t>& perm) const;
    BitMatrix without_last_row_col() const;

    std::vector<std::string> to_rows() const;

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// Dense matrix over a table-driven F_ell.
class MatFl {
public:
    MatFl() = default;
    MatFl(std::shared_ptr<const GaloisField> field, std::size_t rows, std::size_t cols);

    const GaloisField& field() const { return *field_; }
    std::shared_ptr<const GaloisField> field_ptr() const { return field_; }
    unsigned ell() const { return field_->order(); }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    std::uint8_t operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * cols_ + j]; }
    std::uint8_t& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * cols_ + j]; }

    const std::vector<std::uint8_t>& data() const noexcept { return a_; }
    MatFl transpose() const;
    MatFl without_last_row_col() const;

    BitMatrix to_bits() const;
    static MatFl from_bits(const BitMatrix& m);

    friend bool operator==(const MatFl& a, const MatFl& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.ell() == b.ell() && a.a_ == b.a_;
    }

private:
    std::shared_ptr<const GaloisField> field_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::uint8_t> a_;
};

/// Dimension of the (right) kernel.
std::size_t nullity(const BitMatrix& m);
std::size_t nullity(const MatFl& m);
std::size_t rank(const MatFl& m);

/// Skew-symmetric form with zero diagonal.
class AlternatingForm {
public:
    /// Throws InvalidArgument unless c is square, skew-symmetric, zero on the diagonal.
    explicit AlternatingForm(MatFl c);
    static AlternatingForm zero(unsigned ell, std::size_t n);

    std::size_t size() const noexcept { return c_.rows(); }
    unsigned ell() const { return c_.ell(); }
    const MatFl& matrix() const noexcept { return c_; }
    std::size_t rank() const noexcept { return rank_; }
    bool rows_sum_to_zero() const;
    AlternatingForm without_last() const;

private:
    MatFl c_;
    std::size_t rank_ = 0;
};

/// The form that the Redei matrix satisfies in even-then-odd block order:
/// zero if q = 1 mod 4, blockdiag(0, J - I) on the odd block if q = 3 mod 4.
AlternatingForm standard_redei_form(std::size_t n_even, std::size_t n_odd, std::uint32_t q);

enum class MatrixModel { Uniform, Symmetric, CSymmetric, CSymmetricZeroSums, Empirical };
const char* to_string(MatrixModel m);

struct RankDistribution {
    MatrixModel model = MatrixModel::Empirical;
    std::size_t n = 0;
    unsigned ell = 2;
    std::vector<double> probs;         // index = nullity
    std::vector<Rational> exact;       // filled when the law is known exactly

    /// {"model", "n", "ell", "probs"}; "exact" as "a/b" strings when present.
    std::string to_json() const;
    double at(std::size_t r) const { return r < probs.size() ? probs[r] : 0.0; }
};

/// Total variation distance between two pmfs indexed by the same support.
double total_variation(const std::vector<double>& a, const std::vector<double>& b);

/// Gaussian binomial: number of k-dimensional subspaces of F_ell^n.
BigInt q_binomial(unsigned n, unsigned k, unsigned ell);

/// P[nullity = r] for an i.i.d. uniform n x n matrix over F_ell, via Moebius
/// inversion over the subspace lattice.
Rational uniform_pmf(unsigned ell, unsigned n, unsigned r);
/// Fraction of invertible n x n matrices, prod_{i=1..n} (1 - ell^-i).
Rational invertible_fraction(unsigned ell, unsigned n);
/// P[nullity = r] for a uniform symmetric n x n matrix (MacWilliams).
Rational macwilliams_pmf(unsigned ell, unsigned n, unsigned r);

/// Limiting corank laws of large uniform / uniform symmetric matrices. The
/// infinite products are truncated once the tail of the log-series is below tol.
double mu_cl(unsigned ell, unsigned r, double tol = 1e-15);
double mu_s(unsigned ell, unsigned r, double tol = 1e-15);

/// Exact P[V subset of ker M] for M uniform among C-symmetric matrices; V is
/// given by basis vectors (each of length n) and must be independent.
Rational kernel_contains_prob(const AlternatingForm& c, const std::vector<std::vector<std::uint8_t>>& basis);

/// Uniform C-symmetric matrix: lower triangle and diagonal i.i.d. uniform,
/// upper triangle forced by M_ij = M_ji + C_ij.
MatFl sample_c_symmetric(const AlternatingForm& c, Rng& rng);
BitMatrix sample_c_symmetric_bits(const BitMatrix& c, Rng& rng);

/// Uniform C-symmetric matrix with vanishing row and column sums. Requires
/// the rows of C to sum to zero.
MatFl sample_c_symmetric_zero_sums(const AlternatingForm& c, Rng& rng);
BitMatrix sample_c_symmetric_zero_sums_bits(const BitMatrix& c, Rng& rng);

/// Every matrix the corresponding sampler can return, each exactly once,
/// obtained by driving the sampler's construction with all draw sequences.
std::vector<MatFl> c_symmetric_support(const AlternatingForm& c, bool zero_sums, std::uint64_t budget = 1u << 24);

/// Mixing statistic for orbits of S_{n'} x S_{n''} acting on a set of size
/// n1 = n1' + n1'': the fraction of images meeting the original in d points.
struct MixingStat {
    Rational value;
    Rational bound;  // (1/d!) (n1'^2/n' + n1''^2/n'')^d
};
MixingStat mixing_stat(unsigned n_odd, unsigned n_even, unsigned n1_odd, unsigned n1_even, unsigned d);

/// Exact nullity law by enumerating all ell^(n^2) matrices and keeping those
/// in the model. C is required for the C-symmetric models.
RankDistribution exhaustive_pmf(unsigned ell, unsigned n, MatrixModel model, const AlternatingForm* c = nullptr,
                                std::uint64_t budget = 1u << 24);

/// Empirical nullity law of a sampler over `samples` draws.
RankDistribution empirical_pmf(const std::vector<std::size_t>& nullities, std::size_t n, unsigned ell);

}  // namespace fourrank
