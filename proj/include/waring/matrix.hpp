#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "waring/field.hpp"

namespace waring {

/// An n x n upper-triangular matrix over F_q. Only the n(n+1)/2 entries with
/// i <= j are stored (row-major); entries below the diagonal read as zero.
/// Indices are 0-based.
class UTMatrix {
public:
    UTMatrix(Field field, std::size_t n);

    static UTMatrix zero(const Field& field, std::size_t n) { return UTMatrix(field, n); }
    static UTMatrix identity(const Field& field, std::size_t n);
    static UTMatrix diagonal(const Field& field, std::span<const Elem> diag);
    /// From packed row-major entries (i <= j).
    static UTMatrix from_packed(const Field& field, std::size_t n, std::span<const Elem> packed);

    const Field& field() const noexcept { return field_; }
    std::size_t size() const noexcept { return n_; }
    std::span<const Elem> packed() const noexcept { return entries_; }

    Elem at(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, Elem value);
    Elem operator()(std::size_t i, std::size_t j) const noexcept {
        return i > j ? Elem{} : entries_[index(i, j)];
    }

    std::vector<Elem> diag() const;
    /// Same matrix with the diagonal cleared.
    UTMatrix strict_upper() const;
    bool is_diagonal() const noexcept;
    bool is_strictly_upper() const noexcept;
    std::size_t nonzero_off_diagonal() const noexcept;

    friend bool operator==(const UTMatrix& a, const UTMatrix& b);

private:
    std::size_t index(std::size_t i, std::size_t j) const noexcept { return i * n_ - i * (i - 1) / 2 + (j - i); }

    Field field_;
    std::size_t n_;
    std::vector<Elem> entries_;
};

UTMatrix operator+(const UTMatrix& a, const UTMatrix& b);
UTMatrix operator-(const UTMatrix& a, const UTMatrix& b);
/// (AB)_ij = sum_{l=i..j} a_il b_lj.
UTMatrix operator*(const UTMatrix& a, const UTMatrix& b);
UTMatrix scale(const UTMatrix& a, Elem c);

UTMatrix mat_mul(const UTMatrix& a, const UTMatrix& b);
/// A^e by repeated squaring; A^0 = I.
UTMatrix mat_pow(const UTMatrix& a, std::uint64_t e);
/// Inverse of a matrix with nonzero diagonal (DivisionByZero otherwise).
UTMatrix inverse(const UTMatrix& a);

/// Matrix text form: rows separated by ';', row i lists (i,i),(i,i+1),...,(i,n)
/// as comma-separated decimal encodings. "0,1;0" is the 2x2 nilpotent Jordan block.
std::string to_text(const UTMatrix& a);
UTMatrix parse_matrix(const Field& field, std::string_view text);

/// Dense rows for display.
std::string to_pretty(const UTMatrix& a);

/// E_rs (0-based, r <= s).
UTMatrix elementary(const Field& field, std::size_t n, std::size_t r, std::size_t s);
/// lambda on the diagonal, 1 on the first superdiagonal.
UTMatrix jordan_block(const Field& field, Elem lambda, std::size_t n);
/// E_{n1,n1+1} + E_{n1+n2,n1+n2+1} + ... for a partition (n1, ..., nr).
UTMatrix junction_matrix(const Field& field, std::span<const std::size_t> partition);
/// Block diagonal sum.
UTMatrix direct_sum(const UTMatrix& a, const UTMatrix& b);

/// Triangular k-th root by superdiagonal back-substitution. Diagonal roots
/// are the smallest-encoding k-th roots of c_ii; each a_rs is solved from
/// c_rs = a_rs f(a_rr, a_ss) + alpha_rs. Requires f(a_rr, a_ss) != 0 for every
/// r < s (PreconditionViolated otherwise); equal diagonal values share a root.
UTMatrix kth_root_backsubstitute(const UTMatrix& c, std::uint64_t k);

/// Root when the c_ii are pairwise distinct k-th powers.
/// Errors: DiagNotKthPower, DiagNotDistinct.
UTMatrix kth_root_distinct_diag(const UTMatrix& c, std::uint64_t k);

/// Root when c_rs c_st = 0 for all r < s < t and c_ij != 0 implies c_ii != c_jj:
/// a_rs = c_rs f(a_rr, a_ss)^{-1}. Errors: PreconditionViolated, DiagNotKthPower.
UTMatrix kth_root_sparse(const UTMatrix& c, std::uint64_t k);

struct EmbeddedPower {
    UTMatrix power;
    UTMatrix root;
};

/// Inserts a new row and column at index l (0..n) holding x^k on the
/// diagonal and zeros elsewhere, in both C and its root.
/// Throws RootMismatch if root^k != C (checked before and after).
EmbeddedPower embed_power(const UTMatrix& c, const UTMatrix& root, std::size_t l, Elem x, std::uint64_t k);

}  // namespace waring
