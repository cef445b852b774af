#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "waring/canonical.hpp"
#include "waring/matrix.hpp"

namespace waring {

/// Mixed-radix integer code of a matrix in T_n(F_q): packed entry i is digit i
/// (base q, least significant first).
class MatrixCodec {
public:
    /// Errors: EnumerationTooLarge when q^{n(n+1)/2} exceeds the limit.
    MatrixCodec(Field field, std::size_t n, std::uint64_t limit);

    const Field& field() const noexcept { return field_; }
    std::size_t size() const noexcept { return n_; }
    std::uint64_t count() const noexcept { return count_; }

    std::uint64_t encode(const UTMatrix& a) const;
    UTMatrix decode(std::uint64_t code) const;
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;

private:
    Field field_;
    std::size_t n_;
    std::size_t dim_;
    std::uint64_t count_;
};

/// {A^k : A in T_n(F_q)} with the smallest-code root of each member.
class KthPowerSet {
public:
    KthPowerSet(const Field& field, std::size_t n, std::uint64_t k);

    const MatrixCodec& codec() const noexcept { return codec_; }
    std::uint64_t k() const noexcept { return k_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool contains(std::uint64_t code) const { return member_[code]; }
    bool contains(const UTMatrix& a) const { return member_[codec_.encode(a)]; }
    /// Sorted member codes.
    const std::vector<std::uint64_t>& members() const noexcept { return members_; }
    /// Smallest-code A with A^k = C, if any.
    std::optional<UTMatrix> root_of(const UTMatrix& c) const;

private:
    MatrixCodec codec_;
    std::uint64_t k_;
    std::vector<bool> member_;
    std::vector<std::uint64_t> members_;
    std::vector<std::uint64_t> roots_;  // parallel to members_
};

/// Guard q^{n(n+1)/2} <= 10^8 (WARING_MAX_ENUM overrides). Errors: EnumerationTooLarge.
KthPowerSet all_kth_powers(const Field& field, std::size_t n, std::uint64_t k);

/// Smallest r <= cap with C a sum of r k-th powers, nullopt when above cap.
std::optional<std::size_t> min_waring_number(const UTMatrix& c, std::uint64_t k, std::size_t cap);
std::optional<std::size_t> min_waring_number(const KthPowerSet& powers, const UTMatrix& c, std::size_t cap);

/// C = A^k + B^k for some A, B; returns the pair of roots.
std::optional<std::pair<UTMatrix, UTMatrix>> two_power_witness(const KthPowerSet& powers, const UTMatrix& c);

struct WaringWitness {
    UTMatrix target;
    std::vector<UTMatrix> roots;  // target = sum of root^k
};

struct WaringReport {
    Field field;
    std::size_t n = 0;
    std::uint64_t k = 0;
    std::size_t cap = 0;
    std::size_t power_count = 0;
    /// Per matrix code; nullopt means above the cap.
    std::vector<std::optional<std::size_t>> per_matrix_min;
    /// Key 0 counts matrices above the cap.
    std::map<std::size_t, std::uint64_t> histogram;
    /// Waring number of T_n(F_q) if every matrix is within the cap.
    std::optional<std::size_t> max_over_field;
    /// Smallest-code matrix for every attained minimum, with its summands.
    std::vector<WaringWitness> witnesses;

    std::string to_csv() const;
};

WaringReport waring_report(const Field& field, std::size_t n, std::uint64_t k, std::size_t cap);

/// P in B_n with P^{-1} A P = B, scanning B_n in code order.
/// Guard (q-1)^n q^{n(n-1)/2} <= 10^7. Errors: EnumerationTooLarge, SizeMismatch.
std::optional<ConjugationWitness> bn_conjugate(const UTMatrix& a, const UTMatrix& b);

struct NegativeCheck {
    std::string name;
    std::string claim;
    bool applicable = false;
    bool holds = false;
    std::string detail;
};

struct NegativeReport {
    Field field;
    std::uint64_t k = 0;
    std::vector<NegativeCheck> checks;

    bool all_hold() const;
};

/// Runs every counterexample check whose hypotheses hold for (F, k):
/// junction((2,2)) is not a square in T_4; J_{0,2} and J_{0,3} are not sums of
/// two k-th powers when -1 is not a k-th power; [[1,1],[0,1]] is not a k-th
/// power when p | k; J_{0,4}^2 is not B_4-conjugate to J_{0,2} + J_{0,2}.
NegativeReport negative_checks(const Field& field, std::uint64_t k);

}  // namespace waring
