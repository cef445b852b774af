#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "waring/matrix.hpp"
#include "waring/power_sums.hpp"

namespace waring {

/// Which constraint set produced the diagonal of the first part.
enum class AssignmentTier {
    /// x-powers and y-powers pairwise distinct, no symmetric solutions.
    Strict,
    /// Only the x-powers pairwise distinct.
    DistinctX,
    /// Equal eigenvalues share one nonzero root of the first part (p must not divide k).
    SharedRoots,
    /// Two-colored diagonal from the structured search.
    Structured,
};

std::string_view to_string(AssignmentTier tier);

/// Diagonal entry i of every part: roots[j] is the (i, i) entry of part j, so
/// the k-th powers of roots sum to lambda.
struct DiagonalChoice {
    Elem lambda;
    std::vector<Elem> roots;
};

struct PairAssignment {
    AssignmentTier tier = AssignmentTier::Strict;
    std::vector<DiagonalChoice> entries;
    bool used_backtracking = false;
};

struct EigenvalueShortage {
    Elem lambda;               // eigenvalue of C
    Elem target;               // value the pairs must sum to (after any shift)
    std::size_t multiplicity;  // how often it sits on the diagonal
    std::size_t classes;       // non-symmetric solution classes of X^k + Y^k = target
    bool blocking = false;     // the eigenvalue the search stalled on
};

struct DecompositionFailure {
    ErrorKind kind = ErrorKind::InsufficientClasses;
    std::string message;
    std::vector<EigenvalueShortage> shortages;
    /// 4 n^2 k^16: above this q every instance is guaranteed to succeed.
    double threshold = 0;
};

struct DecompositionResult {
    UTMatrix target;
    std::uint64_t k = 0;
    std::vector<UTMatrix> parts;
    PairAssignment assignment;
    bool verified = false;
    std::optional<DecompositionFailure> failure;

    bool ok() const noexcept { return verified && !failure; }
};

/// C = A^k + B^k with B diagonal and A^k having pairwise distinct diagonal
/// values. Shortages come back as a failure, never as an exception.
/// Errors: EvenCharacteristic.
DecompositionResult decompose_two(const UTMatrix& c, std::uint64_t k);

/// C = A^k + B^k + D^k with B, D diagonal. Errors: EvenCharacteristic.
DecompositionResult decompose_three(const UTMatrix& c, std::uint64_t k);

/// One point of the structured search space.
struct StructuredPlan {
    std::uint64_t index = 0;          // coloring bitmask, bit i set means color 2
    std::vector<int> coloring;        // 1 or 2 per diagonal position
    std::vector<std::pair<std::size_t, std::size_t>> a_entries;
    std::vector<std::pair<std::size_t, std::size_t>> b_entries;
    std::vector<PairSolution> pairs;  // (x1, y1), (x2, y2)
};

struct Obstruction {
    std::uint64_t explored = 0;
    std::vector<std::uint64_t> refuted;  // every coloring mask that failed, ascending
    std::string reason;
};

struct StructuredOutcome {
    std::optional<DecompositionResult> result;
    std::optional<StructuredPlan> plan;
    std::optional<Obstruction> obstruction;
    std::uint64_t explored = 0;
};

/// For C with a constant diagonal: two-color the diagonal by classes
/// (x1, y1), (x2, y2) of X^k + Y^k = lambda, split the off-diagonal entries
/// between A and B so each side is sparse-rootable, and take roots. Colorings
/// are tried in increasing mask order. Errors: EvenCharacteristic,
/// PreconditionViolated (non-constant diagonal, n > 8, more than 24 entries),
/// InsufficientClasses.
StructuredOutcome decompose_structured(const UTMatrix& c, std::uint64_t k);

/// True iff the k-th powers of parts sum to C. Errors: SizeMismatch, FieldMismatch.
bool verify_decomposition(const UTMatrix& c, std::span<const UTMatrix> parts, std::uint64_t k);

/// True iff every nonzero off-diagonal c_ij joins positions of different
/// color under mask (bit i set means color 2).
bool coloring_is_proper(const UTMatrix& c, std::uint64_t mask);

}  // namespace waring
