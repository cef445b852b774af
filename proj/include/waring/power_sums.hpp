#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "waring/field.hpp"

namespace waring {

/// The power map a -> a^k tabulated over all of F_q, with its fibers.
class PowerMap {
public:
    PowerMap(Field field, std::uint64_t k);

    const Field& field() const noexcept { return field_; }
    std::uint64_t k() const noexcept { return k_; }

    Elem power(Elem a) const noexcept { return powers_[a.v]; }
    bool in_image(Elem a) const noexcept { return !fibers_[a.v].empty(); }
    /// Roots of a, ascending by encoding (empty if a is not a k-th power).
    const std::vector<Elem>& roots(Elem a) const noexcept { return fibers_[a.v]; }
    /// Image values, ascending by encoding (0 included).
    const std::vector<Elem>& image() const noexcept { return image_; }

private:
    Field field_;
    std::uint64_t k_;
    std::vector<Elem> powers_;
    std::vector<std::vector<Elem>> fibers_;
    std::vector<Elem> image_;
};

/// f(x, y) = x^{k-1} + x^{k-2} y + ... + y^{k-1}, so that x^k - y^k = (x - y) f(x, y).
Elem eval_f(const Field& field, Elem x, Elem y, std::uint64_t k);

struct HomogeneousZeroReport {
    std::uint64_t q = 0;
    std::uint64_t k = 0;
    std::uint64_t pairs_checked = 0;
    std::uint64_t zeros = 0;
    std::uint64_t zeros_on_diagonal = 0;  // a = b != 0
    std::vector<std::pair<Elem, Elem>> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/// Exhaustively checks, over all (a, b) != (0, 0), that f(a, b) = 0 exactly
/// when (a = b and p | k) or (a != b and a^k = b^k).
HomogeneousZeroReport f_zero_characterization(const Field& field, std::uint64_t k);

struct PairSolution {
    Elem x;
    Elem y;

    friend constexpr auto operator<=>(const PairSolution&, const PairSolution&) = default;
};

struct TripleSolution {
    Elem x;
    Elem y;
    Elem z;

    friend constexpr auto operator<=>(const TripleSolution&, const TripleSolution&) = default;
};

/// All (x, y) with x^k + y^k = lambda, sorted by (x, y) encoding.
std::vector<PairSolution> enumerate_pair_solutions(const Field& field, Elem lambda, std::uint64_t k);
std::vector<PairSolution> enumerate_pair_solutions(const PowerMap& powers, Elem lambda);

/// Same set computed by the direct q^2 scan; used below q = 2000 and as a cross-check.
std::vector<PairSolution> enumerate_pair_solutions_scan(const PowerMap& powers, Elem lambda);

/// Solutions sharing one (x^k, y^k) signature with x^k != y^k.
struct SolutionClass {
    Elem sig_x;
    Elem sig_y;
    std::vector<PairSolution> members;  // sorted; members.front() is the representative

    const PairSolution& rep() const { return members.front(); }
};

/// S = U + V_1 + ... + V_r: U is the symmetric part x^k = y^k, the V_i are the
/// maximal classes of equal signature. Classes are ordered by representative.
struct SolutionClassification {
    std::uint64_t q = 0;
    std::uint64_t k = 0;
    Elem lambda;
    std::vector<PairSolution> symmetric;  // U
    std::vector<SolutionClass> classes;   // V_1..V_r

    std::size_t solution_count() const;
    /// r plus one when U is nonempty (U is itself a single signature class).
    std::size_t class_count() const noexcept { return classes.size() + (symmetric.empty() ? 0 : 1); }
};

SolutionClassification classify_solutions(const PowerMap& powers, Elem lambda,
                                          std::span<const PairSolution> solutions);
SolutionClassification classify_solutions(const Field& field, Elem lambda, std::uint64_t k);

/// n representatives of distinct classes V_i (U excluded for n >= 2), in
/// representative order. For n = 1 the smallest solution overall.
/// Throws InsufficientClasses when fewer than n classes exist.
std::vector<PairSolution> select_pairs(const Field& field, Elem lambda, std::uint64_t k, std::size_t n);

/// InsufficientClasses with the data needed for diagnostics.
class InsufficientClassesError : public Error {
public:
    InsufficientClassesError(Elem lambda, std::size_t needed, std::size_t available, const std::string& detail)
        : Error(ErrorKind::InsufficientClasses, detail), lambda(lambda), needed(needed), available(available) {}

    Elem lambda;
    std::size_t needed;
    std::size_t available;
};

struct Demand {
    Elem lambda;
    std::size_t multiplicity = 1;
};

/// How strictly a multi-eigenvalue pair assignment is constrained.
enum class AssignmentRule {
    /// x-powers pairwise distinct, y-powers pairwise distinct, x^k != y^k
    /// (the last only when the total count n >= 2).
    Strict,
    /// Only the x-powers pairwise distinct; symmetric solutions allowed.
    DistinctX,
};

struct DemandPairs {
    Elem lambda;
    std::vector<PairSolution> pairs;
};

/// Pairs for each demand, in the order the demands were given.
struct SystemAssignment {
    std::vector<DemandPairs> per_demand;
    bool used_backtracking = false;
};

/// Chooses l_i solutions of X^k + Y^k = lambda_i for every demand subject to
/// the rule. Greedy pass first (demands by decreasing multiplicity, then
/// increasing lambda; first class whose powers are still unused), then a
/// depth-first backtrack if greedy gets stuck.
/// Throws InsufficientClasses naming the failing lambda.
SystemAssignment select_system_pairs(const Field& field, std::span<const Demand> demands, std::uint64_t k,
                                     AssignmentRule rule = AssignmentRule::Strict);

struct Shift {
    Elem z;
    Elem shifted;  // lambda - z^k
};

/// Picks z so that lambda - z^k is nonzero and not forbidden: z = 0 when that
/// already works, otherwise the smallest encoding that does.
Shift reduce_three_to_two(const Field& field, Elem lambda, std::uint64_t k, std::span<const Elem> forbidden);

struct LangWeilReport {
    std::uint64_t q = 0;
    std::uint64_t k = 0;
    std::size_t arity = 0;
    std::uint64_t count = 0;  // N
    double expected = 0;      // q^{m-1}
    double bound = 0;         // k^{2m} sqrt(q^{m-1})
    bool ok = false;
};

/// Counts the zeros of a_1 X_1^k + ... + a_m X_m^k - 1 by exhaustive scan and
/// compares with |N - q^{m-1}| <= k^{2m} sqrt(q^{m-1}).
LangWeilReport lang_weil_check(const Field& field, std::uint64_t k, std::span<const Elem> alpha);

struct ZeroSumClassCount {
    std::uint64_t formula = 0;   // (q-1)/gcd(k, q-1) + 1
    std::uint64_t observed = 0;  // class count of X^k + Y^k = 0
    bool agrees() const noexcept { return formula == observed; }
};

/// Requires odd p and -1 a k-th power (HypothesisViolated otherwise).
ZeroSumClassCount count_zero_sum_classes(const Field& field, std::uint64_t k);

/// Upper bound on q^m style enumerations; WARING_MAX_ENUM overrides the default.
std::uint64_t enumeration_limit(std::uint64_t default_limit);

}  // namespace waring
