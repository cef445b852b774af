#include "waring/decomposer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <sstream>
#include <tuple>

namespace waring {

std::string_view to_string(AssignmentTier tier) {
    switch (tier) {
        case AssignmentTier::Strict: return "strict";
        case AssignmentTier::DistinctX: return "distinct_x";
        case AssignmentTier::SharedRoots: return "shared_roots";
        case AssignmentTier::Structured: return "structured";
    }
    return "?";
}

namespace {

struct Eigenvalue {
    Elem value;
    std::vector<std::size_t> positions;
};

/// Distinct diagonal values in ascending order, with their positions.
std::vector<Eigenvalue> group_diagonal(const UTMatrix& c) {
    std::map<Elem, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < c.size(); ++i) groups[c(i, i)].push_back(i);
    std::vector<Eigenvalue> out;
    for (auto& [value, positions] : groups) out.push_back({value, std::move(positions)});
    return out;
}

void require_odd(const Field& field) {
    if (field.p() == 2)
        throw Error(ErrorKind::EvenCharacteristic, "decompositions need odd characteristic, got F_" +
                                                       std::to_string(field.q()));
}

double threshold(std::size_t n, std::uint64_t k) {
    return 4.0 * static_cast<double>(n) * static_cast<double>(n) * std::pow(static_cast<double>(k), 16.0);
}

UTMatrix diagonal_root(const Field& field, std::span<const Elem> powers, std::uint64_t k) {
    std::vector<Elem> roots;
    roots.reserve(powers.size());
    for (auto p : powers) roots.push_back(field.kth_roots(p, k).front());
    return UTMatrix::diagonal(field, roots);
}

/// Assembles parts from per-position k-th powers: the first part carries the
/// strict upper triangle of C.
DecompositionResult assemble(const UTMatrix& c, std::uint64_t k, const std::vector<std::vector<Elem>>& powers,
                             AssignmentTier tier, bool backtracked) {
    const Field& field = c.field();
    UTMatrix first_power = c.strict_upper();
    for (std::size_t i = 0; i < c.size(); ++i) first_power.set(i, i, powers[0][i]);

    DecompositionResult result{c, k, {}, {}, false, std::nullopt};
    result.parts.push_back(tier == AssignmentTier::SharedRoots ? kth_root_backsubstitute(first_power, k)
                                                               : kth_root_distinct_diag(first_power, k));
    for (std::size_t j = 1; j < powers.size(); ++j) result.parts.push_back(diagonal_root(field, powers[j], k));

    result.assignment.tier = tier;
    result.assignment.used_backtracking = backtracked;
    for (std::size_t i = 0; i < c.size(); ++i) {
        DiagonalChoice choice{c(i, i), {}};
        for (const auto& part : result.parts) choice.roots.push_back(part(i, i));
        result.assignment.entries.push_back(std::move(choice));
    }
    result.verified = verify_decomposition(c, result.parts, k);
    if (!result.verified) throw std::logic_error("assembled decomposition failed verification");
    return result;
}

std::vector<EigenvalueShortage> shortages_for(const Field& field, const std::vector<Eigenvalue>& eigen,
                                              const std::vector<Elem>& targets, std::uint64_t k,
                                              std::optional<Elem> blocking) {
    const PowerMap powers(field, k);
    std::vector<EigenvalueShortage> out;
    for (std::size_t i = 0; i < eigen.size(); ++i) {
        const auto cls = classify_solutions(powers, targets[i], enumerate_pair_solutions(powers, targets[i]));
        out.push_back({eigen[i].value, targets[i], eigen[i].positions.size(), cls.classes.size(),
                       blocking && *blocking == targets[i]});
    }
    return out;
}

DecompositionResult failed(const UTMatrix& c, std::uint64_t k, std::size_t parts, DecompositionFailure failure) {
    DecompositionResult result{c, k, {}, {}, false, std::move(failure)};
    result.parts.reserve(parts);
    return result;
}

/// Per-position powers from a system assignment: each eigenvalue's pairs go to
/// its positions in increasing order.
std::vector<std::vector<Elem>> powers_from_system(const Field& field, const std::vector<Eigenvalue>& eigen,
                                                  const SystemAssignment& sys, std::uint64_t k, std::size_t n) {
    std::vector<std::vector<Elem>> powers(2, std::vector<Elem>(n));
    for (std::size_t e = 0; e < eigen.size(); ++e)
        for (std::size_t r = 0; r < eigen[e].positions.size(); ++r) {
            const auto& pair = sys.per_demand[e].pairs[r];
            powers[0][eigen[e].positions[r]] = field.pow(pair.x, k);
            powers[1][eigen[e].positions[r]] = field.pow(pair.y, k);
        }
    return powers;
}

/// Kuhn matching of slots to distinct values; options are tried in the given
/// order so the result is deterministic.
std::optional<std::vector<Elem>> match_distinct(const std::vector<std::vector<Elem>>& options, std::uint64_t q) {
    std::vector<std::optional<std::size_t>> owner(q);
    std::vector<Elem> chosen(options.size());
    std::vector<std::uint64_t> seen(q, 0);
    std::uint64_t stamp = 0;
    auto augment = [&](auto&& self, std::size_t slot) -> bool {
        for (auto v : options[slot]) {
            if (seen[v.v] == stamp) continue;
            seen[v.v] = stamp;
            if (!owner[v.v] || self(self, *owner[v.v])) {
                owner[v.v] = slot;
                chosen[slot] = v;
                return true;
            }
        }
        return false;
    };
    for (std::size_t slot = 0; slot < options.size(); ++slot) {
        ++stamp;
        if (!augment(augment, slot)) return std::nullopt;
    }
    return chosen;
}

/// Smallest (y, z) with y^k + z^k = t, as powers.
std::pair<Elem, Elem> smallest_pair_powers(const PowerMap& powers, Elem t) {
    const auto sols = enumerate_pair_solutions(powers, t);
    return {powers.power(sols.front().x), powers.power(sols.front().y)};
}

/// x-power options s with mu - s a sum of two k-th powers.
std::vector<Elem> three_part_options(const PowerMap& powers, const std::vector<bool>& two_sums, Elem mu) {
    const Field& field = powers.field();
    std::vector<Elem> out;
    for (auto s : powers.image())
        if (two_sums[field.sub(mu, s).v]) out.push_back(s);
    return out;
}

}  // namespace

bool verify_decomposition(const UTMatrix& c, std::span<const UTMatrix> parts, std::uint64_t k) {
    UTMatrix sum(c.field(), c.size());
    for (const auto& part : parts) sum = sum + mat_pow(part, k);
    return sum == c;
}

DecompositionResult decompose_two(const UTMatrix& c, std::uint64_t k) {
    const Field& field = c.field();
    require_odd(field);
    const auto eigen = group_diagonal(c);
    std::vector<Demand> demands;
    std::vector<Elem> targets;
    for (const auto& e : eigen) {
        demands.push_back({e.value, e.positions.size()});
        targets.push_back(e.value);
    }

    std::optional<InsufficientClassesError> last;
    for (auto rule : {AssignmentRule::Strict, AssignmentRule::DistinctX}) {
        try {
            const auto sys = select_system_pairs(field, demands, k, rule);
            const auto tier = rule == AssignmentRule::Strict ? AssignmentTier::Strict : AssignmentTier::DistinctX;
            return assemble(c, k, powers_from_system(field, eigen, sys, k, c.size()), tier, sys.used_backtracking);
        } catch (const InsufficientClassesError& e) {
            last = e;
        }
    }
    DecompositionFailure failure{ErrorKind::InsufficientClasses, last->what(),
                                 shortages_for(field, eigen, targets, k, last->lambda), threshold(c.size(), k)};
    return failed(c, k, 2, std::move(failure));
}

DecompositionResult decompose_three(const UTMatrix& c, std::uint64_t k) {
    const Field& field = c.field();
    require_odd(field);
    const std::size_t n = c.size();
    const auto eigen = group_diagonal(c);
    const PowerMap powers(field, k);

    // Tier 1: shift each eigenvalue to a nonzero target distinct from every
    // other eigenvalue and earlier target, then assign strict pairs.
    std::vector<Elem> targets;
    std::vector<Elem> shifts;
    std::optional<Elem> blocking;
    std::string message;
    try {
        for (std::size_t i = 0; i < eigen.size(); ++i) {
            std::vector<Elem> forbidden = targets;
            for (std::size_t j = 0; j < eigen.size(); ++j)
                if (j != i) forbidden.push_back(eigen[j].value);
            const auto shift = reduce_three_to_two(field, eigen[i].value, k, forbidden);
            targets.push_back(shift.shifted);
            shifts.push_back(shift.z);
        }
        std::vector<Demand> demands;
        for (std::size_t i = 0; i < eigen.size(); ++i) demands.push_back({targets[i], eigen[i].positions.size()});
        const auto sys = select_system_pairs(field, demands, k, AssignmentRule::Strict);
        auto pw = powers_from_system(field, eigen, sys, k, n);
        pw.emplace_back(n);
        for (std::size_t i = 0; i < eigen.size(); ++i)
            for (auto pos : eigen[i].positions) pw[2][pos] = powers.power(shifts[i]);
        return assemble(c, k, pw, AssignmentTier::Strict, sys.used_backtracking);
    } catch (const InsufficientClassesError& e) {
        blocking = e.lambda;
        message = e.what();
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoAdmissibleShift) throw;
        message = e.what();
    }

    std::vector<bool> two_sums(field.q(), false);
    for (auto a : powers.image())
        for (auto b : powers.image()) two_sums[field.add(a, b).v] = true;

    auto finish = [&](const std::vector<Elem>& first, AssignmentTier tier) {
        std::vector<std::vector<Elem>> pw(3, std::vector<Elem>(n));
        for (std::size_t i = 0; i < n; ++i) {
            pw[0][i] = first[i];
            std::tie(pw[1][i], pw[2][i]) = smallest_pair_powers(powers, field.sub(c(i, i), first[i]));
        }
        return assemble(c, k, pw, tier, false);
    };

    // Tier 2: distinct x-powers per position; y and z are free.
    {
        std::vector<std::vector<Elem>> options(n);
        for (std::size_t i = 0; i < n; ++i) options[i] = three_part_options(powers, two_sums, c(i, i));
        if (auto chosen = match_distinct(options, field.q())) return finish(*chosen, AssignmentTier::DistinctX);
    }

    // Tier 3: one x-power per eigenvalue, shared by its positions through a
    // common nonzero root.
    if (k % field.p() != 0 || k == 1) {
        std::vector<std::vector<Elem>> options(eigen.size());
        for (std::size_t e = 0; e < eigen.size(); ++e) {
            for (auto s : three_part_options(powers, two_sums, eigen[e].value))
                if (s != field.zero() || eigen[e].positions.size() == 1 || k == 1) options[e].push_back(s);
        }
        if (auto chosen = match_distinct(options, field.q())) {
            std::vector<Elem> first(n);
            for (std::size_t e = 0; e < eigen.size(); ++e)
                for (auto pos : eigen[e].positions) first[pos] = (*chosen)[e];
            return finish(first, AssignmentTier::SharedRoots);
        }
    }

    for (std::size_t i = targets.size(); i < eigen.size(); ++i) targets.push_back(eigen[i].value);
    DecompositionFailure failure{ErrorKind::InsufficientClasses,
                                 "no three-part assignment over F_" + std::to_string(field.q()) + ", k = " +
                                     std::to_string(k) + " (strict tier: " + message + ")",
                                 shortages_for(field, eigen, targets, k, blocking), threshold(n, k)};
    return failed(c, k, 3, std::move(failure));
}

bool coloring_is_proper(const UTMatrix& c, std::uint64_t mask) {
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j)
            if (c(i, j) != c.field().zero() && ((mask >> i) & 1) == ((mask >> j) & 1)) return false;
    return true;
}

StructuredOutcome decompose_structured(const UTMatrix& c, std::uint64_t k) {
    const Field& field = c.field();
    require_odd(field);
    const std::size_t n = c.size();
    if (n == 0 || n > 8) throw Error(ErrorKind::PreconditionViolated, "structured search covers 1 <= n <= 8");
    const Elem lambda = c(0, 0);
    for (std::size_t i = 1; i < n; ++i)
        if (c(i, i) != lambda)
            throw Error(ErrorKind::PreconditionViolated, "structured search needs a constant diagonal");

    std::vector<std::pair<std::size_t, std::size_t>> entries;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (c(i, j) != field.zero()) entries.emplace_back(i, j);
    if (entries.size() > 24)
        throw Error(ErrorKind::PreconditionViolated, "structured search covers at most 24 off-diagonal entries");

    const auto pairs = select_pairs(field, lambda, k, entries.empty() ? 1 : 2);

    // Entries (r, s) and (s, t) may not share a side; split by 2-coloring.
    std::vector<int> owner(entries.size(), -1);
    bool split_ok = true;
    for (std::size_t start = 0; start < entries.size() && split_ok; ++start) {
        if (owner[start] >= 0) continue;
        owner[start] = 0;
        std::deque<std::size_t> queue{start};
        while (!queue.empty() && split_ok) {
            const std::size_t e = queue.front();
            queue.pop_front();
            for (std::size_t f = 0; f < entries.size(); ++f) {
                const bool chained = entries[e].second == entries[f].first || entries[f].second == entries[e].first;
                if (!chained) continue;
                if (owner[f] < 0) {
                    owner[f] = 1 - owner[e];
                    queue.push_back(f);
                } else if (owner[f] == owner[e]) {
                    split_ok = false;
                    break;
                }
            }
        }
    }

    StructuredOutcome outcome;
    Obstruction obstruction;
    const std::uint64_t masks = entries.empty() ? 1 : (std::uint64_t{1} << n);
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
        ++outcome.explored;
        if (!split_ok || !coloring_is_proper(c, mask)) {
            obstruction.refuted.push_back(mask);
            continue;
        }
        StructuredPlan plan;
        plan.index = mask;
        plan.pairs = pairs;
        std::vector<std::vector<Elem>> pw(2, std::vector<Elem>(n));
        for (std::size_t i = 0; i < n; ++i) {
            const int color = ((mask >> i) & 1) ? 2 : 1;
            plan.coloring.push_back(color);
            const auto& pair = pairs[std::min<std::size_t>(color - 1, pairs.size() - 1)];
            pw[0][i] = field.pow(pair.x, k);
            pw[1][i] = field.pow(pair.y, k);
        }
        UTMatrix a_power = UTMatrix::diagonal(field, pw[0]);
        UTMatrix b_power = UTMatrix::diagonal(field, pw[1]);
        for (std::size_t e = 0; e < entries.size(); ++e) {
            const auto [i, j] = entries[e];
            if (owner[e] == 0) {
                a_power.set(i, j, c(i, j));
                plan.a_entries.push_back(entries[e]);
            } else {
                b_power.set(i, j, c(i, j));
                plan.b_entries.push_back(entries[e]);
            }
        }
        DecompositionResult result{c, k, {kth_root_sparse(a_power, k), kth_root_sparse(b_power, k)}, {}, false,
                                   std::nullopt};
        result.assignment.tier = AssignmentTier::Structured;
        for (std::size_t i = 0; i < n; ++i)
            result.assignment.entries.push_back({lambda, {result.parts[0](i, i), result.parts[1](i, i)}});
        result.verified = verify_decomposition(c, result.parts, k);
        if (!result.verified) throw std::logic_error("structured decomposition failed verification");
        outcome.result = std::move(result);
        outcome.plan = std::move(plan);
        return outcome;
    }
    obstruction.explored = outcome.explored;
    obstruction.reason = split_ok ? "the entry graph has an odd cycle, so no diagonal 2-coloring separates "
                                    "every nonzero entry"
                                  : "chained entries cannot be split between A and B";
    outcome.obstruction = std::move(obstruction);
    return outcome;
}

}  // namespace waring
