#include "waring/power_sums.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>

namespace waring {

PowerMap::PowerMap(Field field, std::uint64_t k)
    : field_(std::move(field)), k_(k), powers_(field_.q()), fibers_(field_.q()) {
    for (std::uint64_t a = 0; a < field_.q(); ++a) {
        const Elem p = field_.pow(Elem{a}, k_);
        powers_[a] = p;
        fibers_[p.v].push_back(Elem{a});
    }
    for (std::uint64_t a = 0; a < field_.q(); ++a)
        if (!fibers_[a].empty()) image_.push_back(Elem{a});
}

Elem eval_f(const Field& field, Elem x, Elem y, std::uint64_t k) {
    if (k == 0) throw Error(ErrorKind::PreconditionViolated, "eval_f needs k >= 1");
    // Horner in x: f_{j+1} = f_j x + y^j
    Elem acc = field.one();
    Elem y_pow = field.one();
    for (std::uint64_t j = 1; j < k; ++j) {
        y_pow = field.mul(y_pow, y);
        acc = field.add(field.mul(acc, x), y_pow);
    }
    return acc;
}

HomogeneousZeroReport f_zero_characterization(const Field& field, std::uint64_t k) {
    HomogeneousZeroReport report;
    report.q = field.q();
    report.k = k;
    const PowerMap powers(field, k);
    const bool p_divides_k = k % field.p() == 0;
    for (std::uint64_t a = 0; a < field.q(); ++a) {
        for (std::uint64_t b = 0; b < field.q(); ++b) {
            if (a == 0 && b == 0) continue;
            ++report.pairs_checked;
            const bool zero = eval_f(field, Elem{a}, Elem{b}, k) == field.zero();
            const bool predicted =
                (a == b && p_divides_k) || (a != b && powers.power(Elem{a}) == powers.power(Elem{b}));
            if (zero) {
                ++report.zeros;
                if (a == b) ++report.zeros_on_diagonal;
            }
            if (zero != predicted) report.violations.emplace_back(Elem{a}, Elem{b});
        }
    }
    return report;
}

std::vector<PairSolution> enumerate_pair_solutions_scan(const PowerMap& powers, Elem lambda) {
    const Field& field = powers.field();
    std::vector<PairSolution> out;
    for (std::uint64_t x = 0; x < field.q(); ++x) {
        const Elem px = powers.power(Elem{x});
        for (std::uint64_t y = 0; y < field.q(); ++y)
            if (field.add(px, powers.power(Elem{y})) == lambda) out.push_back({Elem{x}, Elem{y}});
    }
    return out;
}

std::vector<PairSolution> enumerate_pair_solutions(const PowerMap& powers, Elem lambda) {
    const Field& field = powers.field();
    if (field.q() <= 2000) return enumerate_pair_solutions_scan(powers, lambda);
    // pairs of power values summing to lambda, expanded by their root fibers
    std::vector<PairSolution> out;
    for (Elem s : powers.image()) {
        const Elem t = field.sub(lambda, s);
        if (!powers.in_image(t)) continue;
        for (Elem x : powers.roots(s))
            for (Elem y : powers.roots(t)) out.push_back({x, y});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PairSolution> enumerate_pair_solutions(const Field& field, Elem lambda, std::uint64_t k) {
    return enumerate_pair_solutions(PowerMap(field, k), lambda);
}

std::size_t SolutionClassification::solution_count() const {
    std::size_t total = symmetric.size();
    for (const auto& c : classes) total += c.members.size();
    return total;
}

SolutionClassification classify_solutions(const PowerMap& powers, Elem lambda,
                                          std::span<const PairSolution> solutions) {
    SolutionClassification out;
    out.q = powers.field().q();
    out.k = powers.k();
    out.lambda = lambda;
    std::vector<PairSolution> sorted(solutions.begin(), solutions.end());
    std::sort(sorted.begin(), sorted.end());
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> index;
    for (const auto& s : sorted) {
        const Elem sx = powers.power(s.x), sy = powers.power(s.y);
        if (sx == sy) {
            out.symmetric.push_back(s);
            continue;
        }
        auto [it, inserted] = index.try_emplace({sx.v, sy.v}, out.classes.size());
        if (inserted) out.classes.push_back({sx, sy, {}});
        out.classes[it->second].members.push_back(s);
    }
    return out;
}

SolutionClassification classify_solutions(const Field& field, Elem lambda, std::uint64_t k) {
    const PowerMap powers(field, k);
    const auto solutions = enumerate_pair_solutions(powers, lambda);
    return classify_solutions(powers, lambda, solutions);
}

std::vector<PairSolution> select_pairs(const Field& field, Elem lambda, std::uint64_t k, std::size_t n) {
    if (n == 0) throw Error(ErrorKind::PreconditionViolated, "select_pairs needs n >= 1");
    const auto cls = classify_solutions(field, lambda, k);
    if (n == 1) {
        std::optional<PairSolution> best;
        if (!cls.symmetric.empty()) best = cls.symmetric.front();
        for (const auto& c : cls.classes)
            if (!best || c.rep() < *best) best = c.rep();
        if (!best)
            throw InsufficientClassesError(lambda, 1, 0,
                                           "X^k + Y^k = " + std::to_string(lambda.v) + " has no solution");
        return {*best};
    }
    if (cls.classes.size() < n) {
        std::ostringstream os;
        os << "X^" << k << " + Y^" << k << " = " << lambda.v << " over F_" << field.q() << " has "
           << cls.classes.size() << " non-symmetric classes, " << n << " needed";
        throw InsufficientClassesError(lambda, n, cls.classes.size(), os.str());
    }
    std::vector<PairSolution> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(cls.classes[i].rep());
    return out;
}

namespace {

struct Candidate {
    PairSolution rep;
    Elem sx;
    Elem sy;
};

class SystemSolver {
public:
    SystemSolver(std::vector<std::vector<Candidate>> candidates, std::vector<std::size_t> slot_demand, bool strict,
                 std::uint64_t q)
        : candidates_(std::move(candidates)),
          slot_demand_(std::move(slot_demand)),
          strict_(strict),
          used_x_(q, false),
          used_y_(q, false),
          choice_(slot_demand_.size(), 0) {}

    // Returns the first slot that could not be filled, or npos on success.
    std::size_t greedy() {
        reset();
        for (std::size_t slot = 0; slot < slot_demand_.size(); ++slot) {
            const auto& cands = candidates_[slot_demand_[slot]];
            bool placed = false;
            for (std::size_t c = 0; c < cands.size(); ++c) {
                if (!admissible(cands[c])) continue;
                take(slot, c);
                placed = true;
                break;
            }
            if (!placed) return slot;
        }
        return npos;
    }

    bool backtrack(std::uint64_t budget) {
        reset();
        budget_ = budget;
        return descend(0);
    }

    const Candidate& chosen(std::size_t slot) const { return candidates_[slot_demand_[slot]][choice_[slot]]; }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    bool admissible(const Candidate& c) const {
        if (used_x_[c.sx.v]) return false;
        if (strict_ && used_y_[c.sy.v]) return false;
        return true;
    }

    void take(std::size_t slot, std::size_t c) {
        const auto& cand = candidates_[slot_demand_[slot]][c];
        used_x_[cand.sx.v] = true;
        used_y_[cand.sy.v] = true;
        choice_[slot] = c;
    }

    void release(std::size_t slot) {
        const auto& cand = chosen(slot);
        used_x_[cand.sx.v] = false;
        used_y_[cand.sy.v] = false;
    }

    void reset() {
        std::fill(used_x_.begin(), used_x_.end(), false);
        std::fill(used_y_.begin(), used_y_.end(), false);
    }

    bool descend(std::size_t slot) {
        if (slot == slot_demand_.size()) return true;
        if (budget_ == 0) return false;
        --budget_;
        const auto& cands = candidates_[slot_demand_[slot]];
        // slots of one demand take candidates in increasing index order
        std::size_t start = 0;
        if (slot > 0 && slot_demand_[slot - 1] == slot_demand_[slot]) start = choice_[slot - 1] + 1;
        for (std::size_t c = start; c < cands.size(); ++c) {
            if (!admissible(cands[c])) continue;
            take(slot, c);
            if (descend(slot + 1)) return true;
            release(slot);
        }
        return false;
    }

    std::vector<std::vector<Candidate>> candidates_;
    std::vector<std::size_t> slot_demand_;
    bool strict_;
    std::vector<bool> used_x_;
    std::vector<bool> used_y_;
    std::vector<std::size_t> choice_;
    std::uint64_t budget_ = 0;
};

constexpr std::uint64_t kBacktrackBudget = 2'000'000;

}  // namespace

SystemAssignment select_system_pairs(const Field& field, std::span<const Demand> demands, std::uint64_t k,
                                     AssignmentRule rule) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < demands.size(); ++i) {
        if (demands[i].multiplicity == 0)
            throw Error(ErrorKind::PreconditionViolated, "demand multiplicity must be >= 1");
        for (std::size_t j = 0; j < i; ++j)
            if (demands[i].lambda == demands[j].lambda)
                throw Error(ErrorKind::PreconditionViolated, "demand values must be pairwise distinct");
        total += demands[i].multiplicity;
    }

    const PowerMap powers(field, k);
    const bool strict = rule == AssignmentRule::Strict;
    const bool allow_symmetric = !strict || total == 1;

    std::vector<std::vector<Candidate>> candidates(demands.size());
    for (std::size_t i = 0; i < demands.size(); ++i) {
        const auto sols = enumerate_pair_solutions(powers, demands[i].lambda);
        const auto cls = classify_solutions(powers, demands[i].lambda, sols);
        auto& cands = candidates[i];
        for (const auto& c : cls.classes) cands.push_back({c.rep(), c.sig_x, c.sig_y});
        if (allow_symmetric && !cls.symmetric.empty()) {
            const auto& u = cls.symmetric.front();
            cands.push_back({u, powers.power(u.x), powers.power(u.y)});
        }
        std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) { return a.rep < b.rep; });
    }

    std::vector<std::size_t> order(demands.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (demands[a].multiplicity != demands[b].multiplicity)
            return demands[a].multiplicity > demands[b].multiplicity;
        return demands[a].lambda < demands[b].lambda;
    });
    std::vector<std::size_t> slot_demand;
    for (auto d : order)
        for (std::size_t r = 0; r < demands[d].multiplicity; ++r) slot_demand.push_back(d);

    SystemSolver solver(candidates, slot_demand, strict, field.q());
    SystemAssignment out;
    const std::size_t stuck = solver.greedy();
    if (stuck != SystemSolver::npos) {
        if (!solver.backtrack(kBacktrackBudget)) {
            const std::size_t d = slot_demand[stuck];
            std::ostringstream os;
            os << "no admissible " << (strict ? "strict" : "distinct-x") << " assignment over F_" << field.q()
               << ", k = " << k << ": X^k + Y^k = " << demands[d].lambda.v << " (multiplicity "
               << demands[d].multiplicity << ") offers " << candidates[d].size() << (candidates[d].size() == 1 ? " candidate class" : " candidate classes") << " and got stuck after "
               << stuck << " of " << total << " positions were placed";
            throw InsufficientClassesError(demands[d].lambda, demands[d].multiplicity, candidates[d].size(),
                                           os.str());
        }
        out.used_backtracking = true;
    }

    out.per_demand.resize(demands.size());
    for (std::size_t i = 0; i < demands.size(); ++i) out.per_demand[i].lambda = demands[i].lambda;
    for (std::size_t slot = 0; slot < slot_demand.size(); ++slot)
        out.per_demand[slot_demand[slot]].pairs.push_back(solver.chosen(slot).rep);
    return out;
}

Shift reduce_three_to_two(const Field& field, Elem lambda, std::uint64_t k, std::span<const Elem> forbidden) {
    auto allowed = [&](Elem v) {
        return v != field.zero() && std::find(forbidden.begin(), forbidden.end(), v) == forbidden.end();
    };
    if (allowed(lambda)) return {field.zero(), lambda};
    for (std::uint64_t z = 0; z < field.q(); ++z) {
        const Elem shifted = field.sub(lambda, field.pow(Elem{z}, k));
        if (allowed(shifted)) return {Elem{z}, shifted};
    }
    throw Error(ErrorKind::NoAdmissibleShift,
                "no z makes " + std::to_string(lambda.v) + " - z^k nonzero and unforbidden");
}

std::uint64_t enumeration_limit(std::uint64_t default_limit) {
    if (const char* env = std::getenv("WARING_MAX_ENUM")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return default_limit;
}

LangWeilReport lang_weil_check(const Field& field, std::uint64_t k, std::span<const Elem> alpha) {
    const std::size_t m = alpha.size();
    if (m == 0) throw Error(ErrorKind::PreconditionViolated, "arity must be >= 1");
    for (auto a : alpha)
        if (a == field.zero()) throw Error(ErrorKind::PreconditionViolated, "coefficients must be nonzero");
    const std::uint64_t limit = enumeration_limit(100'000'000);
    std::uint64_t space = 1;
    for (std::size_t i = 0; i < m; ++i) {
        if (space > limit / field.q())
            throw Error(ErrorKind::EnumerationTooLarge, "q^m exceeds the enumeration limit");
        space *= field.q();
    }

    // term[i][x] = alpha_i x^k
    const PowerMap powers(field, k);
    std::vector<std::vector<Elem>> term(m, std::vector<Elem>(field.q()));
    for (std::size_t i = 0; i < m; ++i)
        for (std::uint64_t x = 0; x < field.q(); ++x) term[i][x] = field.mul(alpha[i], powers.power(Elem{x}));

    std::uint64_t count = 0;
    std::vector<Elem> partial(m + 1, field.zero());
    std::vector<std::uint64_t> digit(m, 0);
    std::size_t from = 0;
    while (true) {
        for (std::size_t i = from; i < m; ++i) partial[i + 1] = field.add(partial[i], term[i][digit[i]]);
        if (partial[m] == field.one()) ++count;
        std::size_t i = m;
        while (i > 0 && ++digit[i - 1] == field.q()) {
            digit[i - 1] = 0;
            --i;
        }
        if (i == 0) break;
        from = i - 1;
    }

    LangWeilReport r;
    r.q = field.q();
    r.k = k;
    r.arity = m;
    r.count = count;
    r.expected = std::pow(static_cast<double>(field.q()), static_cast<double>(m - 1));
    r.bound = std::pow(static_cast<double>(k), 2.0 * static_cast<double>(m)) * std::sqrt(r.expected);
    r.ok = std::fabs(static_cast<double>(count) - r.expected) <= r.bound;
    return r;
}

ZeroSumClassCount count_zero_sum_classes(const Field& field, std::uint64_t k) {
    if (field.p() == 2) throw Error(ErrorKind::HypothesisViolated, "characteristic must be odd");
    if (!field.minus_one_is_kth_power(k))
        throw Error(ErrorKind::HypothesisViolated, "-1 is not a k-th power in " + field.short_name());
    ZeroSumClassCount out;
    out.formula = (field.q() - 1) / gcd_u64(k, field.q() - 1) + 1;
    out.observed = classify_solutions(field, field.zero(), k).class_count();
    return out;
}

}  // namespace waring
