#include "waring/report.hpp"

namespace waring {

json to_json(const Field& field) {
    return json{{"p", field.p()}, {"m", field.m()}, {"q", field.q()}, {"modulus", field.modulus()},
                {"spec", field.to_string()}};
}

json to_json(const SolutionClassification& cls) {
    json classes = json::array();
    for (const auto& c : cls.classes)
        classes.push_back({{"sig", {c.sig_x.v, c.sig_y.v}},
                           {"size", c.members.size()},
                           {"rep", {c.rep().x.v, c.rep().y.v}}});
    json out{{"q", cls.q}, {"k", cls.k}, {"lambda", cls.lambda.v}, {"classes", std::move(classes)},
             {"U_size", cls.symmetric.size()}};
    out["class_count"] = cls.class_count();
    out["solution_count"] = cls.solution_count();
    return out;
}

json to_json(const DecompositionResult& result) {
    json parts = json::array();
    for (const auto& p : result.parts) parts.push_back(to_text(p));
    json assignment = json::array();
    for (const auto& e : result.assignment.entries) {
        json roots = json::array();
        for (auto r : e.roots) roots.push_back(r.v);
        assignment.push_back(std::move(roots));
    }
    json out{{"target", to_text(result.target)},
             {"k", result.k},
             {"parts", std::move(parts)},
             {"assignment", std::move(assignment)},
             {"verified", result.verified}};
    if (result.failure) {
        const auto& f = *result.failure;
        json shortages = json::array();
        for (const auto& s : f.shortages)
            shortages.push_back({{"lambda", s.lambda.v},
                                 {"target", s.target.v},
                                 {"multiplicity", s.multiplicity},
                                 {"classes", s.classes},
                                 {"blocking", s.blocking}});
        out["failure"] = {{"kind", to_string(f.kind)},
                          {"message", f.message},
                          {"eigenvalues", std::move(shortages)},
                          {"threshold", f.threshold}};
    } else {
        out["tier"] = to_string(result.assignment.tier);
    }
    return out;
}

json to_json(const StructuredPlan& plan) {
    auto arcs = [](const std::vector<std::pair<std::size_t, std::size_t>>& entries) {
        json out = json::array();
        for (auto [i, j] : entries) out.push_back({i + 1, j + 1});
        return out;
    };
    json pairs = json::array();
    for (const auto& p : plan.pairs) pairs.push_back({p.x.v, p.y.v});
    return json{{"index", plan.index},
                {"coloring", plan.coloring},
                {"a_entries", arcs(plan.a_entries)},
                {"b_entries", arcs(plan.b_entries)},
                {"pairs", std::move(pairs)}};
}

json to_json(const Obstruction& obstruction) {
    return json{{"explored", obstruction.explored},
                {"refuted", obstruction.refuted},
                {"reason", obstruction.reason}};
}

json to_json(const ConjugationWitness& witness) {
    return json{{"S", to_text(witness.S)},
                {"before", to_text(witness.before)},
                {"after", to_text(witness.after)},
                {"verified", witness.verify()}};
}

json to_json(const LangWeilReport& report) {
    return json{{"q", report.q},         {"k", report.k},         {"m", report.arity}, {"N", report.count},
                {"expected", report.expected}, {"bound", report.bound}, {"ok", report.ok}};
}

json to_json(const HomogeneousZeroReport& report) {
    json violations = json::array();
    for (auto [a, b] : report.violations) violations.push_back({a.v, b.v});
    return json{{"q", report.q},
                {"k", report.k},
                {"pairs_checked", report.pairs_checked},
                {"zeros", report.zeros},
                {"zeros_on_diagonal", report.zeros_on_diagonal},
                {"violations", std::move(violations)},
                {"ok", report.ok()}};
}

json to_json(const WaringReport& report) {
    json histogram = json::object();
    for (auto [m, count] : report.histogram)
        histogram[m ? std::to_string(m) : ">" + std::to_string(report.cap)] = count;
    json witnesses = json::array();
    for (const auto& w : report.witnesses) {
        json roots = json::array();
        for (const auto& r : w.roots) roots.push_back(to_text(r));
        witnesses.push_back({{"target", to_text(w.target)}, {"min", w.roots.size()}, {"roots", std::move(roots)}});
    }
    json out{{"q", report.field.q()},
             {"n", report.n},
             {"k", report.k},
             {"cap", report.cap},
             {"matrices", report.per_matrix_min.size()},
             {"kth_powers", report.power_count},
             {"histogram", std::move(histogram)}};
    out["max_over_field"] = report.max_over_field ? json(*report.max_over_field) : json(nullptr);
    out["witnesses"] = std::move(witnesses);
    return out;
}

json to_json(const NegativeReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks)
        checks.push_back({{"name", c.name},
                          {"claim", c.claim},
                          {"applicable", c.applicable},
                          {"holds", c.holds},
                          {"detail", c.detail}});
    return json{{"q", report.field.q()}, {"k", report.k}, {"checks", std::move(checks)},
                {"all_hold", report.all_hold()}};
}

}  // namespace waring
