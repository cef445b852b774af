#include "waring/canonical.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

namespace waring {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    while (true) {
        auto pos = s.find(sep);
        parts.push_back(s.substr(0, pos));
        if (pos == std::string_view::npos) break;
        s = s.substr(pos + 1);
    }
    return parts;
}

std::size_t parse_label(std::string_view token, std::string_view text) {
    if (token.empty() || token.size() > 6 ||
        !std::all_of(token.begin(), token.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw Error(ErrorKind::ParseError, "bad label '" + std::string(token) + "' in '" + std::string(text) + "'");
    const std::size_t label = std::stoul(std::string(token));
    if (label == 0) throw Error(ErrorKind::LabelOutOfRange, "labels start at 1");
    return label;
}

/// Labels of one group: one per character, or comma separated in wide mode.
std::vector<std::size_t> parse_labels(std::string_view group, bool wide, std::string_view text) {
    std::vector<std::size_t> labels;
    if (wide) {
        for (auto token : split(group, ',')) labels.push_back(parse_label(token, text));
    } else {
        for (std::size_t i = 0; i < group.size(); ++i) labels.push_back(parse_label(group.substr(i, 1), text));
    }
    return labels;
}

std::string join_labels(const std::vector<std::size_t>& labels, bool wide) {
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (wide && i) out += ',';
        out += std::to_string(labels[i]);
    }
    return out;
}

}  // namespace

bool ConjugationWitness::verify() const { return inverse(S) * before * S == after; }

Annihilation annihilate_entry(const UTMatrix& a, std::size_t l, std::size_t r) {
    const Field& field = a.field();
    if (!(l < r && r < a.size())) throw Error(ErrorKind::IndexOutOfRange, "annihilate_entry needs l < r < n");
    const Elem gap = field.sub(a(l, l), a(r, r));
    if (gap == field.zero())
        throw Error(ErrorKind::EqualDiagonal, "a_" + std::to_string(l + 1) + std::to_string(l + 1) + " = a_" +
                                                  std::to_string(r + 1) + std::to_string(r + 1));
    UTMatrix s = UTMatrix::identity(field, a.size());
    s.set(l, r, field.neg(field.div(a(l, r), gap)));
    UTMatrix after = inverse(s) * a * s;
    return {after, ConjugationWitness{std::move(s), a, after}};
}

Annihilation diagonalize_distinct(const UTMatrix& a) {
    const std::size_t n = a.size();
    const auto d = a.diag();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (d[i] == d[j])
                throw Error(ErrorKind::DiagNotDistinct, "diagonal positions " + std::to_string(i + 1) + " and " +
                                                            std::to_string(j + 1) + " agree");
    UTMatrix current = a;
    UTMatrix s = UTMatrix::identity(a.field(), n);
    for (std::size_t l = n; l-- > 0;)
        for (std::size_t r = l + 1; r < n; ++r) {
            if (current(l, r) == a.field().zero()) continue;
            auto step = annihilate_entry(current, l, r);
            current = std::move(step.result);
            s = s * step.witness.S;
        }
    ConjugationWitness witness{std::move(s), a, current};
    if (!witness.verify()) throw std::logic_error("composed conjugation witness failed verification");
    return {std::move(current), std::move(witness)};
}

Presentation Presentation::parse(std::string_view text, std::size_t n) {
    if (text.empty()) throw Error(ErrorKind::ParseError, "empty presentation");
    const bool wide = text.find(',') != std::string_view::npos || n >= 10;
    const auto colon = text.find(':');
    const std::string_view block_part = text.substr(0, colon);
    const std::string_view arc_part = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    if (colon != std::string_view::npos && arc_part.empty())
        throw Error(ErrorKind::ParseError, "missing arcs after ':' in '" + std::string(text) + "'");

    Presentation pres;
    std::set<std::size_t> seen;
    std::size_t largest = 0;
    for (auto group : split(block_part, '|')) {
        auto block = parse_labels(group, wide, text);
        for (std::size_t i = 0; i < block.size(); ++i) {
            if (!seen.insert(block[i]).second)
                throw Error(ErrorKind::DuplicateVertex, "label " + std::to_string(block[i]) + " appears twice");
            if (i && block[i] <= block[i - 1])
                throw Error(ErrorKind::ParseError, "block '" + std::string(group) + "' is not ascending");
            largest = std::max(largest, block[i]);
        }
        if (!pres.blocks.empty() && block.front() < pres.blocks.back().front())
            throw Error(ErrorKind::ParseError, "block minima must be ascending in '" + std::string(text) + "'");
        pres.blocks.push_back(std::move(block));
    }
    pres.n = n ? n : largest;
    if (largest > pres.n)
        throw Error(ErrorKind::LabelOutOfRange,
                    "label " + std::to_string(largest) + " exceeds n = " + std::to_string(pres.n));
    if (seen.size() != pres.n)
        throw Error(ErrorKind::ParseError, "blocks of '" + std::string(text) + "' do not cover 1.." +
                                               std::to_string(pres.n));

    std::set<std::pair<std::size_t, std::size_t>> implied;
    for (const auto& block : pres.blocks)
        for (std::size_t i = 0; i + 1 < block.size(); ++i) implied.emplace(block[i], block[i + 1]);
    if (!arc_part.empty()) {
        for (auto group : split(arc_part, '|')) {
            auto pair = parse_labels(group, wide, text);
            if (pair.size() != 2)
                throw Error(ErrorKind::ParseError, "arc '" + std::string(group) + "' needs exactly two labels");
            const auto [i, j] = std::pair{pair[0], pair[1]};
            if (i > pres.n || j > pres.n)
                throw Error(ErrorKind::LabelOutOfRange, "arc '" + std::string(group) + "' leaves 1.." +
                                                            std::to_string(pres.n));
            if (i >= j) throw Error(ErrorKind::ParseError, "arc '" + std::string(group) + "' must point upward");
            if (!implied.emplace(i, j).second)
                throw Error(ErrorKind::ParseError, "arc '" + std::string(group) + "' is already present");
            pres.extra_arcs.emplace_back(i, j);
        }
    }
    return pres;
}

std::string Presentation::render() const {
    const bool wide = n >= 10;
    std::string out;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (b) out += '|';
        out += join_labels(blocks[b], wide);
    }
    for (std::size_t a = 0; a < extra_arcs.size(); ++a) {
        out += a ? '|' : ':';
        out += join_labels({extra_arcs[a].first, extra_arcs[a].second}, wide);
    }
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> Presentation::arcs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& block : blocks)
        for (std::size_t i = 0; i + 1 < block.size(); ++i) out.emplace_back(block[i] - 1, block[i + 1] - 1);
    for (auto [i, j] : extra_arcs) out.emplace_back(i - 1, j - 1);
    return out;
}

UTMatrix Presentation::to_matrix(const Field& field) const {
    UTMatrix m(field, n);
    for (auto [i, j] : arcs()) m.set(i, j, field.one());
    return m;
}

UTMatrix parse_presentation(const Field& field, std::string_view text, std::size_t n) {
    return Presentation::parse(text, n).to_matrix(field);
}

bool is_indecomposable(const UTMatrix& a) {
    if (!a.is_strictly_upper()) throw Error(ErrorKind::NotNilpotent, "matrix has a nonzero diagonal entry");
    const std::size_t n = a.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t components = n;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (a(i, j) == a.field().zero()) continue;
            const auto ri = find(i), rj = find(j);
            if (ri != rj) {
                parent[ri] = rj;
                --components;
            }
        }
    return components <= 1;
}

}  // namespace waring
