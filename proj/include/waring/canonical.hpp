#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "waring/matrix.hpp"

namespace waring {

/// after = S^{-1} before S with S invertible upper-triangular.
struct ConjugationWitness {
    UTMatrix S;
    UTMatrix before;
    UTMatrix after;

    bool verify() const;
};

struct Annihilation {
    UTMatrix result;
    ConjugationWitness witness;
};

/// Conjugates by S = I + s E_lr, s = -a_lr (a_ll - a_rr)^{-1}, clearing entry
/// (l, r). Only entries (i, r) with i < l and (l, j) with j > r can change.
/// Errors: IndexOutOfRange (needs l < r < n), EqualDiagonal.
Annihilation annihilate_entry(const UTMatrix& a, std::size_t l, std::size_t r);

/// Clears every off-diagonal entry, bottom row first and left to right within
/// a row. Errors: DiagNotDistinct.
Annihilation diagonalize_distinct(const UTMatrix& a);

/// A 0/1 nilpotent matrix written as blocks with optional extra arcs, e.g.
/// "12|34:13". Labels are 1-based; from n = 10 on they are comma separated
/// ("1,2,10|3,4:1,3").
struct Presentation {
    std::size_t n = 0;
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::pair<std::size_t, std::size_t>> extra_arcs;

    /// n = 0 takes the largest label. Errors: ParseError, LabelOutOfRange, DuplicateVertex.
    static Presentation parse(std::string_view text, std::size_t n = 0);

    std::string render() const;
    /// Sum of E over consecutive block elements plus the extra arcs.
    UTMatrix to_matrix(const Field& field) const;
    /// All arcs, block arcs first, 0-based.
    std::vector<std::pair<std::size_t, std::size_t>> arcs() const;
};

UTMatrix parse_presentation(const Field& field, std::string_view text, std::size_t n = 0);

/// Connectivity of the undirected graph on [n] with an edge for every nonzero
/// a_ij, i < j. Errors: NotNilpotent.
bool is_indecomposable(const UTMatrix& a);

}  // namespace waring
