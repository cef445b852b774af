#pragma once

#include <string>
#include <vector>

#include "waring/matrix.hpp"

namespace waring {

/// Indecomposable nilpotent 0/1 matrices of size 3 to 6 that the structured
/// search handles, in presentation notation.
struct TableRow {
    int table;
    std::string presentation;
};

const std::vector<TableRow>& table_rows();

/// The 7 x 7 matrix E12 + E13 + E26 + E34 + E45 + E46 + E67, whose entry
/// graph contains the 5-cycle 1-2-6-4-3.
UTMatrix obstruction_7x7(const Field& field);

}  // namespace waring
