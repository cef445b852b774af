#pragma once

#include <random>

#include "naive.hpp"
#include "waring/matrix.hpp"

namespace support {

inline naive::Mat dense(const waring::UTMatrix& a) {
    naive::Mat m = naive::zero(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i; j < a.size(); ++j) m[i][j] = static_cast<naive::i64>(a(i, j).v);
    return m;
}

inline waring::UTMatrix random_matrix(const waring::Field& f, std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> pick(0, f.q() - 1);
    waring::UTMatrix m(f, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m.set(i, j, waring::Elem{pick(rng)});
    return m;
}

}  // namespace support
