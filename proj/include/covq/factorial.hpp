#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "covq/points.hpp"

namespace covq {

// Regular two-level fractional factorial 2^(d-k) on the vertices of
// [-delta, delta]^d. The first m = d - k factors are the base columns; each
// remaining factor is the principal-fraction product of the base factors in
// its generator mask (bit i of the mask selects base factor i).
//
// The bundled catalog carries generator sets found by minimizing the
// word-length pattern (A3, A4, ...) lexicographically: exhaustively over all
// generator choices for the 64- and 128-run 10-factor designs, and by
// greedy construction with full swap descent for the 20-factor designs.
// k = 0 (full factorial) and k = 1 (maximum-resolution half fraction) are
// constructed directly for any d.
struct GeneratorCatalogEntry {
    int d;
    int k;
    std::vector<std::uint32_t> columns;
};

inline const std::vector<GeneratorCatalogEntry>& generator_catalog() {
    static const std::vector<GeneratorCatalogEntry> catalog = {
        {10, 3, {15, 51, 85}},
        {10, 4, {7, 27, 43, 53}},
        {20, 10, {31, 227, 365, 440, 470, 634, 693, 716, 806, 1023}},
        {20, 11, {29, 120, 180, 215, 251, 271, 316, 406, 433, 477, 482}},
        {20, 13, {27, 28, 35, 46, 54, 57, 83, 85, 94, 100, 107, 109, 122}},
        {20, 14, {15, 23, 27, 29, 30, 37, 38, 43, 44, 51, 52, 57, 58, 63}},
    };
    return catalog;
}

inline std::vector<std::uint32_t> factorial_generators(int d, int k) {
    const int m = d - k;
    if (k == 0) return {};
    if (k == 1) return {(m >= 32 ? 0xFFFFFFFFu : (1u << m) - 1u)};
    for (const auto& entry : generator_catalog())
        if (entry.d == d && entry.k == k) return entry.columns;
    throw std::invalid_argument("factorial_generators: no catalog entry for (d=" + std::to_string(d) +
                                ", k=" + std::to_string(k) + "); supply generator columns explicitly");
}

// Materializes the 2^(d-k) runs. Every generated factor uses the principal
// fraction (defining words all positive), so for k = 1 the coordinate
// product is +delta^d on every run.
inline PointSet generate_factorial(int d, int k, double delta,
                                   const std::vector<std::uint32_t>& generators) {
    if (d < 1 || k < 0 || k >= d) throw std::invalid_argument("generate_factorial: need 0 <= k < d");
    const int m = d - k;
    if (m > 22) throw std::invalid_argument("generate_factorial: 2^(d-k) too large to materialize");
    if (static_cast<int>(generators.size()) != k)
        throw std::invalid_argument("generate_factorial: need exactly k generator columns");
    for (std::uint32_t g : generators)
        if (g == 0 || g >= (1u << m))
            throw std::invalid_argument("generate_factorial: generator column out of range");
    const std::uint32_t runs = 1u << m;
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(runs) * d);
    for (std::uint32_t r = 0; r < runs; ++r) {
        for (int i = 0; i < m; ++i)
            flat.push_back(((r >> i) & 1u) ? delta : -delta);
        for (int j = 0; j < k; ++j) {
            const std::uint32_t col = generators[j];
            const int bit = (std::popcount(r & col) + std::popcount(col) + 1) & 1;
            flat.push_back(bit ? delta : -delta);
        }
    }
    return PointSet(d, std::move(flat));
}

}  // namespace covq
