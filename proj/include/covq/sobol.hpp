#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "covq/detail/sobol_table.hpp"

namespace covq {

// Base-2 Sobol sequence (Joe-Kuo direction numbers, gray-code order),
// starting at index 0 with the all-zeros point. Coordinates carry 52 bits
// so every value is an exact double in [0,1).
class SobolSequence {
public:
    static constexpr int kBits = 52;

    explicit SobolSequence(int dim) : dim_(dim), state_(dim, 0), directions_(dim) {
        if (dim < 1 || dim > detail::kSobolMaxDim)
            throw std::invalid_argument("SobolSequence: dim out of supported range");
        for (int j = 0; j < dim; ++j) init_dimension(j);
    }

    int dim() const { return dim_; }
    std::uint64_t index() const { return index_; }

    // Writes the point with the current index and advances the sequence.
    void next(double* out) {
        if (index_ > 0) {
            const int bit = std::countr_zero(index_);
            for (int j = 0; j < dim_; ++j) state_[j] ^= directions_[j][bit];
        }
        for (int j = 0; j < dim_; ++j)
            out[j] = static_cast<double>(state_[j]) * 0x1.0p-52;
        ++index_;
    }

    // First n points in [0,1)^dim, flattened row-major.
    static std::vector<double> generate(int dim, std::uint64_t n) {
        SobolSequence seq(dim);
        std::vector<double> flat(n * static_cast<std::uint64_t>(dim));
        for (std::uint64_t i = 0; i < n; ++i) seq.next(flat.data() + i * dim);
        return flat;
    }

private:
    void init_dimension(int j) {
        auto& v = directions_[j];
        v.assign(kBits, 0);
        if (j == 0) {
            for (int i = 0; i < kBits; ++i) v[i] = 1ULL << (kBits - 1 - i);
            return;
        }
        const std::uint32_t poly = detail::kSobolPoly[j];
        const int s = std::bit_width(poly) - 1;
        const std::uint32_t a = (poly >> 1) & ((1u << (s - 1)) - 1u);
        const auto& m = detail::kSobolVinit[j];
        for (int i = 0; i < s && i < kBits; ++i)
            v[i] = static_cast<std::uint64_t>(m[i]) << (kBits - 1 - i);
        for (int i = s; i < kBits; ++i) {
            v[i] = v[i - s] ^ (v[i - s] >> s);
            for (int k = 1; k < s; ++k)
                if ((a >> (s - 1 - k)) & 1u) v[i] ^= v[i - k];
        }
    }

    int dim_;
    std::uint64_t index_ = 0;
    std::vector<std::uint64_t> state_;
    std::vector<std::vector<std::uint64_t>> directions_;
};

}  // namespace covq
