#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "lowrank/core.hpp"

namespace lowrank {

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace detail

/// Value `index` of the pseudo-random stream identified by `seed`.
///
/// This is the SplitMix64 generator evaluated in counter mode: element i is
/// the output function applied to seed + (i+1)*golden-gamma, so any element
/// of a stream can be produced without generating its predecessors.
inline std::uint64_t stream_value(std::uint64_t seed, std::uint64_t index) {
    return detail::mix64(seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Decorrelated child seed for substream `tag` of `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    return stream_value(seed, tag ^ 0xD1B54A32D192ED03ULL);
}

/// Sequential view over one counter stream.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next_u64() { return stream_value(seed_, next_++); }

    /// Uniform draw from [0, 1), 53-bit resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform draw from [0, bound).
    Index next_index(Index bound) {
        return static_cast<Index>(next_u64() % static_cast<std::uint64_t>(bound));
    }

    /// Uniform random subset of {0,...,population-1} of size `count`,
    /// drawn without replacement (partial Fisher-Yates).
    std::vector<Index> sample_without_replacement(Index population, Index count) {
        std::vector<Index> pool(static_cast<std::size_t>(population));
        for (Index i = 0; i < population; ++i) pool[static_cast<std::size_t>(i)] = i;
        for (Index i = 0; i < count; ++i) {
            Index j = i + next_index(population - i);
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
        }
        pool.resize(static_cast<std::size_t>(count));
        return pool;
    }

private:
    std::uint64_t seed_;
    std::uint64_t next_ = 0;
};

/// Matrix of i.i.d. standard normal entries, deterministic in `seed`.
///
/// Entries are laid out in row-major stream order; consecutive stream pairs
/// feed one Box-Muller transform. Entry (i,j) therefore depends only on
/// (seed, i*cols + j), never on matrix traversal order.
template <typename Scalar = double>
MatrixX<Scalar> gaussian_matrix(Index rows, Index cols, std::uint64_t seed) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("gaussian_matrix: dimensions must be positive");
    MatrixX<Scalar> out(rows, cols);
    const Index total = rows * cols;
    for (Index i = 0; i < total; i += 2) {
        const auto pair_index = static_cast<std::uint64_t>(i);
        // (0,1] for the log argument, [0,1) for the angle
        const double u1 =
            static_cast<double>((stream_value(seed, pair_index) >> 11) + 1) * 0x1.0p-53;
        const double u2 =
            static_cast<double>(stream_value(seed, pair_index + 1) >> 11) * 0x1.0p-53;
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        out(i / cols, i % cols) = static_cast<Scalar>(radius * std::cos(angle));
        if (i + 1 < total)
            out((i + 1) / cols, (i + 1) % cols) = static_cast<Scalar>(radius * std::sin(angle));
    }
    return out;
}

}  // namespace lowrank
