#pragma once

#include <cmath>
#include <numbers>

#include "lowrank/core.hpp"

namespace lowrank {

inline bool is_power_of_two(Index n) { return n > 0 && (n & (n - 1)) == 0; }

namespace detail {

/// Radix-2 decimation-in-time fast Hartley transform, unnormalized:
/// out[k] = sum_j in[j] * cas(2 pi j k / n) with cas(t) = cos t + sin t.
/// Requires n to be a power of two.
template <typename Scalar>
void fht_unnormalized(Scalar* data, Scalar* scratch, Index n) {
    if (n == 1) return;
    const Index half = n / 2;
    for (Index j = 0; j < half; ++j) {
        scratch[j] = data[2 * j];
        scratch[half + j] = data[2 * j + 1];
    }
    fht_unnormalized(scratch, data, half);
    fht_unnormalized(scratch + half, data, half);

    const Scalar* even = scratch;
    const Scalar* odd = scratch + half;
    for (Index k = 0; k < half; ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) /
                             static_cast<double>(n);
        const Scalar c = static_cast<Scalar>(std::cos(angle));
        const Scalar s = static_cast<Scalar>(std::sin(angle));
        const Index mirror = k == 0 ? 0 : half - k;
        const Scalar cross = c * odd[k] + s * odd[mirror];
        data[k] = even[k] + cross;
        data[k + half] = even[k] - cross;
    }
}

}  // namespace detail

/// In-place orthonormal discrete Hartley transform of each column of `a`
/// (entry (p,q) of the transform matrix is cas(2 pi p q / m) / sqrt(m)).
/// The row count must be a power of two.
template <typename Scalar>
void hartley_transform_columns(MatrixX<Scalar>& a) {
    const Index m = a.rows();
    if (!is_power_of_two(m))
        throw std::invalid_argument("hartley_transform_columns: row count must be a power of two");
    VectorX<Scalar> scratch(m);
    const Scalar scale = Scalar(1) / std::sqrt(static_cast<Scalar>(m));
    for (Index j = 0; j < a.cols(); ++j) {
        detail::fht_unnormalized(a.col(j).data(), scratch.data(), m);
        a.col(j) *= scale;
    }
}

/// Dense orthonormal discrete Hartley transform matrix of size m.
template <typename Scalar = double>
MatrixX<Scalar> hartley_matrix(Index m) {
    MatrixX<Scalar> h(m, m);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (Index p = 0; p < m; ++p) {
        for (Index q = 0; q < m; ++q) {
            // reduce p*q mod m first so the angle stays well inside double range
            const double t = 2.0 * std::numbers::pi *
                             static_cast<double>((p * q) % m) / static_cast<double>(m);
            h(p, q) = static_cast<Scalar>(scale * (std::cos(t) + std::sin(t)));
        }
    }
    return h;
}

}  // namespace lowrank
