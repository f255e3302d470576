#pragma once

#include <Eigen/QR>

#include <cmath>

#include "lowrank/rng.hpp"

namespace lowrank {

/// Parameters of a dense test matrix with logarithmically spaced singular
/// values running from 1 down to 10^decay_exponent (decay_exponent < 0).
struct SpectrumSpec {
    Index rows = 0;
    Index cols = 0;
    double decay_exponent = -2.0;
    std::uint64_t seed = 0;
};

/// Matrix with orthonormal columns: thin Q factor of a seeded Gaussian.
template <typename Scalar = double>
MatrixX<Scalar> random_orthonormal(Index rows, Index cols, std::uint64_t seed) {
    if (cols < 1 || cols > rows)
        throw std::invalid_argument("random_orthonormal: need 1 <= cols <= rows");
    const MatrixX<Scalar> g = gaussian_matrix<Scalar>(rows, cols, seed);
    Eigen::HouseholderQR<MatrixX<Scalar>> qr(g);
    return qr.householderQ() * MatrixX<Scalar>::Identity(rows, cols);
}

/// Dense rows x cols matrix U diag(d) V^T with d logspaced from 1 to
/// 10^decay_exponent over r = min(rows, cols) values and independent random
/// orthonormal factors.
template <typename Scalar = double>
MatrixX<Scalar> gen_logspace(const SpectrumSpec& spec) {
    if (spec.rows < 2 || spec.cols < 2)
        throw std::invalid_argument("gen_logspace: both dimensions must be at least 2");
    if (spec.decay_exponent >= 0.0)
        throw std::invalid_argument("gen_logspace: decay exponent must be negative");
    const Index r = std::min(spec.rows, spec.cols);
    VectorX<Scalar> d(r);
    for (Index j = 0; j < r; ++j)
        d(j) = static_cast<Scalar>(
            std::pow(10.0, spec.decay_exponent * static_cast<double>(j) /
                               static_cast<double>(r - 1)));
    const MatrixX<Scalar> u = random_orthonormal<Scalar>(spec.rows, r, derive_seed(spec.seed, 1));
    const MatrixX<Scalar> v = random_orthonormal<Scalar>(spec.cols, r, derive_seed(spec.seed, 2));
    return u * d.asDiagonal() * v.transpose();
}

namespace detail {

template <typename Scalar>
VectorX<Scalar> sparse_uniform_vector(Index length, Index nnz, CounterRng& rng) {
    VectorX<Scalar> v = VectorX<Scalar>::Zero(length);
    for (Index idx : rng.sample_without_replacement(length, nnz))
        v(idx) = static_cast<Scalar>(rng.next_unit());
    return v;
}

}  // namespace detail

/**
 * @brief Sum-of-sparse-outer-products test matrix with a two-regime
 *        coefficient schedule.
 *
 * Builds sum_j coeff_j x_j y_j^T over `terms = min(cols, 300)` terms, where
 * coeff_j is 2/j (variant 1) or 1000/j (variant 2) for j up to the
 * breakpoint max(2, terms/30) and 1/j afterwards. The vectors carry
 * `nnz_per_vector` uniformly placed entries drawn uniform(0,1);
 * nnz_per_vector = 0 selects 5% of each vector's length. The term count and
 * breakpoint shrink proportionally below the reference 300-column size.
 */
template <typename Scalar = double>
MatrixX<Scalar> gen_sorensen_embree(int variant, Index rows, Index cols, Index nnz_per_vector,
                                    std::uint64_t seed) {
    if (variant != 1 && variant != 2)
        throw std::invalid_argument("gen_sorensen_embree: variant must be 1 or 2");
    if (rows < 2 || cols < 2)
        throw std::invalid_argument("gen_sorensen_embree: both dimensions must be at least 2");
    if (nnz_per_vector < 0 || nnz_per_vector > std::min(rows, cols))
        throw std::invalid_argument("gen_sorensen_embree: invalid nonzero count");

    const Index terms = std::min<Index>(cols, 300);
    const Index breakpoint = std::max<Index>(2, terms / 30);
    const Index nnz_rows =
        nnz_per_vector > 0 ? nnz_per_vector : std::max<Index>(1, rows / 20);
    const Index nnz_cols =
        nnz_per_vector > 0 ? nnz_per_vector : std::max<Index>(1, cols / 20);

    MatrixX<Scalar> a = MatrixX<Scalar>::Zero(rows, cols);
    for (Index j = 1; j <= terms; ++j) {
        const double lead = variant == 1 ? 2.0 : 1000.0;
        const double coeff =
            (j <= breakpoint ? lead : 1.0) / static_cast<double>(j);
        CounterRng x_rng(derive_seed(seed, 2 * static_cast<std::uint64_t>(j)));
        CounterRng y_rng(derive_seed(seed, 2 * static_cast<std::uint64_t>(j) + 1));
        const VectorX<Scalar> x = detail::sparse_uniform_vector<Scalar>(rows, nnz_rows, x_rng);
        const VectorX<Scalar> y = detail::sparse_uniform_vector<Scalar>(cols, nnz_cols, y_rng);
        a.noalias() += static_cast<Scalar>(coeff) * x * y.transpose();
    }
    return a;
}

}  // namespace lowrank
