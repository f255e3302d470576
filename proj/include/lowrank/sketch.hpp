#pragma once

#include <cstdint>
#include <iostream>

#include "lowrank/cur.hpp"
#include "lowrank/hartley.hpp"
#include "lowrank/rng.hpp"

namespace lowrank {

enum class SketchKind { Gaussian, Srft };

/// Configuration of the randomized range sampler.
///
/// Gaussian sketches draw k + oversample rows; structured (SRFT) sketches
/// draw `srft_samples` rows, defaulting to 2k. `power` applies that many
/// rounds of multiplication by A^T A to sharpen the sample toward the
/// leading singular subspace, re-orthonormalizing between multiplications
/// unless switched off.
struct SketchConfig {
    SketchKind kind = SketchKind::Gaussian;
    int oversample = 10;
    Index srft_samples = 0;  // 0: use 2k
    int power = 0;
    bool reorthonormalize = true;
    std::uint64_t seed = 0;

    Index sample_count(Index k) const {
        if (kind == SketchKind::Gaussian) return k + static_cast<Index>(oversample);
        return srft_samples > 0 ? srft_samples : 2 * k;
    }
};

/// How a sample matrix was produced.
struct SampleProvenance {
    SketchKind kind = SketchKind::Gaussian;
    Index samples = 0;  // rows requested from the sketch operator
    int power = 0;
    bool reorthonormalized = false;
    std::uint64_t seed = 0;
};

/// A sketch Y of the row space of some matrix, with the provenance that
/// produced it.
template <typename Scalar>
struct SampleMatrix {
    MatrixX<Scalar> y;
    SampleProvenance provenance;
};

namespace detail {

inline void require_sample_count(Index ell, Index rows, const char* who) {
    if (ell < 1 || ell > rows)
        throw std::invalid_argument(std::string(who) + ": sample count " + std::to_string(ell) +
                                    " out of range for " + std::to_string(rows) + " rows");
}

inline constexpr std::uint64_t kSrftSignStream = 1;
inline constexpr std::uint64_t kSrftRowStream = 2;

}  // namespace detail

/// Gaussian range sketch Y = Omega * A with Omega an ell x m matrix of
/// i.i.d. standard normals.
template <typename Derived>
SampleMatrix<typename Derived::Scalar> sketch_gaussian(const Eigen::MatrixBase<Derived>& a,
                                                       Index ell, std::uint64_t seed) {
    using Scalar = typename Derived::Scalar;
    require_nonempty(a, "sketch_gaussian");
    require_finite(a, "sketch_gaussian");
    detail::require_sample_count(ell, a.rows(), "sketch_gaussian");
    SampleMatrix<Scalar> out;
    out.y.noalias() = gaussian_matrix<Scalar>(ell, a.rows(), seed) * a;
    out.provenance = {SketchKind::Gaussian, ell, 0, false, seed};
    return out;
}

/// Dense materialization of the structured sketch operator
/// sqrt(m/ell) * R * H * D: random-sign diagonal D, orthonormal discrete
/// Hartley transform H, and an ell-row uniform sampler R. Exactly the
/// operator applied by sketch_srft for the same (m, ell, seed).
template <typename Scalar = double>
MatrixX<Scalar> srft_operator(Index m, Index ell, std::uint64_t seed) {
    detail::require_sample_count(ell, m, "srft_operator");
    CounterRng sign_rng(derive_seed(seed, detail::kSrftSignStream));
    VectorX<Scalar> signs(m);
    for (Index i = 0; i < m; ++i)
        signs(i) = (sign_rng.next_u64() & 1u) ? Scalar(-1) : Scalar(1);
    CounterRng row_rng(derive_seed(seed, detail::kSrftRowStream));
    const std::vector<Index> rows = row_rng.sample_without_replacement(m, ell);

    const MatrixX<Scalar> h = hartley_matrix<Scalar>(m);
    const Scalar scale = std::sqrt(static_cast<Scalar>(m) / static_cast<Scalar>(ell));
    MatrixX<Scalar> omega(ell, m);
    for (Index i = 0; i < ell; ++i)
        omega.row(i) = scale * h.row(rows[static_cast<std::size_t>(i)]).cwiseProduct(
                                   signs.transpose());
    return omega;
}

/**
 * @brief Structured range sketch via a subsampled fast trigonometric
 *        transform (real SRFT analogue).
 *
 * Applies a random +-1 diagonal to the rows of A, an orthonormal discrete
 * Hartley transform down each column, then keeps ell uniformly sampled rows
 * scaled by sqrt(m/ell). Costs O(m n log m) when the row count is a power of
 * two; otherwise the transform is applied densely at O(m^2 n) with a warning.
 */
template <typename Derived>
SampleMatrix<typename Derived::Scalar> sketch_srft(const Eigen::MatrixBase<Derived>& a,
                                                   Index ell, std::uint64_t seed) {
    using Scalar = typename Derived::Scalar;
    require_nonempty(a, "sketch_srft");
    require_finite(a, "sketch_srft");
    const Index m = a.rows();
    detail::require_sample_count(ell, m, "sketch_srft");

    SampleMatrix<Scalar> out;
    out.provenance = {SketchKind::Srft, ell, 0, false, seed};
    if (is_power_of_two(m)) {
        CounterRng sign_rng(derive_seed(seed, detail::kSrftSignStream));
        VectorX<Scalar> signs(m);
        for (Index i = 0; i < m; ++i)
            signs(i) = (sign_rng.next_u64() & 1u) ? Scalar(-1) : Scalar(1);
        CounterRng row_rng(derive_seed(seed, detail::kSrftRowStream));
        const std::vector<Index> rows = row_rng.sample_without_replacement(m, ell);

        MatrixX<Scalar> transformed = signs.asDiagonal() * a;
        hartley_transform_columns(transformed);
        const Scalar scale = std::sqrt(static_cast<Scalar>(m) / static_cast<Scalar>(ell));
        out.y.resize(ell, a.cols());
        for (Index i = 0; i < ell; ++i)
            out.y.row(i) = scale * transformed.row(rows[static_cast<std::size_t>(i)]);
    } else {
        std::cerr << "sketch_srft: row count " << m
                  << " is not a power of two, falling back to the dense transform\n";
        out.y.noalias() = srft_operator<Scalar>(m, ell, seed) * a;
    }
    return out;
}

/// Power-iteration range sketch Y = Omega A (A^T A)^q, evaluated by
/// alternating multiplications and (optionally) row re-orthonormalization
/// before each product. q = 0 is exactly the Gaussian sketch.
template <typename Derived>
SampleMatrix<typename Derived::Scalar> sketch_power(const Eigen::MatrixBase<Derived>& a,
                                                    Index ell, int q, bool reorthonormalize,
                                                    std::uint64_t seed) {
    using Scalar = typename Derived::Scalar;
    if (q < 0) throw std::invalid_argument("sketch_power: q must be nonnegative");
    SampleMatrix<Scalar> out = sketch_gaussian(a, ell, seed);
    for (int round = 0; round < q; ++round) {
        if (reorthonormalize) out.y = orth_rows(out.y);
        out.y = MatrixX<Scalar>(out.y * a.transpose());
        if (reorthonormalize) out.y = orth_rows(out.y);
        out.y = MatrixX<Scalar>(out.y * a);
    }
    out.provenance.power = q;
    out.provenance.reorthonormalized = reorthonormalize && q > 0;
    return out;
}

namespace detail {

/// Sample per the config: initial sketch by kind, then power rounds.
template <typename Derived>
SampleMatrix<typename Derived::Scalar> build_sample(const Eigen::MatrixBase<Derived>& a, Index k,
                                                    const SketchConfig& cfg) {
    using Scalar = typename Derived::Scalar;
    const Index ell = cfg.sample_count(k);
    if (ell < k)
        throw std::invalid_argument("build_sample: sample count below target rank");
    if (cfg.kind == SketchKind::Gaussian)
        return sketch_power(a, ell, cfg.power, cfg.reorthonormalize, cfg.seed);

    SampleMatrix<Scalar> out = sketch_srft(a, ell, cfg.seed);
    for (int round = 0; round < cfg.power; ++round) {
        if (cfg.reorthonormalize) out.y = orth_rows(out.y);
        out.y = MatrixX<Scalar>(out.y * a.transpose());
        if (cfg.reorthonormalize) out.y = orth_rows(out.y);
        out.y = MatrixX<Scalar>(out.y * a);
    }
    out.provenance.power = cfg.power;
    out.provenance.reorthonormalized = cfg.reorthonormalize && cfg.power > 0;
    return out;
}

}  // namespace detail

/**
 * @brief Randomized rank-k column interpolative decomposition.
 *
 * The pivots and coefficients are extracted from a full pivoted QR of the
 * sample matrix alone: the extra sample rows are discarded after pivoting,
 * and A itself is touched only through the sketch.
 */
template <typename Derived>
ColumnId<typename Derived::Scalar> randomized_id(const Eigen::MatrixBase<Derived>& a, Index k,
                                                 const SketchConfig& cfg,
                                                 const SolveStrategy& strategy = SolveStrategy::automatic()) {
    using Scalar = typename Derived::Scalar;
    require_rank_in_range(k, a.rows(), a.cols(), "randomized_id");
    SampleMatrix<Scalar> sample = detail::build_sample(a, k, cfg);
    if (sample.y.rows() < k)
        throw std::runtime_error("randomized_id: sample rank collapsed below target rank");

    PivotedQr<Scalar> qr = cpqr_full(sample.y);
    if (qr.s.rows() < k)
        throw std::runtime_error("randomized_id: sample rank collapsed below target rank");
    const MatrixX<Scalar> s1 = qr.s.topRows(k);
    const MatrixX<Scalar> s11 = s1.leftCols(k);
    const MatrixX<Scalar> s12 = s1.rightCols(a.cols() - k);

    ColumnId<Scalar> id;
    id.cols = a.cols();
    id.rank = k;
    id.pivots = std::move(qr.pivots);
    id.coeff = stabilized_coeff_solve(s11, s12, strategy);
    return id;
}

/// Randomized CUR decomposition: randomized column ID, then the exact
/// two-sided conversion and least-squares linking matrix.
template <typename Derived>
CurDecomposition<typename Derived::Scalar> randomized_cur(const Eigen::MatrixBase<Derived>& a,
                                                          Index k, const SketchConfig& cfg,
                                                          const SolveStrategy& strategy = SolveStrategy::automatic(),
                                                          double pinv_threshold = 1e-12) {
    return cur_from_two_sided(a, tsid_from_column_id(a, randomized_id(a, k, cfg, strategy), strategy),
                              pinv_threshold);
}

/// Randomized truncated SVD: orthonormalize the sample's row space, project
/// A onto it, factorize the small projection, and truncate to rank k.
template <typename Derived>
Svd<typename Derived::Scalar> randomized_svd(const Eigen::MatrixBase<Derived>& a, Index k,
                                             const SketchConfig& cfg) {
    using Scalar = typename Derived::Scalar;
    require_rank_in_range(k, a.rows(), a.cols(), "randomized_svd");
    SampleMatrix<Scalar> sample = detail::build_sample(a, k, cfg);
    const MatrixX<Scalar> q = orth_rows(sample.y);  // r x n
    if (q.rows() < k)
        throw std::runtime_error("randomized_svd: sample rank collapsed below target rank");
    const MatrixX<Scalar> projected = a * q.transpose();  // m x r
    Svd<Scalar> small = svd(projected);
    Svd<Scalar> out;
    out.u = small.u.leftCols(k);
    out.sigma = small.sigma.head(k);
    out.v.noalias() = q.transpose() * small.v.leftCols(k);
    return out;
}

}  // namespace lowrank
