#pragma once

#include <cmath>

#include "lowrank/core.hpp"

namespace lowrank {

/// Column-pivoted QR factorization A(:,pivots) = q * s.
///
/// `q` has orthonormal columns, `s` is upper trapezoidal with nonnegative
/// diagonal, and `pivots` is the full column permutation (0-based).
/// `rank_achieved` is the number of Householder steps taken: k for a partial
/// factorization, min(rows, cols) for a full one.
template <typename Scalar>
struct PivotedQr {
    MatrixX<Scalar> q;
    MatrixX<Scalar> s;
    IndexVector pivots;
    Index rank_achieved = 0;
};

/**
 * @brief Partial column-pivoted Householder QR, stopped after k steps.
 *
 * Pivoting is greedy on the largest remaining column norm, ties resolved to
 * the lowest column index. Remaining norms are maintained by downdating;
 * a column is re-measured exactly once its running value has shrunk by a
 * factor 1e3 below the last exact value, which keeps the pivot order immune
 * to cancellation in the running estimates.
 */
template <typename Derived>
PivotedQr<typename Derived::Scalar> cpqr_partial(const Eigen::MatrixBase<Derived>& a, Index k) {
    using Scalar = typename Derived::Scalar;
    require_nonempty(a, "cpqr_partial");
    require_finite(a, "cpqr_partial");
    require_rank_in_range(k, a.rows(), a.cols(), "cpqr_partial");

    const Index m = a.rows(), n = a.cols();
    MatrixX<Scalar> work = a;  // upper part becomes s, lower part holds reflectors
    VectorX<Scalar> tau = VectorX<Scalar>::Zero(k);
    IndexVector pivots(n);
    for (Index j = 0; j < n; ++j) pivots(j) = j;

    VectorX<Scalar> norm2 = work.colwise().squaredNorm();
    VectorX<Scalar> norm2_exact = norm2;  // value at the last exact measurement

    for (Index step = 0; step < k; ++step) {
        Index pivot = step;
        for (Index j = step + 1; j < n; ++j)
            if (norm2(j) > norm2(pivot)) pivot = j;
        if (pivot != step) {
            work.col(step).swap(work.col(pivot));
            std::swap(norm2(step), norm2(pivot));
            std::swap(norm2_exact(step), norm2_exact(pivot));
            std::swap(pivots(step), pivots(pivot));
        }

        const Index tail = m - step;
        const Scalar alpha = work(step, step);
        const Scalar colnorm = work.col(step).segment(step, tail).norm();
        if (colnorm > Scalar(0)) {
            const Scalar beta = alpha >= Scalar(0) ? -colnorm : colnorm;
            tau(step) = (beta - alpha) / beta;
            work.col(step).segment(step + 1, tail - 1) /= (alpha - beta);
            work(step, step) = beta;

            if (step + 1 < n) {
                VectorX<Scalar> v(tail);
                v(0) = Scalar(1);
                v.tail(tail - 1) = work.col(step).segment(step + 1, tail - 1);
                auto trailing = work.block(step, step + 1, tail, n - step - 1);
                VectorX<Scalar> w = trailing.transpose() * v;
                trailing.noalias() -= (tau(step) * v) * w.transpose();
            }
        }

        for (Index j = step + 1; j < n; ++j) {
            norm2(j) -= work(step, j) * work(step, j);
            if (norm2(j) < Scalar(1e-6) * norm2_exact(j)) {
                norm2(j) = work.col(j).segment(step + 1, tail - 1).squaredNorm();
                norm2_exact(j) = norm2(j);
            }
        }
    }

    PivotedQr<Scalar> out;
    out.pivots = std::move(pivots);
    out.rank_achieved = k;

    // accumulate q = H_0 ... H_{k-1} * [I_k; 0]
    out.q = MatrixX<Scalar>::Zero(m, k);
    out.q.diagonal().setOnes();
    for (Index step = k - 1; step >= 0; --step) {
        if (tau(step) == Scalar(0)) continue;
        const Index tail = m - step;
        VectorX<Scalar> v(tail);
        v(0) = Scalar(1);
        v.tail(tail - 1) = work.col(step).segment(step + 1, tail - 1);
        auto block = out.q.block(step, 0, tail, k);
        VectorX<Scalar> w = block.transpose() * v;
        block.noalias() -= (tau(step) * v) * w.transpose();
    }

    out.s = work.topRows(k);
    out.s.template triangularView<Eigen::StrictlyLower>().setZero();
    for (Index j = 0; j < k; ++j) {
        if (out.s(j, j) < Scalar(0)) {
            out.s.row(j) = -out.s.row(j);
            out.q.col(j) = -out.q.col(j);
        }
    }
    return out;
}

/// Full column-pivoted QR: min(rows, cols) Householder steps, so that
/// A(:,pivots) = q * s reconstructs exactly (up to roundoff).
template <typename Derived>
PivotedQr<typename Derived::Scalar> cpqr_full(const Eigen::MatrixBase<Derived>& a) {
    require_nonempty(a, "cpqr_full");
    return cpqr_partial(a, std::min(a.rows(), a.cols()));
}

}  // namespace lowrank
