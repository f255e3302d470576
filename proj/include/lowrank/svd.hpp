#pragma once

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "lowrank/core.hpp"

namespace lowrank {

/// Thin singular value decomposition A = u * sigma.asDiagonal() * v^T with
/// r = min(rows, cols) terms; sigma is nonincreasing and nonnegative.
template <typename Scalar>
struct Svd {
    MatrixX<Scalar> u;
    VectorX<Scalar> sigma;
    MatrixX<Scalar> v;

    Index rank(Scalar rel_threshold) const {
        if (sigma.size() == 0 || sigma(0) == Scalar(0)) return 0;
        Index r = 0;
        while (r < sigma.size() && sigma(r) >= rel_threshold * sigma(0)) ++r;
        return r;
    }
};

namespace detail {

/// One-sided (Hestenes) Jacobi on the columns of b, m >= n. Returns false
/// if the rotation sweep cap is hit before convergence.
///
/// Columns whose norm falls to the roundoff floor (epsilon relative to the
/// largest column) are zeroed and excluded: they carry no resolvable
/// singular value, and keeping them in play makes the relative convergence
/// test unreachable on numerically rank-deficient inputs.
template <typename Scalar>
bool jacobi_orthogonalize_columns(MatrixX<Scalar>& b, MatrixX<Scalar>& v) {
    constexpr Scalar kRelTol = Scalar(1e-14);
    constexpr int kMaxSweeps = 60;
    const Index n = b.cols();
    v = MatrixX<Scalar>::Identity(n, n);

    VectorX<Scalar> norm2(n);
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        norm2 = b.colwise().squaredNorm();
        const Scalar eps = std::numeric_limits<Scalar>::epsilon();
        const Scalar floor2 = norm2.maxCoeff() * eps * eps;
        auto drop_if_negligible = [&](Index j) {
            if (norm2(j) <= floor2 && norm2(j) != Scalar(0)) {
                b.col(j).setZero();
                norm2(j) = Scalar(0);
            }
        };
        for (Index j = 0; j < n; ++j) drop_if_negligible(j);

        Scalar worst = Scalar(0);
        for (Index p = 0; p < n - 1; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                const Scalar app = norm2(p), aqq = norm2(q);
                if (app == Scalar(0) || aqq == Scalar(0)) continue;
                const Scalar apq = b.col(p).dot(b.col(q));
                const Scalar rel = std::abs(apq) / std::sqrt(app * aqq);
                worst = std::max(worst, rel);
                if (rel <= kRelTol) continue;

                const Scalar theta = (aqq - app) / (Scalar(2) * apq);
                const Scalar t = (theta >= Scalar(0) ? Scalar(1) : Scalar(-1)) /
                                 (std::abs(theta) + std::sqrt(Scalar(1) + theta * theta));
                const Scalar c = Scalar(1) / std::sqrt(Scalar(1) + t * t);
                const Scalar s = c * t;

                VectorX<Scalar> bp = b.col(p);
                b.col(p) = c * bp - s * b.col(q);
                b.col(q) = s * bp + c * b.col(q);
                VectorX<Scalar> vp = v.col(p);
                v.col(p) = c * vp - s * v.col(q);
                v.col(q) = s * vp + c * v.col(q);

                norm2(p) = std::max(
                    c * c * app - Scalar(2) * c * s * apq + s * s * aqq, Scalar(0));
                norm2(q) = std::max(
                    s * s * app + Scalar(2) * c * s * apq + c * c * aqq, Scalar(0));
                drop_if_negligible(p);
                drop_if_negligible(q);
            }
        }
        if (worst <= kRelTol) return true;
    }
    return false;
}

/// Deterministic orthonormal completion: fills columns marked zero with unit
/// vectors orthogonal to all other columns (Gram-Schmidt over e_0, e_1, ...).
template <typename Scalar>
void complete_basis(MatrixX<Scalar>& u, const std::vector<Index>& zero_cols) {
    const Index m = u.rows();
    Index candidate = 0;
    for (Index col : zero_cols) {
        for (; candidate < m; ++candidate) {
            VectorX<Scalar> e = VectorX<Scalar>::Zero(m);
            e(candidate) = Scalar(1);
            for (Index j = 0; j < u.cols(); ++j) {
                bool pending = std::find(zero_cols.begin(), zero_cols.end(), j) !=
                                   zero_cols.end() &&
                               j >= col;
                if (pending) continue;
                e -= u.col(j).dot(e) * u.col(j);
            }
            const Scalar nrm = e.norm();
            if (nrm > Scalar(0.5)) {  // candidate not (nearly) contained already
                u.col(col) = e / nrm;
                ++candidate;
                break;
            }
        }
    }
}

}  // namespace detail

/**
 * @brief Full singular value decomposition via one-sided Jacobi.
 *
 * The Gram matrix of the working columns is driven to diagonal form by plane
 * rotations; sweeps stop once every off-diagonal coupling is below 1e-14
 * relative, with a cap of 60 sweeps (exceeding it raises ConvergenceError).
 * Wide inputs are factorized through their transpose.
 */
template <typename Derived>
Svd<typename Derived::Scalar> svd(const Eigen::MatrixBase<Derived>& a) {
    using Scalar = typename Derived::Scalar;
    require_nonempty(a, "svd");
    require_finite(a, "svd");

    const bool transposed = a.rows() < a.cols();
    MatrixX<Scalar> b;
    if (transposed)
        b = a.transpose();
    else
        b = a;
    const Index m = b.rows(), n = b.cols();

    MatrixX<Scalar> v;
    if (!detail::jacobi_orthogonalize_columns(b, v))
        throw ConvergenceError("svd: one-sided Jacobi did not converge within 60 sweeps for " +
                               std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                               " input");

    VectorX<Scalar> sigma(n);
    for (Index j = 0; j < n; ++j) sigma(j) = b.col(j).norm();

    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index(0));
    std::stable_sort(order.begin(), order.end(),
                     [&](Index i, Index j) { return sigma(i) > sigma(j); });

    Svd<Scalar> out;
    out.u.resize(m, n);
    out.v.resize(n, n);
    out.sigma.resize(n);
    const Scalar zero_cutoff = sigma(order[0]) * std::numeric_limits<Scalar>::epsilon() *
                               static_cast<Scalar>(std::max(m, n));
    std::vector<Index> zero_cols;
    for (Index j = 0; j < n; ++j) {
        const Index src = order[static_cast<std::size_t>(j)];
        out.sigma(j) = sigma(src);
        out.v.col(j) = v.col(src);
        if (sigma(src) > zero_cutoff) {
            out.u.col(j) = b.col(src) / sigma(src);
        } else {
            out.sigma(j) = sigma(src);  // kept as measured, only u needs completion
            out.u.col(j).setZero();
            zero_cols.push_back(j);
        }
    }
    if (!zero_cols.empty()) detail::complete_basis(out.u, zero_cols);

    if (transposed) out.u.swap(out.v);
    return out;
}

/// Largest singular value; 0 for the zero matrix.
template <typename Derived>
typename Derived::Scalar spectral_norm(const Eigen::MatrixBase<Derived>& a) {
    return svd(a).sigma(0);
}

/// Moore-Penrose pseudoinverse computed from the SVD, dropping singular
/// values below `threshold` relative to the largest.
template <typename Derived>
MatrixX<typename Derived::Scalar> pinv(const Eigen::MatrixBase<Derived>& a,
                                       double threshold = 1e-12) {
    using Scalar = typename Derived::Scalar;
    if (threshold <= 0.0 || threshold >= 1.0)
        throw std::invalid_argument("pinv: threshold must lie in (0,1)");
    const Svd<Scalar> f = svd(a);
    const Index r = f.rank(static_cast<Scalar>(threshold));
    MatrixX<Scalar> out = MatrixX<Scalar>::Zero(a.cols(), a.rows());
    if (r > 0)
        out.noalias() = f.v.leftCols(r) *
                        f.sigma.head(r).cwiseInverse().asDiagonal() *
                        f.u.leftCols(r).transpose();
    return out;
}

/**
 * @brief Orthonormal basis for the row space of y, returned as rows.
 *
 * Unpivoted Householder QR of y^T; trailing columns whose triangular
 * diagonal falls at roundoff level are discarded, so duplicate rows shrink
 * the basis instead of polluting it.
 */
template <typename Derived>
MatrixX<typename Derived::Scalar> orth_rows(const Eigen::MatrixBase<Derived>& y) {
    using Scalar = typename Derived::Scalar;
    require_nonempty(y, "orth_rows");
    require_finite(y, "orth_rows");

    const Index n = y.cols(), ell = y.rows();
    const Index r_max = std::min(n, ell);
    Eigen::HouseholderQR<MatrixX<Scalar>> qr(y.transpose());
    VectorX<Scalar> diag = qr.matrixQR().diagonal().head(r_max).cwiseAbs();
    const Scalar tol = diag.size() > 0
                           ? diag.maxCoeff() * std::numeric_limits<Scalar>::epsilon() *
                                 static_cast<Scalar>(std::max(n, ell))
                           : Scalar(0);
    Index r = r_max;
    while (r > 0 && diag(r - 1) <= tol) --r;

    MatrixX<Scalar> thin_q = qr.householderQ() * MatrixX<Scalar>::Identity(n, r);
    return thin_q.transpose();
}

}  // namespace lowrank
