#pragma once

#include <cmath>

#include "lowrank/svd.hpp"

namespace lowrank {

enum class SolveKind { BackSubstitution, TruncatedPinv, Tikhonov };

/// Policy for solving the triangular coefficient system S11 * T = S12.
///
/// The default policy back-substitutes and escalates to the truncated
/// pseudoinverse once the diagonal condition estimate |d_max|/|d_min|
/// exceeds 1e10; the explicit factories pin one method without escalation.
struct SolveStrategy {
    SolveKind kind = SolveKind::BackSubstitution;
    double threshold = 1e-12;  // relative cutoff for singular values / diagonals
    double ridge = 0.0;        // Tikhonov regularization weight
    bool escalate = true;

    static SolveStrategy automatic() { return {}; }
    static SolveStrategy back_substitution(double threshold = 1e-12) {
        return {SolveKind::BackSubstitution, threshold, 0.0, false};
    }
    static SolveStrategy truncated_pinv(double threshold = 1e-12) {
        return {SolveKind::TruncatedPinv, threshold, 0.0, false};
    }
    static SolveStrategy tikhonov(double ridge, double threshold = 1e-12) {
        return {SolveKind::Tikhonov, threshold, ridge, false};
    }
};

namespace detail {

constexpr double kEscalationCondition = 1e10;

/// Conjugate gradients on the (dense, SPD) normal matrix; small systems only.
template <typename Scalar>
VectorX<Scalar> conjugate_gradient(const MatrixX<Scalar>& normal, const VectorX<Scalar>& rhs) {
    const Index k = rhs.size();
    VectorX<Scalar> x = VectorX<Scalar>::Zero(k);
    VectorX<Scalar> residual = rhs;
    VectorX<Scalar> direction = residual;
    Scalar rho = residual.squaredNorm();
    const Scalar stop = Scalar(1e-28) * rhs.squaredNorm();
    const Index max_iters = 8 * k + 16;
    for (Index it = 0; it < max_iters && rho > stop; ++it) {
        VectorX<Scalar> nd = normal * direction;
        const Scalar denom = direction.dot(nd);
        if (denom <= Scalar(0)) break;
        const Scalar alpha = rho / denom;
        x += alpha * direction;
        residual -= alpha * nd;
        const Scalar rho_next = residual.squaredNorm();
        direction = residual + (rho_next / rho) * direction;
        rho = rho_next;
    }
    return x;
}

template <typename Scalar>
MatrixX<Scalar> back_substitute(const MatrixX<Scalar>& s11, const MatrixX<Scalar>& s12,
                                double threshold, bool allow_singularity_error) {
    const Index k = s11.rows();
    const Scalar diag_max = s11.diagonal().cwiseAbs().maxCoeff();
    const Scalar diag_tol = static_cast<Scalar>(threshold) * diag_max;
    const Scalar rhs_scale =
        s12.size() > 0 ? s12.cwiseAbs().maxCoeff() : Scalar(0);

    MatrixX<Scalar> t(k, s12.cols());
    for (Index i = k - 1; i >= 0; --i) {
        VectorX<Scalar> rhs = s12.row(i);
        for (Index j = i + 1; j < k; ++j) rhs -= s11(i, j) * t.row(j).transpose();
        if (std::abs(s11(i, i)) <= diag_tol) {
            const Scalar residual =
                rhs.size() > 0 ? rhs.cwiseAbs().maxCoeff() : Scalar(0);
            if (allow_singularity_error &&
                residual > static_cast<Scalar>(threshold) * rhs_scale)
                throw SingularityError(
                    "stabilized_coeff_solve: zero diagonal with inconsistent right-hand "
                    "side at index " + std::to_string(i), i);
            t.row(i).setZero();  // rank-deficient but consistent row
        } else {
            t.row(i) = rhs.transpose() / s11(i, i);
        }
    }
    return t;
}

}  // namespace detail

/**
 * @brief Solve / least-squares-minimize ||S11 * T - S12|| for the coefficient
 *        block T of an interpolative factorization.
 *
 * S11 must be k-by-k upper triangular. Back-substitution tolerates zero
 * diagonal rows whose right-hand side is consistently zero (the rows of T
 * are zeroed); an inconsistent zero diagonal raises SingularityError naming
 * the offending index. The truncated-pseudoinverse path discards singular
 * values below threshold * sigma_1, and the Tikhonov path runs conjugate
 * gradients on the regularized normal equations.
 */
template <typename Scalar>
MatrixX<Scalar> stabilized_coeff_solve(const MatrixX<Scalar>& s11, const MatrixX<Scalar>& s12,
                                       const SolveStrategy& strategy = SolveStrategy::automatic()) {
    if (s11.rows() != s11.cols())
        throw std::invalid_argument("stabilized_coeff_solve: triangular block must be square");
    if (s12.rows() != s11.rows())
        throw std::invalid_argument("stabilized_coeff_solve: row count mismatch");
    if (!s11.allFinite() || !s12.allFinite())
        throw std::invalid_argument("stabilized_coeff_solve: non-finite entries");
    if (!s11.template triangularView<Eigen::StrictlyLower>().toDenseMatrix().isZero(Scalar(0)))
        throw std::invalid_argument("stabilized_coeff_solve: block is not upper triangular");

    const Index k = s11.rows();
    if (s12.cols() == 0) return MatrixX<Scalar>(k, 0);

    SolveKind kind = strategy.kind;
    if (kind == SolveKind::BackSubstitution && strategy.escalate) {
        const Scalar dmax = s11.diagonal().cwiseAbs().maxCoeff();
        const Scalar dmin = s11.diagonal().cwiseAbs().minCoeff();
        if (dmax == Scalar(0) || dmin == Scalar(0) ||
            dmax / dmin > static_cast<Scalar>(detail::kEscalationCondition))
            kind = SolveKind::TruncatedPinv;
    }

    switch (kind) {
        case SolveKind::BackSubstitution:
            return detail::back_substitute(s11, s12, strategy.threshold, !strategy.escalate);
        case SolveKind::TruncatedPinv:
            return pinv(s11, strategy.threshold) * s12;
        case SolveKind::Tikhonov: {
            const Scalar ridge2 = static_cast<Scalar>(strategy.ridge * strategy.ridge);
            MatrixX<Scalar> normal = s11.transpose() * s11;
            normal.diagonal().array() += ridge2;
            MatrixX<Scalar> rhs = s11.transpose() * s12;
            MatrixX<Scalar> t(k, s12.cols());
            for (Index j = 0; j < s12.cols(); ++j)
                t.col(j) = detail::conjugate_gradient(normal, VectorX<Scalar>(rhs.col(j)));
            return t;
        }
    }
    throw std::logic_error("stabilized_coeff_solve: unreachable");
}

}  // namespace lowrank
