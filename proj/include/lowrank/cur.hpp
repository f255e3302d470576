#pragma once

#include "lowrank/id.hpp"

namespace lowrank {

/// CUR factorization A ~= c * u * r where c holds actual columns and r
/// actual rows of A, selected by the stored pivot permutations.
template <typename Scalar>
struct CurDecomposition {
    MatrixX<Scalar> c;  // m x k
    MatrixX<Scalar> u;  // k x k
    MatrixX<Scalar> r;  // k x n
    IndexVector col_pivots;  // length n
    IndexVector row_pivots;  // length m

    Index rank() const { return u.rows(); }
};

/// Builds the CUR factors from a two-sided ID: c and r are copied straight
/// out of A, and u solves u * r ~= col_basis^T in the least-squares sense
/// through the truncated pseudoinverse of r.
template <typename Derived, typename Scalar = typename Derived::Scalar>
CurDecomposition<Scalar> cur_from_two_sided(const Eigen::MatrixBase<Derived>& a,
                                            const TwoSidedId<Scalar>& tsid,
                                            double pinv_threshold = 1e-12) {
    CurDecomposition<Scalar> cur;
    cur.c = select_columns(a, tsid.col_pivots(), tsid.rank());
    cur.r = select_rows(a, tsid.row_pivots(), tsid.rank());
    cur.u = tsid.col_basis().transpose() * pinv(cur.r, pinv_threshold);
    cur.col_pivots = tsid.col_pivots();
    cur.row_pivots = tsid.row_pivots();
    return cur;
}

/// Rank-k CUR decomposition via the two-sided interpolative decomposition.
template <typename Derived>
CurDecomposition<typename Derived::Scalar> cur_id(const Eigen::MatrixBase<Derived>& a, Index k,
                                                  const SolveStrategy& strategy = SolveStrategy::automatic(),
                                                  double pinv_threshold = 1e-12) {
    return cur_from_two_sided(a, id_two_sided(a, k, strategy), pinv_threshold);
}

/**
 * @brief Linking matrix refined by the partial-QR residual.
 *
 * Solves u * r = col_basis^T + pinv(c) * (A - QS) instead of the plain
 * system, folding the truncation residual of the pivoted QR back into the
 * least-squares problem. The factors must all stem from the same rank-k run
 * on the same matrix.
 */
template <typename Derived, typename Scalar = typename Derived::Scalar>
MatrixX<Scalar> cur_refined_u(const Eigen::MatrixBase<Derived>& a,
                              const CurDecomposition<Scalar>& cur,
                              const ColumnId<Scalar>& col_id,
                              const PivotedQr<Scalar>& qr,
                              double pinv_threshold = 1e-12) {
    const Index k = cur.rank();
    if (col_id.rank != k || qr.rank_achieved != k)
        throw std::invalid_argument("cur_refined_u: factor ranks disagree");
    if (col_id.cols != a.cols() || qr.pivots.size() != a.cols() ||
        cur.c.rows() != a.rows() || cur.r.cols() != a.cols())
        throw std::invalid_argument("cur_refined_u: factor shapes disagree");
    if ((col_id.pivots.array() != qr.pivots.array()).any())
        throw std::invalid_argument("cur_refined_u: pivot sequences disagree");

    MatrixX<Scalar> residual = a;
    const MatrixX<Scalar> qs = qr.q * qr.s;
    for (Index j = 0; j < a.cols(); ++j) residual.col(qr.pivots(j)) -= qs.col(j);

    const MatrixX<Scalar> rhs =
        col_id.basis().transpose() + pinv(cur.c, pinv_threshold) * residual;
    return rhs * pinv(cur.r, pinv_threshold);
}

/// Materialized product of the stored CUR factors (no access to A needed).
template <typename Scalar>
MatrixX<Scalar> reconstruct(const CurDecomposition<Scalar>& cur) {
    return cur.c * cur.u * cur.r;
}

}  // namespace lowrank
