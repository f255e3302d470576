#pragma once

#include "lowrank/cpqr.hpp"
#include "lowrank/solve.hpp"

namespace lowrank {

/// Column interpolative decomposition A ~= A(:, pivots(1:rank)) * basis()^T.
///
/// `pivots` is the full column permutation; `coeff` holds the expansion
/// coefficients of the non-skeleton columns in the skeleton basis.
template <typename Scalar>
struct ColumnId {
    Index cols = 0;
    Index rank = 0;
    IndexVector pivots;     // length cols
    MatrixX<Scalar> coeff;  // rank x (cols - rank)

    /// Interpolation matrix (cols x rank); its skeleton rows form an exact
    /// identity block.
    MatrixX<Scalar> basis() const {
        MatrixX<Scalar> v = MatrixX<Scalar>::Zero(cols, rank);
        for (Index l = 0; l < cols; ++l) {
            if (l < rank)
                v(pivots(l), l) = Scalar(1);
            else
                v.row(pivots(l)) = coeff.col(l - rank).transpose();
        }
        return v;
    }
};

/// Row interpolative decomposition A ~= basis() * A(pivots(1:rank), :).
template <typename Scalar>
struct RowId {
    Index rows = 0;
    Index rank = 0;
    IndexVector pivots;     // length rows
    MatrixX<Scalar> coeff;  // rank x (rows - rank)

    /// Interpolation matrix (rows x rank) with identity block on the
    /// skeleton rows.
    MatrixX<Scalar> basis() const {
        MatrixX<Scalar> w = MatrixX<Scalar>::Zero(rows, rank);
        for (Index l = 0; l < rows; ++l) {
            if (l < rank)
                w(pivots(l), l) = Scalar(1);
            else
                w.row(pivots(l)) = coeff.col(l - rank).transpose();
        }
        return w;
    }
};

/// Two-sided interpolative decomposition
/// A ~= row_basis() * skeleton * col_basis()^T, with skeleton a k x k
/// submatrix of A. `row_id` skeletonizes the rows of the column skeleton C,
/// which also makes it an approximate row ID of A itself.
template <typename Scalar>
struct TwoSidedId {
    ColumnId<Scalar> col_id;
    RowId<Scalar> row_id;
    MatrixX<Scalar> skeleton;

    const IndexVector& col_pivots() const { return col_id.pivots; }
    const IndexVector& row_pivots() const { return row_id.pivots; }
    MatrixX<Scalar> col_basis() const { return col_id.basis(); }
    MatrixX<Scalar> row_basis() const { return row_id.basis(); }
    Index rank() const { return col_id.rank; }
};

/// Column skeleton A(:, pivots(1:rank)) of `id`.
template <typename Derived, typename Scalar = typename Derived::Scalar>
MatrixX<Scalar> skeleton_columns(const Eigen::MatrixBase<Derived>& a, const ColumnId<Scalar>& id) {
    return select_columns(a, id.pivots, id.rank);
}

/// Row skeleton A(pivots(1:rank), :) of `id`.
template <typename Derived, typename Scalar = typename Derived::Scalar>
MatrixX<Scalar> skeleton_rows(const Eigen::MatrixBase<Derived>& a, const RowId<Scalar>& id) {
    return select_rows(a, id.pivots, id.rank);
}

/**
 * @brief Rank-k column interpolative decomposition.
 *
 * Runs the partial pivoted QR, then expands the residual columns in the
 * skeleton basis by solving the triangular coefficient system with the
 * given strategy.
 */
template <typename Derived>
ColumnId<typename Derived::Scalar> id_column(const Eigen::MatrixBase<Derived>& a, Index k,
                                             const SolveStrategy& strategy = SolveStrategy::automatic()) {
    using Scalar = typename Derived::Scalar;
    require_rank_in_range(k, a.rows(), a.cols(), "id_column");
    PivotedQr<Scalar> qr = cpqr_partial(a, k);
    const MatrixX<Scalar> s11 = qr.s.leftCols(k);
    const MatrixX<Scalar> s12 = qr.s.rightCols(a.cols() - k);
    ColumnId<Scalar> id;
    id.cols = a.cols();
    id.rank = k;
    id.pivots = std::move(qr.pivots);
    id.coeff = stabilized_coeff_solve(s11, s12, strategy);
    return id;
}

/// Rank-k row interpolative decomposition (column ID of the transpose).
template <typename Derived>
RowId<typename Derived::Scalar> id_row(const Eigen::MatrixBase<Derived>& a, Index k,
                                       const SolveStrategy& strategy = SolveStrategy::automatic()) {
    using Scalar = typename Derived::Scalar;
    ColumnId<Scalar> cid = id_column(a.transpose(), k, strategy);
    RowId<Scalar> rid;
    rid.rows = a.rows();
    rid.rank = k;
    rid.pivots = std::move(cid.pivots);
    rid.coeff = std::move(cid.coeff);
    return rid;
}

/// Completes a column ID into a two-sided ID by a full-rank row
/// skeletonization of the column skeleton; the conversion adds no
/// approximation error beyond roundoff.
template <typename Derived, typename Scalar = typename Derived::Scalar>
TwoSidedId<Scalar> tsid_from_column_id(const Eigen::MatrixBase<Derived>& a,
                                       ColumnId<Scalar> col_id,
                                       const SolveStrategy& strategy = SolveStrategy::automatic()) {
    MatrixX<Scalar> c = skeleton_columns(a, col_id);
    TwoSidedId<Scalar> out;
    out.row_id = id_row(c, col_id.rank, strategy);  // full rank: k = cols of c
    out.skeleton = select_rows(c, out.row_id.pivots, col_id.rank);
    out.col_id = std::move(col_id);
    return out;
}

/// Rank-k two-sided interpolative decomposition.
template <typename Derived>
TwoSidedId<typename Derived::Scalar> id_two_sided(const Eigen::MatrixBase<Derived>& a, Index k,
                                                  const SolveStrategy& strategy = SolveStrategy::automatic()) {
    return tsid_from_column_id(a, id_column(a, k, strategy), strategy);
}

/// Materialized product of a column ID's stored factors.
template <typename Derived, typename Scalar = typename Derived::Scalar>
MatrixX<Scalar> reconstruct(const Eigen::MatrixBase<Derived>& a, const ColumnId<Scalar>& id) {
    return skeleton_columns(a, id) * id.basis().transpose();
}

/// Materialized product of a row ID's stored factors.
template <typename Derived, typename Scalar = typename Derived::Scalar>
MatrixX<Scalar> reconstruct(const Eigen::MatrixBase<Derived>& a, const RowId<Scalar>& id) {
    return id.basis() * skeleton_rows(a, id);
}

/// Materialized product of a two-sided ID's stored factors.
template <typename Scalar>
MatrixX<Scalar> reconstruct(const TwoSidedId<Scalar>& tsid) {
    return tsid.row_basis() * tsid.skeleton * tsid.col_basis().transpose();
}

}  // namespace lowrank
