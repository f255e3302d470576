#pragma once

#include <cstdint>

#include "lowrank/cur.hpp"

namespace lowrank {

/// Spectral and Frobenius norms of a matrix, for reuse across reports.
struct MatrixNorms {
    double spectral = 0.0;
    double frobenius = 0.0;
};

template <typename Derived>
MatrixNorms matrix_norms(const Eigen::MatrixBase<Derived>& a) {
    return {static_cast<double>(spectral_norm(a)), static_cast<double>(frobenius_norm(a))};
}

/// Absolute and relative approximation errors of `approx` against `a`.
/// When a is the zero matrix the relative fields fall back to the absolute
/// values and `rel_is_absolute` is set.
struct ErrorReport {
    double abs_spectral = 0.0;
    double rel_spectral = 0.0;
    double abs_frob = 0.0;
    double rel_frob = 0.0;
    bool rel_is_absolute = false;
};

template <typename DerivedA, typename DerivedB>
ErrorReport error_report(const Eigen::MatrixBase<DerivedA>& a,
                         const Eigen::MatrixBase<DerivedB>& approx,
                         const MatrixNorms& norms_of_a) {
    if (a.rows() != approx.rows() || a.cols() != approx.cols())
        throw std::invalid_argument("error_report: shape mismatch");
    ErrorReport rep;
    const MatrixX<typename DerivedA::Scalar> diff = a - approx;
    rep.abs_spectral = static_cast<double>(spectral_norm(diff));
    rep.abs_frob = static_cast<double>(frobenius_norm(diff));
    if (norms_of_a.frobenius == 0.0) {
        rep.rel_is_absolute = true;
        rep.rel_spectral = rep.abs_spectral;
        rep.rel_frob = rep.abs_frob;
    } else {
        rep.rel_spectral = rep.abs_spectral / norms_of_a.spectral;
        rep.rel_frob = rep.abs_frob / norms_of_a.frobenius;
    }
    return rep;
}

template <typename DerivedA, typename DerivedB>
ErrorReport error_report(const Eigen::MatrixBase<DerivedA>& a,
                         const Eigen::MatrixBase<DerivedB>& approx) {
    return error_report(a, approx, matrix_norms(a));
}

/// Check of the CUR error bound ||A - CUR|| <= ||E|| + ||Etilde|| in the
/// spectral norm, with the two error terms evaluated by direct subtraction.
struct Lemma1Report {
    double lhs = 0.0;          // ||A - CUR||
    double rhs = 0.0;          // ||E|| + ||Etilde||
    double e_norm = 0.0;       // column-ID error ||A - C V^T||
    double etilde_norm = 0.0;  // row-ID error ||A - W R||
    bool holds = false;
};

template <typename Derived, typename Scalar = typename Derived::Scalar>
Lemma1Report verify_lemma1(const Eigen::MatrixBase<Derived>& a,
                           const CurDecomposition<Scalar>& cur,
                           const ColumnId<Scalar>& col_id,
                           const MatrixX<Scalar>& row_basis_w) {
    Lemma1Report rep;
    rep.e_norm = static_cast<double>(spectral_norm(a - reconstruct(a, col_id)));
    rep.etilde_norm = static_cast<double>(spectral_norm(a - row_basis_w * cur.r));
    rep.lhs = static_cast<double>(spectral_norm(a - reconstruct(cur)));
    rep.rhs = rep.e_norm + rep.etilde_norm;
    rep.holds = rep.lhs <= rep.rhs * (1.0 + 1e-8);
    return rep;
}

/// Dual-path evaluation of the row-ID error: directly as A - W R and
/// algebraically as the permuted stack [0; F E]. The two must agree, and
/// the row-ID error must obey ||Etilde|| <= (1 + ||T||) ||E||.
struct Lemma2Report {
    double etilde_norm = 0.0;  // direct ||A - W R||
    double fe_norm = 0.0;      // via the permuted stack [0; F E]
    double entry_diff = 0.0;   // max abs entrywise gap between the two paths
    double e_norm = 0.0;
    double t_norm = 0.0;
    double bound_rhs = 0.0;  // (1 + ||T||) ||E||
    bool holds = false;      // the two paths agree
    bool bound_holds = false;
};

template <typename Derived, typename Scalar = typename Derived::Scalar>
Lemma2Report verify_lemma2(const Eigen::MatrixBase<Derived>& a,
                           const ColumnId<Scalar>& col_id,
                           const RowId<Scalar>& row_selection) {
    const Index k = col_id.rank;
    const Index m = a.rows();
    if (row_selection.rank != k || row_selection.rows != m)
        throw std::invalid_argument("verify_lemma2: row selection does not match");

    const MatrixX<Scalar> e = a - reconstruct(a, col_id);
    const MatrixX<Scalar> etilde_direct =
        a - row_selection.basis() * select_rows(a, row_selection.pivots, k);

    // F E = E(I_res,:) - T^T E(I_skel,:), scattered back through the row
    // permutation with zero skeleton rows.
    const MatrixX<Scalar> e_skel = select_rows(e, row_selection.pivots, k);
    MatrixX<Scalar> etilde_stack = MatrixX<Scalar>::Zero(m, a.cols());
    for (Index l = k; l < m; ++l)
        etilde_stack.row(row_selection.pivots(l)) =
            e.row(row_selection.pivots(l)) -
            row_selection.coeff.col(l - k).transpose() * e_skel;

    Lemma2Report rep;
    rep.etilde_norm = static_cast<double>(spectral_norm(etilde_direct));
    rep.fe_norm = static_cast<double>(spectral_norm(etilde_stack));
    rep.entry_diff =
        static_cast<double>((etilde_direct - etilde_stack).cwiseAbs().maxCoeff());
    rep.e_norm = static_cast<double>(spectral_norm(e));
    rep.t_norm = row_selection.coeff.size() > 0
                     ? static_cast<double>(spectral_norm(row_selection.coeff))
                     : 0.0;
    rep.bound_rhs = (1.0 + rep.t_norm) * rep.e_norm;
    const double scale = std::max(rep.etilde_norm, rep.fe_norm);
    rep.holds = std::abs(rep.etilde_norm - rep.fe_norm) <= 1e-8 * scale ||
                scale <= 1e-12 * static_cast<double>(frobenius_norm(a));
    rep.bound_holds = rep.etilde_norm <= rep.bound_rhs * (1.0 + 1e-8);
    return rep;
}

/// Check of ||A - CUR|| <= (2 + ||T||) ||E||, T being the coefficient block
/// of the row skeletonization of C (recomputed here, deterministically equal
/// to the one used when the CUR was built). `ceiling` reports the worst-case
/// envelope 2 * sqrt(k (m - k)) for reference; it is never asserted.
struct CorollaryReport {
    double lhs = 0.0;
    double bound = 0.0;
    double t_norm = 0.0;
    double e_norm = 0.0;
    double ceiling = 0.0;
    bool holds = false;
};

template <typename Derived, typename Scalar = typename Derived::Scalar>
CorollaryReport verify_corollary(const Eigen::MatrixBase<Derived>& a,
                                 const CurDecomposition<Scalar>& cur,
                                 const ColumnId<Scalar>& col_id,
                                 const SolveStrategy& strategy = SolveStrategy::automatic()) {
    const Index k = col_id.rank;
    const RowId<Scalar> row_of_c = id_row(skeleton_columns(a, col_id), k, strategy);

    CorollaryReport rep;
    rep.t_norm = row_of_c.coeff.size() > 0
                     ? static_cast<double>(spectral_norm(row_of_c.coeff))
                     : 0.0;
    rep.e_norm = static_cast<double>(spectral_norm(a - reconstruct(a, col_id)));
    rep.lhs = static_cast<double>(spectral_norm(a - reconstruct(cur)));
    rep.bound = (2.0 + rep.t_norm) * rep.e_norm;
    rep.ceiling = 2.0 * std::sqrt(static_cast<double>(k) * static_cast<double>(a.rows() - k));
    rep.holds = rep.lhs <= rep.bound * (1.0 + 1e-8);
    return rep;
}

enum class FactorKind { ColumnId, TwoSidedId, Cur };

/// Storage cost of a factorization in scalar units, exploiting the identity
/// blocks inside interpolation matrices.
inline std::int64_t storage_units(FactorKind kind, std::int64_t m, std::int64_t n,
                                  std::int64_t k) {
    if (m < 1 || n < 1 || k < 1 || k > std::min(m, n))
        throw std::invalid_argument("storage_units: invalid dimensions");
    switch (kind) {
        case FactorKind::ColumnId:
            return m * k + k * (n - k);
        case FactorKind::TwoSidedId:
            return k * (m - k) + k * k + k * (n - k);
        case FactorKind::Cur:
            return m * k + k * n + k * k;
    }
    throw std::logic_error("storage_units: unreachable");
}

}  // namespace lowrank
