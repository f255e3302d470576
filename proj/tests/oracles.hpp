#pragma once

// Independent reference computations for the test suites. Everything here
// is deliberately written with naive algorithms so results do not share a
// code path with the library implementations they check.

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Eigen::Index;

/// Triple-loop matrix product.
inline Mat naive_matmul(const Mat& a, const Mat& b) {
    Mat out = Mat::Zero(a.rows(), b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < b.cols(); ++j)
            for (Index l = 0; l < a.cols(); ++l) out(i, j) += a(i, l) * b(l, j);
    return out;
}

/// Determinant through partially pivoted Gaussian elimination.
inline double lu_determinant(Mat a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("lu_determinant: square input required");
    const Index n = a.rows();
    double det = 1.0;
    for (Index col = 0; col < n; ++col) {
        Index pivot = col;
        for (Index i = col + 1; i < n; ++i)
            if (std::abs(a(i, col)) > std::abs(a(pivot, col))) pivot = i;
        if (a(pivot, col) == 0.0) return 0.0;
        if (pivot != col) {
            a.row(pivot).swap(a.row(col));
            det = -det;
        }
        det *= a(col, col);
        for (Index i = col + 1; i < n; ++i) {
            const double f = a(i, col) / a(col, col);
            a.row(i).tail(n - col) -= f * a.row(col).tail(n - col);
        }
    }
    return det;
}

/// Classical cyclic two-sided Jacobi eigendecomposition of a symmetric
/// matrix; eigenvalues returned in descending order with their vectors.
inline std::pair<Vec, Mat> jacobi_symmetric_eigen(Mat s) {
    if (s.rows() != s.cols())
        throw std::invalid_argument("jacobi_symmetric_eigen: square input required");
    const Index n = s.rows();
    Mat vectors = Mat::Identity(n, n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (Index p = 0; p < n - 1; ++p)
            for (Index q = p + 1; q < n; ++q) off = std::max(off, std::abs(s(p, q)));
        const double scale = s.cwiseAbs().maxCoeff();
        if (scale == 0.0 || off <= 1e-15 * scale) break;
        for (Index p = 0; p < n - 1; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                if (std::abs(s(p, q)) <= 1e-300) continue;
                const double theta = (s(q, q) - s(p, p)) / (2.0 * s(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = c * t;
                // two-sided rotation G^T S G on the (p,q) plane
                Vec row_p = s.row(p), row_q = s.row(q);
                s.row(p) = (c * row_p - sn * row_q).transpose();
                s.row(q) = (sn * row_p + c * row_q).transpose();
                Vec col_p = s.col(p), col_q = s.col(q);
                s.col(p) = c * col_p - sn * col_q;
                s.col(q) = sn * col_p + c * col_q;
                Vec v_p = vectors.col(p), v_q = vectors.col(q);
                vectors.col(p) = c * v_p - sn * v_q;
                vectors.col(q) = sn * v_p + c * v_q;
            }
        }
    }
    Vec values = s.diagonal();
    std::vector<Index> order(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a_, Index b_) { return values(a_) > values(b_); });
    Vec sorted(n);
    Mat sorted_vectors(n, n);
    for (Index i = 0; i < n; ++i) {
        sorted(i) = values(order[static_cast<std::size_t>(i)]);
        sorted_vectors.col(i) = vectors.col(order[static_cast<std::size_t>(i)]);
    }
    return {sorted, sorted_vectors};
}

/// Spectral norm estimate from a fixed-step power iteration on A^T A.
inline double power_iteration_norm(const Mat& a, int steps = 500) {
    const Mat gram = a.transpose() * a;
    Vec x = Vec::Ones(gram.rows());
    x.normalize();
    for (int i = 0; i < steps; ++i) {
        x = gram * x;
        const double nrm = x.norm();
        if (nrm == 0.0) return 0.0;
        x /= nrm;
    }
    return std::sqrt(x.dot(gram * x));
}

/// Modified Gram-Schmidt QR (no pivoting); returns thin Q and the
/// trapezoidal R with r = min(rows, cols).
inline std::pair<Mat, Mat> mgs_qr(const Mat& a) {
    const Index m = a.rows(), n = a.cols();
    const Index r = std::min(m, n);
    Mat q = Mat::Zero(m, r);
    Mat rr = Mat::Zero(r, n);
    Mat work = a;
    for (Index j = 0; j < r; ++j) {
        rr(j, j) = work.col(j).norm();
        if (rr(j, j) > 0) q.col(j) = work.col(j) / rr(j, j);
        for (Index l = j + 1; l < n; ++l) {
            rr(j, l) = q.col(j).dot(work.col(l));
            work.col(l) -= rr(j, l) * q.col(j);
        }
    }
    return {q, rr};
}

/// Least squares min ||s11 * t - s12|| through explicitly rank-truncated
/// normal equations.
inline Mat normal_equations_truncated(const Mat& s11, const Mat& s12, double rel_threshold) {
    const Mat normal = s11.transpose() * s11;
    auto [values, vectors] = jacobi_symmetric_eigen(normal);
    const double cutoff = values.size() > 0 && values(0) > 0
                              ? values(0) * rel_threshold * rel_threshold
                              : 0.0;
    Mat t = Mat::Zero(s11.cols(), s12.cols());
    const Mat rhs = s11.transpose() * s12;
    for (Index i = 0; i < values.size(); ++i) {
        if (values(i) <= cutoff || values(i) <= 0) continue;
        t += vectors.col(i) * (vectors.col(i).transpose() * rhs) / values(i);
    }
    return t;
}

}  // namespace oracle
