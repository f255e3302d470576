#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace lowrank {

using Index = Eigen::Index;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Permutation / index carrier used for pivot vectors (always 0-based).
using IndexVector = Eigen::Matrix<Index, Eigen::Dynamic, 1>;

/// Thrown when a triangular solve meets a zero diagonal with an
/// inconsistent right-hand side.
class SingularityError : public std::runtime_error {
public:
    SingularityError(const std::string& what, Index index)
        : std::runtime_error(what), index_(index) {}
    Index index() const { return index_; }

private:
    Index index_;
};

/// Thrown when an iterative kernel exhausts its iteration cap.
class ConvergenceError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown by file readers; messages carry "path:line".
class ParseError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename Derived>
void require_nonempty(const Eigen::MatrixBase<Derived>& a, const char* who) {
    if (a.rows() < 1 || a.cols() < 1)
        throw std::invalid_argument(std::string(who) + ": matrix must be nonempty");
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& a, const char* who) {
    if (!a.allFinite())
        throw std::invalid_argument(std::string(who) + ": matrix has non-finite entries");
}

inline void require_rank_in_range(Index k, Index rows, Index cols, const char* who) {
    if (k < 1 || k > std::min(rows, cols))
        throw std::invalid_argument(std::string(who) + ": rank " + std::to_string(k) +
                                    " out of range for " + std::to_string(rows) + "x" +
                                    std::to_string(cols) + " matrix");
}

/// Frobenius norm, sqrt of the sum of squared entries.
template <typename Derived>
typename Derived::Scalar frobenius_norm(const Eigen::MatrixBase<Derived>& a) {
    return a.norm();
}

/// First `count` columns of `a` in the order given by `pivots`.
template <typename Derived>
MatrixX<typename Derived::Scalar> select_columns(const Eigen::MatrixBase<Derived>& a,
                                                 const IndexVector& pivots, Index count) {
    MatrixX<typename Derived::Scalar> out(a.rows(), count);
    for (Index j = 0; j < count; ++j) out.col(j) = a.col(pivots(j));
    return out;
}

/// First `count` rows of `a` in the order given by `pivots`.
template <typename Derived>
MatrixX<typename Derived::Scalar> select_rows(const Eigen::MatrixBase<Derived>& a,
                                              const IndexVector& pivots, Index count) {
    MatrixX<typename Derived::Scalar> out(count, a.cols());
    for (Index i = 0; i < count; ++i) out.row(i) = a.row(pivots(i));
    return out;
}

}  // namespace lowrank
