#include <doctest.h>

#include "lowrank/cpqr.hpp"
#include "lowrank/rng.hpp"
#include "oracles.hpp"

using namespace lowrank;

namespace {

MatrixX<double> permuted(const MatrixX<double>& a, const IndexVector& pivots) {
    MatrixX<double> out(a.rows(), a.cols());
    for (Index j = 0; j < a.cols(); ++j) out.col(j) = a.col(pivots(j));
    return out;
}

void check_pivot_decay(const PivotedQr<double>& qr) {
    const Index r = qr.s.rows();
    const double slack = 1e-12 * std::abs(qr.s(0, 0));
    for (Index j = 0; j < r; ++j)
        for (Index l = j + 1; l < qr.s.cols(); ++l) {
            const double tail = qr.s.col(l).segment(j, r - j).norm();
            CHECK(std::abs(qr.s(j, j)) + slack >= tail);
        }
}

}  // namespace

TEST_CASE("partial factorization of the identity keeps natural order") {
    const auto qr = cpqr_partial(MatrixX<double>::Identity(3, 3), 2);
    CHECK(qr.pivots(0) == 0);
    CHECK(qr.pivots(1) == 1);
    CHECK(qr.pivots(2) == 2);
    MatrixX<double> expected(2, 3);
    expected << 1, 0, 0, 0, 1, 0;
    CHECK((qr.s - expected).cwiseAbs().maxCoeff() == 0.0);
    CHECK(qr.rank_achieved == 2);
}

TEST_CASE("pivoting selects the largest column first") {
    MatrixX<double> a = MatrixX<double>::Zero(2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = 2.0;
    const auto qr = cpqr_partial(a, 2);
    CHECK(qr.pivots(0) == 1);
    CHECK(qr.pivots(1) == 0);
    CHECK(std::abs(qr.s(0, 0)) == doctest::Approx(2.0));
    CHECK(std::abs(qr.s(1, 1)) == doctest::Approx(1.0));
}

TEST_CASE("partial residual matches an independent gram-schmidt oracle") {
    const MatrixX<double> a = gaussian_matrix(10, 8, 7);
    const Index k = 5;
    const auto qr = cpqr_partial(a, k);
    const MatrixX<double> ap = permuted(a, qr.pivots);
    const double resid = oracle::power_iteration_norm(ap - qr.q * qr.s);

    auto [oq, orr] = oracle::mgs_qr(ap);
    const double oracle_resid =
        oracle::power_iteration_norm(ap - oq.leftCols(k) * orr.topRows(k));
    CHECK(resid == doctest::Approx(oracle_resid).epsilon(1e-10));
}

TEST_CASE("one-by-one full factorization") {
    MatrixX<double> a(1, 1);
    a << 5.0;
    const auto qr = cpqr_full(a);
    CHECK(qr.q(0, 0) == doctest::Approx(1.0));
    CHECK(qr.s(0, 0) == doctest::Approx(5.0));
    CHECK(qr.pivots(0) == 0);
}

TEST_CASE("duplicate columns reveal rank deficiency") {
    MatrixX<double> a = gaussian_matrix(6, 3, 11);
    MatrixX<double> dup(6, 4);
    dup << a.col(0), a.col(1), a.col(0), a.col(2);
    const auto qr = cpqr_full(dup);
    check_pivot_decay(qr);
    CHECK(std::abs(qr.s(3, 3)) <= 1e-12 * std::abs(qr.s(0, 0)));
    const MatrixX<double> ap = permuted(dup, qr.pivots);
    CHECK((ap - qr.q * qr.s).norm() <= 1e-12 * dup.norm());
}

TEST_CASE("diagonal product equals the determinant magnitude") {
    const MatrixX<double> a = gaussian_matrix(12, 12, 3);
    const auto qr = cpqr_full(a);
    double diag_product = 1.0;
    for (Index j = 0; j < 12; ++j) diag_product *= std::abs(qr.s(j, j));
    const double det = std::abs(oracle::lu_determinant(a));
    CHECK(diag_product == doctest::Approx(det).epsilon(1e-8));
}

TEST_CASE("factorization invariants over a small corpus") {
    for (std::uint64_t seed : {1, 2, 3}) {
        const MatrixX<double> a = gaussian_matrix(15, 11, seed);
        const auto full = cpqr_full(a);
        check_pivot_decay(full);
        CHECK((full.q.transpose() * full.q - MatrixX<double>::Identity(11, 11)).norm() <=
              1e-12 * 11);
        CHECK((permuted(a, full.pivots) - full.q * full.s).norm() <= 1e-12 * a.norm());
        CHECK(full.s.template triangularView<Eigen::StrictlyLower>()
                  .toDenseMatrix()
                  .cwiseAbs()
                  .maxCoeff() == 0.0);

        for (Index k : {3, 6, 9}) {
            const auto part = cpqr_partial(a, k);
            // same greedy pivot prefix as the full factorization
            for (Index j = 0; j < k; ++j) CHECK(part.pivots(j) == full.pivots(j));
            const double resid = (permuted(a, part.pivots) - part.q * part.s).norm();
            const double trailing = full.s.bottomRightCorner(11 - k, 11 - k).norm();
            CHECK(resid == doctest::Approx(trailing).epsilon(1e-10));
        }
    }
}

TEST_CASE("trailing block norm is nonincreasing in the rank") {
    const MatrixX<double> a = gaussian_matrix(12, 10, 5);
    const auto full = cpqr_full(a);
    double prev = std::numeric_limits<double>::infinity();
    for (Index k = 1; k < 10; ++k) {
        const double s22 = full.s.bottomRightCorner(10 - k, 10 - k).norm();
        CHECK(s22 <= prev + 1e-12);
        prev = s22;
    }
}

TEST_CASE("parameter and input validation") {
    const MatrixX<double> a = gaussian_matrix(4, 4, 1);
    CHECK_THROWS_AS(cpqr_partial(a, 0), std::invalid_argument);
    CHECK_THROWS_AS(cpqr_partial(a, 5), std::invalid_argument);
    MatrixX<double> bad = a;
    bad(2, 2) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(cpqr_partial(bad, 2), std::invalid_argument);
}
