#include <doctest.h>

#include "lowrank/rng.hpp"
#include "lowrank/svd.hpp"
#include "oracles.hpp"

using namespace lowrank;

namespace {

void check_svd_contract(const MatrixX<double>& a) {
    const auto f = svd(a);
    const Index r = std::min(a.rows(), a.cols());
    REQUIRE(f.sigma.size() == r);
    for (Index j = 0; j + 1 < r; ++j) CHECK(f.sigma(j) >= f.sigma(j + 1));
    CHECK(f.sigma(r - 1) >= 0.0);
    CHECK((f.u.transpose() * f.u - MatrixX<double>::Identity(r, r)).norm() <= 1e-12 * r);
    CHECK((f.v.transpose() * f.v - MatrixX<double>::Identity(r, r)).norm() <= 1e-12 * r);
    CHECK((a - f.u * f.sigma.asDiagonal() * f.v.transpose()).norm() <=
          1e-12 * std::max(1.0, a.norm()));
}

}  // namespace

TEST_CASE("diagonal matrix decomposes in place") {
    MatrixX<double> a = MatrixX<double>::Zero(2, 2);
    a(0, 0) = 3.0;
    a(1, 1) = 1.0;
    const auto f = svd(a);
    CHECK(f.sigma(0) == doctest::Approx(3.0));
    CHECK(f.sigma(1) == doctest::Approx(1.0));
    CHECK(f.u.cwiseAbs().isApprox(MatrixX<double>::Identity(2, 2), 1e-14));
    CHECK(f.v.cwiseAbs().isApprox(MatrixX<double>::Identity(2, 2), 1e-14));
}

TEST_CASE("rank-one outer product") {
    const VectorX<double> x = gaussian_matrix(6, 1, 21);
    const VectorX<double> y = gaussian_matrix(4, 1, 22);
    const MatrixX<double> a = x * y.transpose();
    const auto f = svd(a);
    CHECK(f.sigma(0) == doctest::Approx(x.norm() * y.norm()).epsilon(1e-12));
    CHECK(f.sigma(1) <= 1e-12 * f.sigma(0) + 1e-300);
    check_svd_contract(a);
}

TEST_CASE("squared singular values match a jacobi eigenvalue oracle") {
    const MatrixX<double> a = gaussian_matrix(9, 6, 11);
    const auto f = svd(a);
    const auto [eigvals, eigvecs] = oracle::jacobi_symmetric_eigen(a.transpose() * a);
    for (Index j = 0; j < 6; ++j)
        CHECK(f.sigma(j) * f.sigma(j) == doctest::Approx(eigvals(j)).epsilon(1e-10));
}

TEST_CASE("contract holds across shapes") {
    check_svd_contract(gaussian_matrix(8, 8, 1));
    check_svd_contract(gaussian_matrix(12, 5, 2));
    check_svd_contract(gaussian_matrix(5, 12, 3));
    check_svd_contract(MatrixX<double>::Zero(4, 3));
    // rank deficient
    const MatrixX<double> low = gaussian_matrix(7, 2, 4) * gaussian_matrix(2, 9, 5);
    check_svd_contract(low);
    MatrixX<double> one(1, 1);
    one << -2.5;
    check_svd_contract(one);
}

TEST_CASE("spectral norm") {
    MatrixX<double> d = MatrixX<double>::Zero(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = 5.0;
    CHECK(spectral_norm(d) == doctest::Approx(5.0));
    CHECK(spectral_norm(MatrixX<double>::Zero(4, 4)) == 0.0);
    const MatrixX<double> a = gaussian_matrix(8, 8, 1);
    CHECK(spectral_norm(a) ==
          doctest::Approx(oracle::power_iteration_norm(a, 500)).epsilon(1e-8));
}

TEST_CASE("squared frobenius norm equals the sum of squared singular values") {
    const MatrixX<double> a = gaussian_matrix(10, 7, 17);
    const auto f = svd(a);
    CHECK(frobenius_norm(a) * frobenius_norm(a) ==
          doctest::Approx(f.sigma.squaredNorm()).epsilon(1e-10));
}

TEST_CASE("pseudoinverse of a singular diagonal") {
    MatrixX<double> a = MatrixX<double>::Zero(2, 2);
    a(0, 0) = 2.0;
    const MatrixX<double> p = pinv(a);
    CHECK(p(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(p(0, 1)) + std::abs(p(1, 0)) + std::abs(p(1, 1)) <= 1e-14);
}

TEST_CASE("pseudoinverse of orthonormal columns is the transpose") {
    const MatrixX<double> g = gaussian_matrix(9, 4, 31);
    Eigen::HouseholderQR<MatrixX<double>> qr(g);
    const MatrixX<double> q = qr.householderQ() * MatrixX<double>::Identity(9, 4);
    CHECK((pinv(q) - q.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("pseudoinverse is a left inverse for full column rank") {
    const MatrixX<double> a = gaussian_matrix(6, 4, 41);
    CHECK((pinv(a) * a - MatrixX<double>::Identity(4, 4)).norm() <= 1e-10);
    // A A+ A = A
    CHECK((a * pinv(a) * a - a).norm() <= 1e-10 * a.norm());
}

TEST_CASE("pseudoinverse is an involution for well-conditioned inputs") {
    const MatrixX<double> a = gaussian_matrix(7, 5, 51);
    CHECK((pinv(pinv(a)) - a).norm() <= 1e-8 * a.norm());
}

TEST_CASE("pinv rejects a threshold outside (0,1)") {
    const MatrixX<double> a = gaussian_matrix(3, 3, 1);
    CHECK_THROWS_AS(pinv(a, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(pinv(a, 1.5), std::invalid_argument);
}

TEST_CASE("row orthonormalization of a diagonal") {
    MatrixX<double> y = MatrixX<double>::Zero(2, 2);
    y(0, 0) = 2.0;
    y(1, 1) = 3.0;
    const MatrixX<double> q = orth_rows(y);
    REQUIRE(q.rows() == 2);
    CHECK(q.cwiseAbs().isApprox(MatrixX<double>::Identity(2, 2), 1e-14));
}

TEST_CASE("duplicate rows shrink the orthonormal basis") {
    const MatrixX<double> base = gaussian_matrix(3, 10, 61);
    MatrixX<double> y(4, 10);
    y << base.row(0), base.row(1), base.row(2), base.row(0);
    const MatrixX<double> q = orth_rows(y);
    CHECK(q.rows() <= 3);
    CHECK((q * q.transpose() - MatrixX<double>::Identity(q.rows(), q.rows())).norm() <=
          1e-12 * 4);
    CHECK((y - y * q.transpose() * q).norm() <= 1e-10 * y.norm());
}

TEST_CASE("row space is preserved by orth_rows") {
    const MatrixX<double> y = gaussian_matrix(5, 20, 71);
    const MatrixX<double> q = orth_rows(y);
    CHECK(q.rows() == 5);
    CHECK((y - y * q.transpose() * q).norm() <= 1e-10 * y.norm());
}
