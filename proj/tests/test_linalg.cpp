#include <Eigen/Dense>
#include <random>

#include "doctest.h"
#include "sigmalab/linalg.hpp"

using namespace sigmalab;

namespace {

CMatrix random_matrix(std::mt19937_64& g, std::size_t rows, std::size_t cols)
{
    std::normal_distribution<double> N;
    CMatrix A(rows, cols);
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i) A(i, j) = cplx(N(g), N(g));
    return A;
}

Eigen::MatrixXcd to_eigen(const CMatrix& A)
{
    Eigen::MatrixXcd E(A.rows(), A.cols());
    for (std::size_t j = 0; j < A.cols(); ++j)
        for (std::size_t i = 0; i < A.rows(); ++i) E(i, j) = A(i, j);
    return E;
}

}  // namespace

TEST_SUITE("linalg")
{
TEST_CASE("Jacobi eigenvalues match Eigen")
{
    std::mt19937_64 g(1);
    for (std::size_t n : {1u, 2u, 5u, 12u}) {
        const CMatrix B = random_matrix(g, n, n);
        const CMatrix A = multiply(B.adjoint(), B);
        const EigenDecomposition E = jacobi_eigh(A);
        CHECK(E.converged);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(to_eigen(A));
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(E.values[i] - ref.eigenvalues()(i)) < 1e-10 * std::max(1.0, ref.eigenvalues().maxCoeff()));
        // A v = lambda v
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) {
                cplx Av = 0;
                for (std::size_t j = 0; j < n; ++j) Av += A(i, j) * E.vectors(j, k);
                CHECK(std::abs(Av - E.values[k] * E.vectors(i, k)) < 1e-9 * std::max(1.0, E.values.back()));
            }
    }
}

TEST_CASE("tall SVD matches Eigen")
{
    std::mt19937_64 g(2);
    for (auto [rows, cols] : {std::pair{40u, 1u}, std::pair{50u, 6u}, std::pair{300u, 10u}}) {
        const CMatrix A = random_matrix(g, rows, cols);
        const SingularValueDecomposition S = tall_svd(A);
        CHECK(S.converged);
        Eigen::JacobiSVD<Eigen::MatrixXcd> ref(to_eigen(A));
        const auto& sv = ref.singularValues();  // descending
        for (std::size_t i = 0; i < cols; ++i) CHECK(S.values[i] == doctest::Approx(sv(cols - 1 - i)).epsilon(1e-12));
    }
}

TEST_CASE("tall SVD resolves tiny singular values the Gram route loses")
{
    // Columns 1 and 1 + eps e_2: sigma_min ~ eps/sqrt(2), far below sqrt(machine eps) * sigma_max.
    const double eps = 1e-11;
    CMatrix A(3, 2);
    A(0, 0) = 1;
    A(0, 1) = 1;
    A(1, 1) = eps;
    const SingularValueDecomposition S = tall_svd(A);
    Eigen::JacobiSVD<Eigen::MatrixXcd> ref(to_eigen(A));
    CHECK(S.values[0] == doctest::Approx(ref.singularValues()(1)).epsilon(1e-6));
}

TEST_CASE("Householder R reproduces the Gram matrix")
{
    std::mt19937_64 g(3);
    const CMatrix A = random_matrix(g, 30, 5);
    const CMatrix R = householder_r(A);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < i; ++j) CHECK(std::abs(R(i, j)) == 0);
    const CMatrix G1 = multiply(A.adjoint(), A), G2 = multiply(R.adjoint(), R);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) CHECK(std::abs(G1(i, j) - G2(i, j)) < 1e-10 * G1.frobenius());
}

TEST_CASE("Frobenius norm and adjoint")
{
    CMatrix A(2, 2);
    A(0, 0) = cplx(3, 4);
    A(1, 0) = 1;
    CHECK(A.frobenius() == doctest::Approx(std::sqrt(26.0)));
    const CMatrix B = A.adjoint();
    CHECK(B(0, 0) == cplx(3, -4));
    CHECK(B(0, 1) == cplx(1, 0));
}
}
