#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace sigmalab {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

/// Dense complex matrix, column-major.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    cplx& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }
    std::span<cplx> col(std::size_t j) { return {data_.data() + j * rows_, rows_}; }
    std::span<const cplx> col(std::size_t j) const { return {data_.data() + j * rows_, rows_}; }

    double frobenius() const;
    CMatrix adjoint() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> data_;
};

CMatrix multiply(const CMatrix& a, const CMatrix& b);

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // columns match values
    int sweeps = 0;
    bool converged = false;
    double off_norm = 0;         // off-diagonal Frobenius norm at exit
};

/// Cyclic Jacobi for a Hermitian matrix. Stops when the off-diagonal Frobenius
/// norm drops below tol * ||A||_F or after max_sweeps.
EigenDecomposition jacobi_eigh(const CMatrix& A, double tol = 1e-14, int max_sweeps = 64);

struct SingularValueDecomposition {
    std::vector<double> values;  // ascending
    CMatrix right;               // right singular vectors, columns match values
    int sweeps = 0;
    bool converged = false;
};

/// Householder QR followed by one-sided Jacobi on the triangular factor.
SingularValueDecomposition tall_svd(const CMatrix& A, int max_sweeps = 64);

/// Upper triangular R (cols x cols) of A = QR.
CMatrix householder_r(const CMatrix& A);

}  // namespace sigmalab
