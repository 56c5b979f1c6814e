#include "sigmalab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sigmalab/error.hpp"

namespace sigmalab {

double CMatrix::frobenius() const
{
    double s = 0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

CMatrix CMatrix::adjoint() const
{
    CMatrix out(cols_, rows_);
    for (std::size_t j = 0; j < cols_; ++j)
        for (std::size_t i = 0; i < rows_; ++i) out(j, i) = std::conj((*this)(i, j));
    return out;
}

CMatrix multiply(const CMatrix& a, const CMatrix& b)
{
    require(a.cols() == b.rows(), "matrix shapes do not conform");
    CMatrix out(a.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx bkj = b(k, j);
            if (bkj == cplx{}) continue;
            for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) += a(i, k) * bkj;
        }
    return out;
}

namespace {

// Rotation that annihilates the (p,q) entry of the Hermitian 2x2 block
// [app apq; conj(apq) aqq]. U = [c, s; -s e^{-i phi}, c e^{-i phi}].
struct Rotation {
    double c, s;
    cplx phase;  // e^{i phi}
};

Rotation jacobi_rotation(double app, double aqq, cplx apq)
{
    const double a = std::abs(apq);
    const cplx phase = apq / a;
    const double theta = (aqq - app) / (2 * a);
    double t;
    if (std::abs(theta) > 1e150)
        t = 0.5 / theta;
    else
        t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
    const double c = 1 / std::sqrt(t * t + 1);
    return {c, t * c, phase};
}

void rotate_columns(CMatrix& M, std::size_t p, std::size_t q, const Rotation& R)
{
    const cplx e = std::conj(R.phase);
    auto cp = M.col(p);
    auto cq = M.col(q);
    for (std::size_t i = 0; i < M.rows(); ++i) {
        const cplx mp = cp[i], mq = cq[i];
        cp[i] = R.c * mp - R.s * e * mq;
        cq[i] = R.s * mp + R.c * e * mq;
    }
}

void rotate_rows(CMatrix& M, std::size_t p, std::size_t q, const Rotation& R)
{
    for (std::size_t j = 0; j < M.cols(); ++j) {
        const cplx mp = M(p, j), mq = M(q, j);
        M(p, j) = R.c * mp - R.s * R.phase * mq;
        M(q, j) = R.s * mp + R.c * R.phase * mq;
    }
}

CMatrix identity(std::size_t n)
{
    CMatrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
    return I;
}

template <class Values>
std::vector<std::size_t> ascending_order(const Values& v)
{
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    return order;
}

}  // namespace

EigenDecomposition jacobi_eigh(const CMatrix& A, double tol, int max_sweeps)
{
    require(A.rows() == A.cols(), "Jacobi needs a square matrix");
    const std::size_t n = A.rows();
    CMatrix M = A;
    CMatrix V = identity(n);
    const double scale = A.frobenius();
    EigenDecomposition out;

    auto off_norm = [&] {
        double s = 0;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i)
                if (i != j) s += std::norm(M(i, j));
        return std::sqrt(s);
    };

    out.off_norm = off_norm();
    while (out.sweeps < max_sweeps && out.off_norm > tol * scale) {
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(M(p, q)) == 0) continue;
                Rotation R = jacobi_rotation(M(p, p).real(), M(q, q).real(), M(p, q));
                rotate_columns(M, p, q, R);
                rotate_rows(M, p, q, R);
                rotate_columns(V, p, q, R);
                M(p, q) = M(q, p) = 0;
                M(p, p) = M(p, p).real();
                M(q, q) = M(q, q).real();
            }
        ++out.sweeps;
        out.off_norm = off_norm();
    }
    out.converged = out.off_norm <= tol * scale;

    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = M(i, i).real();
    auto order = ascending_order(diag);
    out.values.resize(n);
    out.vectors = CMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = diag[order[k]];
        std::copy(V.col(order[k]).begin(), V.col(order[k]).end(), out.vectors.col(k).begin());
    }
    return out;
}

CMatrix householder_r(const CMatrix& A)
{
    const std::size_t N = A.rows(), s = A.cols();
    CMatrix W = A;
    const std::size_t steps = std::min(N, s);
    CVec v;
    for (std::size_t j = 0; j < steps; ++j) {
        auto x = W.col(j).subspan(j);
        long double acc = 0;  // sums over up to millions of rows
        for (const auto& z : x) acc += std::norm(z);
        const double nx = static_cast<double>(std::sqrt(acc));
        if (nx == 0) continue;
        const cplx ph = std::abs(x[0]) > 0 ? x[0] / std::abs(x[0]) : cplx{1};
        const cplx alpha = -ph * nx;
        v.assign(x.begin(), x.end());
        v[0] -= alpha;
        long double vacc = 0;
        for (const auto& z : v) vacc += std::norm(z);
        const double vn2 = static_cast<double>(vacc);
        for (std::size_t k = j + 1; k < s; ++k) {
            auto y = W.col(k).subspan(j);
            std::complex<long double> wacc = 0;
            for (std::size_t i = 0; i < v.size(); ++i)
                wacc += std::complex<long double>(std::conj(v[i]) * y[i]);
            const cplx w = cplx(static_cast<double>(wacc.real()), static_cast<double>(wacc.imag())) * (2.0 / vn2);
            for (std::size_t i = 0; i < v.size(); ++i) y[i] -= v[i] * w;
        }
        x[0] = alpha;
        for (std::size_t i = 1; i < x.size(); ++i) x[i] = 0;
    }
    CMatrix R(s, s);
    for (std::size_t j = 0; j < s; ++j)
        for (std::size_t i = 0; i <= std::min(j, N - 1); ++i) R(i, j) = W(i, j);
    return R;
}

SingularValueDecomposition tall_svd(const CMatrix& A, int max_sweeps)
{
    const std::size_t s = A.cols();
    CMatrix W = householder_r(A);
    CMatrix V = identity(s);
    SingularValueDecomposition out;
    constexpr double tol = 1e-15;

    auto inner = [&](std::size_t p, std::size_t q) {
        cplx g = 0;
        auto a = W.col(p);
        auto b = W.col(q);
        for (std::size_t i = 0; i < s; ++i) g += std::conj(a[i]) * b[i];
        return g;
    };
    auto norm2 = [&](std::size_t p) {
        double t = 0;
        for (const auto& z : W.col(p)) t += std::norm(z);
        return t;
    };

    while (out.sweeps < max_sweeps) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < s; ++p)
            for (std::size_t q = p + 1; q < s; ++q) {
                const double a = norm2(p), b = norm2(q);
                const cplx g = inner(p, q);
                if (std::abs(g) <= tol * std::sqrt(a * b) || std::abs(g) == 0) continue;
                rotated = true;
                Rotation R = jacobi_rotation(a, b, g);
                rotate_columns(W, p, q, R);
                rotate_columns(V, p, q, R);
            }
        ++out.sweeps;
        if (!rotated) {
            out.converged = true;
            break;
        }
    }

    std::vector<double> sv(s);
    for (std::size_t j = 0; j < s; ++j) sv[j] = std::sqrt(norm2(j));
    auto order = ascending_order(sv);
    out.values.resize(s);
    out.right = CMatrix(s, s);
    for (std::size_t k = 0; k < s; ++k) {
        out.values[k] = sv[order[k]];
        std::copy(V.col(order[k]).begin(), V.col(order[k]).end(), out.right.col(k).begin());
    }
    return out;
}

}  // namespace sigmalab
