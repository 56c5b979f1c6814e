#include "sigmalab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "sigmalab/error.hpp"
#include "sigmalab/specfun.hpp"

namespace sigmalab {

using std::numbers::pi;

namespace {

// Materialize Phi only up to this many entries (16 bytes each).
constexpr double kDirectEntryLimit = 4e6;

cplx expi(double theta)
{
    return {std::cos(theta), std::sin(theta)};
}

// table[l][K + i] = e^{sign 2 pi i (i/rho) t_l}
std::vector<CVec> phase_tables(std::span<const double> t, long K, int rho, double sign)
{
    std::vector<CVec> tab(t.size(), CVec(2 * K + 1));
    for (std::size_t l = 0; l < t.size(); ++l)
        for (long i = -K; i <= K; ++i) tab[l][i + K] = expi(sign * 2 * pi * (static_cast<double>(i) / rho) * t[l]);
    return tab;
}

}  // namespace

FourierMatrix build_matrix(const FrequencyDomain& D, const PointSet& X, std::uint64_t budget)
{
    require(D.discrete_mode(), "continuous operators have no finite matrix; use gram");
    require(D.d == X.dim(), "domain and point-set dimensions differ");
    FourierMatrix Phi{D, enumerate_lattice(D, budget), {}};
    const std::size_t N = Phi.rows.size(), s = X.size();
    Phi.entries = CMatrix(N, s);
    const long K = lattice_radius(D.m, D.rho);
    const double norm = std::pow(static_cast<double>(D.rho), -D.d / 2.0);
    for (std::size_t k = 0; k < s; ++k) {
        auto tab = phase_tables(X[k], K, D.rho, -1.0);
        auto col = Phi.entries.col(k);
        for (std::size_t i = 0; i < N; ++i) {
            cplx v = norm;
            for (int l = 0; l < D.d; ++l) v *= tab[l][Phi.rows.index[i * D.d + l] + K];
            col[i] = v;
        }
    }
    return Phi;
}

GramMatrix gram(const FrequencyDomain& D, const PointSet& X)
{
    require(D.d == X.dim(), "domain and point-set dimensions differ");
    const std::size_t s = X.size();
    const int d = D.d;
    GramMatrix G{D, CMatrix(s, s), GramProvenance::ContinuousClosedForm};
    const double diag = gram_diagonal(D);
    Vec t(d);

    Lattice L;
    long K = 0;
    double rho_d = 1;
    if (D.discrete_mode()) {
        K = lattice_radius(D.m, D.rho);
        rho_d = std::pow(static_cast<double>(D.rho), d);
        if (D.shape == Shape::Cube) {
            G.provenance = GramProvenance::DiscreteClosedForm;
        } else {
            G.provenance = GramProvenance::DiscreteDirect;
            L = enumerate_lattice(D);
        }
    }

    for (std::size_t j = 0; j < s; ++j) {
        G.entries(j, j) = diag;
        for (std::size_t k = j + 1; k < s; ++k) {
            for (int l = 0; l < d; ++l) t[l] = X[j][l] - X[k][l];
            cplx v;
            if (D.discrete_mode() && D.shape == Shape::Cube) {
                double p = 1;
                for (int l = 0; l < d; ++l) p *= dirichlet(K, t[l] / D.rho);
                v = p / rho_d;
            } else if (D.discrete_mode()) {
                auto tab = phase_tables(t, K, D.rho, 1.0);
                cplx sum = 0;
                for (std::size_t i = 0; i < L.size(); ++i) {
                    cplx e = tab[0][L.index[i * d] + K];
                    for (int l = 1; l < d; ++l) e *= tab[l][L.index[i * d + l] + K];
                    sum += e;
                }
                v = sum / rho_d;
            } else if (D.shape == Shape::Cube) {
                double p = 1;
                for (int l = 0; l < d; ++l) p *= 2 * D.m * sinc(2 * D.m * t[l]);
                v = p;
            } else {
                v = ball_indicator_ft(D.m, t);
            }
            G.entries(j, k) = v;
            G.entries(k, j) = std::conj(v);
        }
    }
    return G;
}

SpectrumReport sigma_extremes(const GramMatrix& G)
{
    const std::size_t s = G.entries.rows();
    require(s >= 1, "empty Gram matrix");
    EigenDecomposition eig = jacobi_eigh(G.entries);
    double trace = 0;
    for (std::size_t i = 0; i < s; ++i) trace += G.entries(i, i).real();
    const double lmin = eig.values.front(), lmax = eig.values.back();
    require(lmin >= -1e-10 * trace, "Gram matrix has a negative eigenvalue beyond tolerance", ErrorKind::numerical);

    SpectrumReport R;
    R.route = SpectrumRoute::Gram;
    R.sigma_min = std::sqrt(std::max(lmin, 0.0));
    R.sigma_max = std::sqrt(std::max(lmax, 0.0));
    R.floor_hit = lmin <= kGramFloor * lmax;
    R.iterations = eig.sweeps;
    R.converged = eig.converged;
    R.residual = eig.off_norm;
    R.min_vector.assign(eig.vectors.col(0).begin(), eig.vectors.col(0).end());
    for (double l : eig.values) R.singular_values.push_back(std::sqrt(std::max(l, 0.0)));
    return R;
}

SpectrumReport sigma_extremes(const FourierMatrix& Phi)
{
    SingularValueDecomposition svd = tall_svd(Phi.entries);
    SpectrumReport R;
    R.route = SpectrumRoute::Direct;
    R.sigma_min = svd.values.front();
    R.sigma_max = svd.values.back();
    R.floor_hit = R.sigma_min < kDirectFloor * R.sigma_max;
    R.iterations = svd.sweeps;
    R.converged = svd.converged;
    R.min_vector.assign(svd.right.col(0).begin(), svd.right.col(0).end());
    R.singular_values = svd.values;
    return R;
}

SpectrumReport measure_spectrum(const FrequencyDomain& D, const PointSet& X)
{
    if (D.discrete_mode()) {
        const double N = std::pow(2.0 * lattice_radius(D.m, D.rho) + 1.0, D.d);
        if (N * static_cast<double>(X.size()) <= kDirectEntryLimit) return sigma_extremes(build_matrix(D, X));
    }
    return sigma_extremes(gram(D, X));
}

SandwichCheck sigma_sandwich_check(const FrequencyDomain& D, std::size_t s, const SpectrumReport& R)
{
    const double diag = gram_diagonal(D);
    const double lo = std::sqrt(diag), hi = std::sqrt(static_cast<double>(s) * diag);
    SandwichCheck c;
    c.lower_margin = R.sigma_max - lo;
    c.upper_margin = hi - R.sigma_max;
    c.ok = R.sigma_max >= lo * (1 - 1e-9) && R.sigma_max <= hi * (1 + 1e-9);
    return c;
}

TrigPolynomial min_norm_interpolant(const FrequencyDomain& D, const PointSet& X, std::span<const cplx> w)
{
    require(D.discrete_mode() && D.rho == 1, "minimum-norm interpolation needs a discrete domain with rho = 1");
    require(w.size() == X.size(), "data vector length differs from node count");
    const std::size_t s = X.size();
    FourierMatrix Phi = build_matrix(D, X);
    GramMatrix G = gram(D, X);
    EigenDecomposition eig = jacobi_eigh(G.entries);
    const double lmin = eig.values.front(), lmax = eig.values.back();
    if (!(lmin > 1e-24 * lmax))
        throw Error(ErrorKind::rank_deficient,
                    "Fourier matrix is numerically rank deficient, sigma_min ~ " +
                        std::to_string(std::sqrt(std::max(lmin, 0.0))));

    auto solve = [&](const CVec& rhs) {
        CVec y(s, 0.0), c(s, 0.0);
        for (std::size_t i = 0; i < s; ++i) {
            cplx acc = 0;
            for (std::size_t k = 0; k < s; ++k) acc += std::conj(eig.vectors(k, i)) * rhs[k];
            y[i] = acc / eig.values[i];
        }
        for (std::size_t k = 0; k < s; ++k)
            for (std::size_t i = 0; i < s; ++i) c[k] += eig.vectors(k, i) * y[i];
        return c;
    };
    CVec c = solve(CVec(w.begin(), w.end()));
    // one step of iterative refinement on G c = w
    CVec r(w.begin(), w.end());
    for (std::size_t j = 0; j < s; ++j)
        for (std::size_t k = 0; k < s; ++k) r[j] -= G.entries(j, k) * c[k];
    CVec dc = solve(r);
    for (std::size_t k = 0; k < s; ++k) c[k] += dc[k];

    TrigPolynomial F(D.d);
    std::vector<int> freq(D.d);
    for (std::size_t i = 0; i < Phi.rows.size(); ++i) {
        cplx v = 0;
        for (std::size_t k = 0; k < s; ++k) v += Phi.entries(i, k) * c[k];
        for (int l = 0; l < D.d; ++l) freq[l] = Phi.rows.index[i * D.d + l];
        F.add(freq, v);
    }
    return F;
}

void write_matrix_csv(const CMatrix& M, std::ostream& os)
{
    os.precision(17);
    for (std::size_t i = 0; i < M.rows(); ++i) {
        for (std::size_t j = 0; j < M.cols(); ++j) {
            if (j) os << ',';
            os << M(i, j).real() << ',' << M(i, j).imag();
        }
        os << '\n';
    }
}

}  // namespace sigmalab
