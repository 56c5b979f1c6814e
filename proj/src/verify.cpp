#include "sigmalab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "sigmalab/bounds.hpp"
#include "sigmalab/error.hpp"
#include "sigmalab/interpolants.hpp"
#include "sigmalab/operators.hpp"
#include "sigmalab/rng.hpp"

namespace sigmalab {

namespace {

using Clock = std::chrono::steady_clock;

// Collects failures; keeps the first message.
struct Tally {
    SuiteResult r;
    Clock::time_point start = Clock::now();

    explicit Tally(std::string name) { r.name = std::move(name); }
    void check(bool ok, const std::string& what)
    {
        if (ok) return;
        if (r.failures++ == 0) r.detail = what;
    }
    SuiteResult finish(const std::string& summary)
    {
        r.passed = r.failures == 0 && r.checked > 0;
        if (r.checked == 0 && r.detail.empty()) r.detail = "no instance was checked";
        if (r.failures == 0 && r.checked > 0) r.detail = summary;
        r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        return r;
    }
};

std::string fmt(const char* label, double a, double b)
{
    std::ostringstream os;
    os.precision(17);
    os << label << ": " << a << " vs " << b;
    return os.str();
}

int pick(std::mt19937_64& g, int lo, int hi) { return lo + static_cast<int>(uniform01(g) * (hi - lo + 1)); }

Shape random_shape(std::mt19937_64& g) { return uniform01(g) < 0.5 ? Shape::Ball : Shape::Cube; }

LpNorm random_p(std::mt19937_64& g) { return uniform01(g) < 0.5 ? LpNorm::two() : LpNorm::inf(); }

Vec random_point(std::mt19937_64& g, int d, double half = 0.5)
{
    Vec x(d);
    for (double& v : x) v = uniform(g, -half, half);
    return x;
}

// s distinct uniform points, pairwise torus distance above 1e-6.
std::vector<Vec> random_points(std::mt19937_64& g, int d, int s, double half = 0.5)
{
    std::vector<Vec> pts;
    while (static_cast<int>(pts.size()) < s) {
        Vec x = random_point(g, d, half);
        bool ok = true;
        for (const Vec& y : pts)
            if (lp_distance(x, y, LpNorm::inf(), Space::Torus) < 1e-6) ok = false;
        if (ok) pts.push_back(std::move(x));
    }
    return pts;
}

// Clusters of random size around uniform centers, kept away from the torus seam.
std::vector<Vec> random_clusters(std::mt19937_64& g, int d, int clusters, int max_size, double spread,
                                 bool equal_sizes)
{
    const int common = pick(g, 1, max_size);
    std::vector<Vec> pts;
    for (int c = 0; c < clusters; ++c) {
        const Vec center = random_point(g, d, 0.45);
        const int size = equal_sizes ? common : pick(g, 1, max_size);
        for (int j = 0; j < size; ++j) {
            Vec x = center;
            for (double& v : x) v += spread * uniform(g, -1, 1);
            pts.push_back(std::move(x));
        }
    }
    return pts;
}

bool distinct(const std::vector<Vec>& pts, double tol)
{
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (lp_distance(pts[i], pts[j], LpNorm::inf(), Space::Torus) < tol) return false;
    return true;
}

// |Omega cap (Z/rho)^d| / rho^d by brute force over the bounding box.
double brute_lattice_mass(Shape shape, double m, int d, int rho)
{
    const long K = static_cast<long>(std::floor(m * rho + 1e-9));
    std::vector<long> w(d, -K);
    std::uint64_t count = 0;
    const double r2 = m * m * (1 + 1e-12);
    while (true) {
        if (shape == Shape::Cube) {
            ++count;
        } else {
            double s = 0;
            for (long v : w) s += static_cast<double>(v) * v / (static_cast<double>(rho) * rho);
            if (s <= r2) ++count;
        }
        int l = 0;
        while (l < d && w[l] == K) w[l++] = -K;
        if (l == d) break;
        ++w[l];
    }
    return static_cast<double>(count) / std::pow(rho, d);
}

double continuous_volume(Shape shape, double m, int d)
{
    if (shape == Shape::Cube) return std::pow(2 * m, d);
    return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1) * std::pow(m, d);
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    if (a.size() != b.size()) return INFINITY;
    double e = 0;
    for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
    return e;
}

// Ascending eigenvalues of a Gram matrix.
std::vector<double> gram_eigenvalues(const FrequencyDomain& D, const PointSet& X)
{
    return jacobi_eigh(gram(D, X).entries).values;
}

}  // namespace

SuiteResult verify_singleton(std::size_t count, std::uint64_t seed)
{
    Tally t("singleton_spectrum");
    for (std::size_t i = 0; i < count; ++i) {
        auto g = trial_stream(seed, 100000 + i);
        const int d = pick(g, 2, 4);
        const Shape shape = random_shape(g);
        const bool discrete = uniform01(g) < 0.7;
        const int rho = discrete ? pick(g, 1, 3) : 1;
        const double limit = d == 4 ? 10.0 : 30.0;
        const double m = uniform(g, 0.5, limit / rho);
        const FrequencyDomain D =
            discrete ? FrequencyDomain::discrete(shape, m, d, rho) : FrequencyDomain::continuous(shape, m, d);
        const PointSet X(d, discrete ? Space::Torus : Space::Euclidean, {random_point(g, d)});
        const double expected = std::sqrt(discrete ? brute_lattice_mass(shape, m, d, rho) : continuous_volume(shape, m, d));
        try {
            const SpectrumReport S = measure_spectrum(D, X);
            ++t.r.checked;
            t.check(std::abs(S.sigma_min - expected) <= 1e-12 * expected, fmt("sigma_min vs sqrt|Omega|", S.sigma_min, expected));
            t.check(std::abs(S.sigma_max - expected) <= 1e-12 * expected, fmt("sigma_max vs sqrt|Omega|", S.sigma_max, expected));
        } catch (const Error& e) {
            ++t.r.checked;
            t.check(false, e.what());
        }
    }
    return t.finish(std::to_string(t.r.checked) + " singletons exact to 1e-12");
}

SuiteResult verify_gram_oracle(std::size_t count, std::uint64_t seed)
{
    Tally t("gram_oracle");
    double worst = 0;
    for (std::size_t i = 0; i < count; ++i) {
        auto g = trial_stream(seed, 200000 + i);
        const int d = pick(g, 2, 3);
        const Shape shape = random_shape(g);
        const int rho = pick(g, 1, 2);
        const double m = uniform(g, 1, 12);
        const int s = pick(g, 1, 8);
        const FrequencyDomain D = FrequencyDomain::discrete(shape, m, d, rho);
        const PointSet X(d, Space::Torus, random_points(g, d, s));
        const GramMatrix G = gram(D, X);
        const FourierMatrix Phi = build_matrix(D, X);
        const CMatrix direct = multiply(Phi.entries.adjoint(), Phi.entries);
        double err = 0;
        for (int a = 0; a < s; ++a)
            for (int b = 0; b < s; ++b) err = std::max(err, std::abs(G.entries(a, b) - direct(a, b)));
        worst = std::max(worst, err);
        ++t.r.checked;
        t.check(err <= 1e-9, fmt("entrywise Gram difference vs 1e-9", err, 1e-9));
    }
    std::ostringstream os;
    os << t.r.checked << " instances, worst entrywise difference " << worst;
    return t.finish(os.str());
}

SuiteResult verify_bound_soundness(std::size_t per_theorem, std::uint64_t seed)
{
    Tally t("bound_soundness");
    struct Case {
        Theorem theorem;
        OperatorKind op;
    };
    std::vector<Case> cases;
    for (Theorem th : {Theorem::WellSepCube, Theorem::WellSepBall, Theorem::SRCube, Theorem::SRBall,
                       Theorem::ClumpCube, Theorem::ClumpBall})
        for (OperatorKind op : {OperatorKind::Discrete, OperatorKind::Continuous}) cases.push_back({th, op});
    cases.push_back({Theorem::HyperCube, OperatorKind::Continuous});
    cases.push_back({Theorem::HyperBall, OperatorKind::Continuous});

    std::ostringstream summary;
    double worst_ratio = INFINITY;
    for (std::size_t c = 0; c < cases.size(); ++c) {
        const auto [th, op] = cases[c];
        const bool clump = th == Theorem::ClumpCube || th == Theorem::ClumpBall;
        std::size_t applicable = 0, attempts = 0;
        const std::size_t max_attempts = 40 * per_theorem;
        while (applicable < per_theorem && attempts < max_attempts) {
            auto g = trial_stream(seed, 300000 + 100000 * c + attempts++);
            const int d = uniform01(g) < 0.3 ? 3 : 2;
            const double m = d == 2 ? uniform(g, 10, 200) : uniform(g, 10, 50);
            const int clusters = pick(g, 1, 3);
            const double spread = std::pow(10.0, uniform(g, -3.5, -1.3));
            const std::vector<Vec> pts = random_clusters(g, d, clusters, 3, spread, clump);
            if (!distinct(pts, 1e-9)) continue;
            const PointSet X(d, Space::Torus, pts);
            BoundReport B;
            try {
                B = best_over_tau(th, m, X, default_parameter(th, d), op);
            } catch (const Error&) {
                continue;
            }
            if (!B.applicable) continue;
            ++applicable;
            ++t.r.checked;
            const Shape shape = theorem_shape(th);
            const bool discrete = op == OperatorKind::Discrete;
            const FrequencyDomain D =
                discrete ? FrequencyDomain::discrete(shape, m, d) : FrequencyDomain::continuous(shape, m, d);
            try {
                const SpectrumReport S = measure_spectrum(D, X.with_space(discrete ? Space::Torus : Space::Euclidean));
                worst_ratio = std::min(worst_ratio, S.sigma_min / B.lower);
                t.check(S.sigma_min >= B.lower - 1e-9,
                        to_string(th) + "/" + to_string(op) + " " + fmt("sigma_min vs lower bound", S.sigma_min, B.lower));
            } catch (const Error& e) {
                t.check(false, e.what());
            }
        }
        t.check(applicable >= per_theorem, to_string(th) + "/" + to_string(op) + ": only " +
                                               std::to_string(applicable) + " applicable instances");
        summary << to_string(th) << '/' << to_string(op) << '=' << applicable << ' ';
    }
    summary << "worst sigma_min/lower " << worst_ratio;
    return t.finish(summary.str());
}

SuiteResult verify_quantization(std::size_t count, std::uint64_t seed)
{
    Tally t("quantization");
    for (std::size_t i = 0; i < count; ++i) {
        auto g = trial_stream(seed, 400000 + i);
        const int d = pick(g, 2, 4);
        const LpNorm p = random_p(g);
        const LpNorm pd = p.dual();
        const double cap = 1 / (4 * p.dim_factor(d));
        const double alpha = cap * uniform(g, 1e-4, 1.0);
        Vec u(d);
        for (double& v : u) v = uniform(g, -1, 1);
        const double scale = alpha * uniform(g, 1e-3, 1.0) / pd(u);
        for (double& v : u) v *= scale;
        if (!(pd(u) > 0 && pd(u) <= alpha)) continue;
        ++t.r.checked;
        try {
            const QuantizedDirection Q = quantize_direction(u, alpha, p);
            Vec q(Q.q.begin(), Q.q.end());
            double dot = 0;
            for (int l = 0; l < d; ++l) dot += q[l] * u[l];
            const double un = pd(u);
            const double gap = std::abs(1.0 - std::exp(std::complex<double>(0, 2 * std::numbers::pi * dot)));
            const double slack = 1e-12;
            t.check(p(q) <= (1 / (2 * alpha)) * (1 + slack), fmt("|q|_p vs 1/(2 alpha)", p(q), 1 / (2 * alpha)));
            t.check(std::abs(dot) >= un / (4 * alpha) * (1 - slack), fmt("|q.u| vs |u|/(4 alpha)", std::abs(dot), un / (4 * alpha)));
            t.check(std::abs(dot) <= 0.5 * (1 + slack), fmt("|q.u| vs 1/2", std::abs(dot), 0.5));
            t.check(gap >= std::sqrt(2.0) / alpha * un * (1 - slack),
                    fmt("|1 - e(q.u)| vs sqrt2 |u|/alpha", gap, std::sqrt(2.0) / alpha * un));
        } catch (const Error& e) {
            t.check(false, e.what());
        }
    }
    return t.finish(std::to_string(t.r.checked) + " draws, all three inequalities hold");
}

namespace {

// Grid size for a sup-norm estimate: fine enough for the degree, bounded by memory.
int sup_grid(const TrigPolynomial& f, int d)
{
    const int degree = static_cast<int>(std::ceil(f.support_radius(LpNorm::inf(), 0.0)));
    const int cap = d == 2 ? 1024 : d == 3 ? 128 : 32;
    int G = 16;
    while (G < 4 * degree + 1 && G < cap) G *= 2;
    return G;
}

void check_interpolation(Tally& t, const InterpolantProduct& f, const PointSet& U, const std::string& label)
{
    for (Index k = 0; k < U.size(); ++k) {
        bool origin = true;
        for (double v : U[k]) origin = origin && v == 0;
        const cplx want = origin ? 1.0 : 0.0;
        const double res = std::abs(f(U[k]) - want);
        t.check(res < 1e-9, label + " " + fmt("interpolation residual", res, 1e-9));
    }
}

// Random chart set: the origin plus points at random l^{p'} radii below the cap.
std::vector<Vec> random_chart(std::mt19937_64& g, int d, int extra, LpNorm p, double rmin, double rmax)
{
    const LpNorm pd = p.dual();
    std::vector<Vec> U{Vec(d, 0.0)};
    while (static_cast<int>(U.size()) < extra + 1) {
        Vec u(d);
        for (double& v : u) v = uniform(g, -1, 1);
        const double target = std::exp(uniform(g, std::log(rmin), std::log(rmax)));
        const double n = pd(u);
        if (n == 0) continue;
        for (double& v : u) v *= target / n;
        if (distinct([&] { auto W = U; W.push_back(u); return W; }(), 1e-9)) U.push_back(std::move(u));
    }
    return U;
}

Vec unit_vector(std::mt19937_64& g, int d)
{
    Vec v(d);
    double n = 0;
    do {
        for (double& x : v) x = uniform(g, -1, 1);
        n = LpNorm::two()(v);
    } while (n < 1e-3);
    for (double& x : v) x /= n;
    return v;
}

// Points of the plane {x : theta.x = eta}, near its foot eta*theta.
Vec point_on_plane(std::mt19937_64& g, const Vec& theta, double eta, double reach)
{
    const int d = static_cast<int>(theta.size());
    Vec w(d);
    for (double& x : w) x = uniform(g, -reach, reach);
    double dot = 0;
    for (int l = 0; l < d; ++l) dot += w[l] * theta[l];
    Vec x(d);
    for (int l = 0; l < d; ++l) x[l] = eta * theta[l] + w[l] - dot * theta[l];
    return x;
}

struct RandomDecomposition {
    std::vector<Vec> U;
    LocalHyperplaneDecomposition dec;
};

RandomDecomposition make_decomposition(std::mt19937_64& g, const std::vector<Vec>& normals,
                                       const std::vector<double>& etas)
{
    RandomDecomposition R;
    const int d = static_cast<int>(normals.front().size());
    R.U.push_back(Vec(d, 0.0));
    R.dec.reference_index = 0;
    for (std::size_t k = 0; k < normals.size(); ++k) {
        LocalHyperplaneDecomposition::Plane P{Hyperplane(normals[k], etas[k]), {}};
        const int members = pick(g, 1, 2);
        for (int j = 0; j < members; ++j) {
            P.members.push_back(R.U.size());
            R.U.push_back(point_on_plane(g, P.plane.normal, P.plane.offset, 0.05));
        }
        R.dec.eta = std::min(R.dec.eta, etas[k]);
        R.dec.planes.push_back(std::move(P));
    }
    return R;
}

}  // namespace

SuiteResult verify_interpolants(std::size_t count, std::uint64_t seed)
{
    Tally t("interpolant_certificates");
    const double slack = 1e-12;
    std::size_t discrete = 0, continuous = 0, integer = 0;

    // Discrete construction: U in chart coordinates, |U| <= r, n >= 2 d^{1/p} r.
    for (std::size_t i = 0; i < count; ++i) {
        auto g = trial_stream(seed, 500000 + i);
        const int d = pick(g, 2, 4);
        const LpNorm p = random_p(g);
        const double dp = p.dim_factor(d);
        const int extra = pick(g, 0, d == 4 ? 2 : 3);
        const Index r = static_cast<Index>(extra + 1 + pick(g, 0, 2));
        const double n = 2 * dp * static_cast<double>(r) * uniform(g, 1, d == 4 ? 1.5 : 4);
        const double cap = 1 / (4 * dp);
        const double near = static_cast<double>(r) / (2 * n);
        const std::vector<Vec> pts = random_chart(g, d, extra, p, std::min(near / 20, cap / 2), cap);
        const PointSet U(d, Space::Euclidean, pts);
        try {
            const InterpolantProduct f = neighbor_interpolant_discrete(U, n, r, p);
            const TrigPolynomial F = f.to_polynomial();
            ++t.r.checked;
            ++discrete;
            check_interpolation(t, f, U, "discrete");
            const double sup = F.sup_norm(sup_grid(F, d));
            t.check(sup <= f.norm_bound * (1 + slack) + 1e-6, fmt("discrete grid sup vs bound", sup, f.norm_bound));
            const double support = F.support_radius(p, 1e-12);
            t.check(support <= f.bandwidth_certificate * (1 + slack),
                    fmt("discrete support vs certificate", support, f.bandwidth_certificate));
            t.check(f.bandwidth_certificate <= n * (1 + slack), fmt("discrete certificate vs n", f.bandwidth_certificate, n));
        } catch (const Error& e) {
            ++t.r.checked;
            t.check(false, std::string("discrete: ") + e.what());
        }
    }

    // Continuous construction on random planes at distance <= (r+1)/(4n).
    for (std::size_t i = 0; i < count; ++i) {
        auto g = trial_stream(seed, 600000 + i);
        const int d = pick(g, 2, 3);
        const LpNorm p = random_p(g);
        const int r = pick(g, 1, 3);
        const double n = uniform(g, 5, 60);
        std::vector<Vec> normals;
        std::vector<double> etas;
        for (int k = 0; k < r; ++k) {
            normals.push_back(unit_vector(g, d));
            etas.push_back((r + 1) / (4 * n) * uniform(g, 0.05, 1.0));
        }
        const RandomDecomposition R = make_decomposition(g, normals, etas);
        if (!distinct(R.U, 1e-9)) continue;
        const PointSet U(d, Space::Euclidean, R.U);
        try {
            const InterpolantProduct f = neighbor_interpolant_continuous(U, R.dec, n, p);
            ++t.r.checked;
            ++continuous;
            check_interpolation(t, f, U, "continuous");
            for (const auto& P : R.dec.planes) {
                const Vec y = point_on_plane(g, P.plane.normal, P.plane.offset, 0.3);
                const double res = std::abs(f(y));
                t.check(res < 1e-9, fmt("continuous value on a plane", res, 1e-9));
            }
            const BandlimitedFunction B = f.to_bandlimited();
            const double norm = B.l2_norm();
            t.check(norm <= f.norm_bound * (1 + slack) + 1e-6, fmt("continuous L2 norm vs bound", norm, f.norm_bound));
            const double support = B.support_radius(p);
            t.check(support <= f.bandwidth_certificate * (1 + slack),
                    fmt("continuous support vs certificate", support, f.bandwidth_certificate));
            t.check(f.bandwidth_certificate <= n * (1 + slack), fmt("continuous certificate vs n", f.bandwidth_certificate, n));
        } catch (const Error& e) {
            ++t.r.checked;
            t.check(false, std::string("continuous: ") + e.what());
        }
    }

    // Integer-normal construction: small integer normals, n large enough to hold them.
    for (std::size_t i = 0; i < count; ++i) {
        auto g = trial_stream(seed, 700000 + i);
        const int d = pick(g, 2, 3);
        const LpNorm p = random_p(g);
        const int r = pick(g, 1, d == 2 ? 3 : 2);
        std::vector<std::vector<int>> qs;
        std::vector<Vec> normals;
        double qmax = 0;
        for (int k = 0; k < r; ++k) {
            std::vector<int> q(d);
            Vec qd(d);
            do {
                for (int l = 0; l < d; ++l) q[l] = pick(g, -3, 3);
                for (int l = 0; l < d; ++l) qd[l] = q[l];
            } while (LpNorm::two()(qd) == 0);
            const double qn = LpNorm::two()(qd);
            qmax = std::max(qmax, qn);
            for (double& v : qd) v /= qn;
            qs.push_back(q);
            normals.push_back(qd);
        }
        const double n = qmax * (r + 1) * uniform(g, 1, d == 2 ? 2.5 : 1.3);
        std::vector<double> etas;
        for (int k = 0; k < r; ++k) etas.push_back((r + 1) / (4 * n) * uniform(g, 0.05, 1.0));
        const RandomDecomposition R = make_decomposition(g, normals, etas);
        if (!distinct(R.U, 1e-9)) continue;
        const PointSet U(d, Space::Euclidean, R.U);
        try {
            const InterpolantProduct f = neighbor_interpolant_integer_hyperplanes(U, R.dec, qs, n, p);
            const TrigPolynomial F = f.to_polynomial();
            ++t.r.checked;
            ++integer;
            check_interpolation(t, f, U, "integer");
            const double norm = F.l2_norm();
            t.check(norm <= f.norm_bound * (1 + slack) + 1e-6, fmt("integer L2 norm vs bound", norm, f.norm_bound));
            const double support = F.support_radius(p, 1e-12);
            t.check(support <= f.bandwidth_certificate * (1 + slack),
                    fmt("integer support vs certificate", support, f.bandwidth_certificate));
            t.check(f.bandwidth_certificate <= n * (1 + slack), fmt("integer certificate vs n", f.bandwidth_certificate, n));
        } catch (const Error& e) {
            ++t.r.checked;
            t.check(false, std::string("integer: ") + e.what());
        }
    }
    const bool enough = discrete >= count && continuous >= count * 9 / 10 && integer >= count * 9 / 10;
    t.check(enough, "too few valid draws: " + std::to_string(discrete) + "/" + std::to_string(continuous) + "/" +
                        std::to_string(integer));
    return t.finish("discrete " + std::to_string(discrete) + ", continuous " + std::to_string(continuous) +
                    ", integer " + std::to_string(integer) + " interpolants certified");
}

SuiteResult verify_duality(std::size_t count, std::uint64_t seed)
{
    Tally t("duality_consistency");
    std::size_t families[3] = {0, 0, 0};
    double worst_ratio = INFINITY;
    auto record = [&](double bound, double sigma, const std::string& label) {
        ++t.r.checked;
        worst_ratio = std::min(worst_ratio, sigma / bound);
        t.check(bound <= sigma + 1e-9, label + " " + fmt("duality bound vs sigma_min", bound, sigma));
    };

    // Min-norm interpolants on the discrete domain.
    for (std::size_t i = 0; i < count; ++i) {
        auto g = trial_stream(seed, 800000 + i);
        const int d = pick(g, 2, 3);
        const Shape shape = random_shape(g);
        const double m = uniform(g, 2, d == 2 ? 20 : 8);
        const int s = pick(g, 1, 6);
        const FrequencyDomain D = FrequencyDomain::discrete(shape, m, d);
        const PointSet X(d, Space::Torus, random_points(g, d, s));
        try {
            const auto family = min_norm_family(D, X);
            const double bound = duality_lower_bound(family, X, D);
            ++families[0];
            record(bound, measure_spectrum(D, X).sigma_min, "min-norm");
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::rank_deficient) {
                ++t.r.checked;
                t.check(false, std::string("min-norm: ") + e.what());
            }
        }
    }

    // Super-resolution families; beta = 0.75 keeps m moderate.
    for (std::size_t i = 0, attempt = 0; families[1] < count && attempt < 20 * count; ++attempt) {
        auto g = trial_stream(seed, 900000 + attempt);
        const int d = 2;
        const Shape shape = random_shape(g);
        const double param = shape == Shape::Cube ? 0.75 : 1.0;
        const int clusters = pick(g, 1, 2);
        const std::vector<Vec> pts = random_clusters(g, d, clusters, 2, std::pow(10.0, uniform(g, -3, -1.7)), false);
        if (!distinct(pts, 1e-9)) continue;
        const PointSet X(d, Space::Torus, pts);
        const LpNorm p = shape == Shape::Cube ? LpNorm::one() : LpNorm::two();
        const double cap = shape == Shape::Cube ? 1 / (4.0 * d) : 1 / (4 * std::sqrt(2.0));
        const double tau = cap * uniform(g, 0.3, 1.0);
        const double C = localization_constants(shape, param, tau, d).C;
        const double nu = static_cast<double>(local_sparsity(X, tau, p));
        const double m = std::ceil(2 * C * nu / tau * uniform(g, 1.0, 1.3));
        try {
            const auto family = sr_family(m, X, tau, shape, param);
            const FrequencyDomain D = FrequencyDomain::discrete(shape, m, d);
            const double bound = duality_lower_bound(family, X, D);
            ++families[1];
            ++i;
            record(bound, measure_spectrum(D, X).sigma_min, "sr");
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::numerical) {
                ++t.r.checked;
                t.check(false, std::string("sr: ") + e.what());
            }
        }
    }

    // Hyperplane families, continuous operator, d = 2.
    for (std::size_t attempt = 0; families[2] < count && attempt < 20 * count; ++attempt) {
        auto g = trial_stream(seed, 1000000 + attempt);
        const int d = 2;
        const Shape shape = random_shape(g);
        const double param = shape == Shape::Cube ? 0.75 : 1.0;
        const int clusters = pick(g, 1, 2);
        const std::vector<Vec> pts = random_clusters(g, d, clusters, 3, std::pow(10.0, uniform(g, -3, -1.7)), false);
        if (!distinct(pts, 1e-9)) continue;
        const PointSet X(d, Space::Torus, pts);
        const LpNorm p = shape == Shape::Cube ? LpNorm::inf() : LpNorm::two();
        const double cap = shape == Shape::Cube ? 1 / (4.0 * d) : 1 / (4 * std::sqrt(2.0));
        const double tau = cap * uniform(g, 0.3, 1.0);
        const double C = localization_constants(shape, param, tau, d).C;
        const double nu = static_cast<double>(local_sparsity(X, tau, p));
        const double m = std::ceil(2 * C * nu / tau * uniform(g, 1.0, 1.3));
        try {
            const auto family = hyper_family(m, X, tau, shape, param);
            const FrequencyDomain D = FrequencyDomain::continuous(shape, m, d);
            const double bound = duality_lower_bound(family, X, D);
            ++families[2];
            record(bound, measure_spectrum(D, X.with_space(Space::Euclidean)).sigma_min, "hyper");
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::numerical) {
                ++t.r.checked;
                t.check(false, std::string("hyper: ") + e.what());
            }
        }
    }
    t.check(families[1] >= count && families[2] >= count,
            "too few constructible families: sr " + std::to_string(families[1]) + ", hyper " +
                std::to_string(families[2]));
    std::ostringstream os;
    os << "families min-norm " << families[0] << ", sr " << families[1] << ", hyper " << families[2]
       << "; worst sigma_min/bound " << worst_ratio;
    return t.finish(os.str());
}

SuiteResult verify_structural(std::size_t count, std::uint64_t seed)
{
    Tally t("structural_invariants");
    const double pi = std::numbers::pi;
    for (std::size_t i = 0; i < count; ++i) {
        auto g = trial_stream(seed, 1100000 + i);
        const int d = pick(g, 2, 3);
        const int s = pick(g, 1, 6);
        const PointSet X(d, Space::Torus, random_points(g, d, s, 0.4));
        ++t.r.checked;
        try {
            // Ball inside cube: the ball matrix is a row subset of the cube matrix.
            const double m = uniform(g, 1, d == 2 ? 12 : 5);
            for (bool discrete : {true, false}) {
                const auto dom = [&](Shape sh) {
                    return discrete ? FrequencyDomain::discrete(sh, m, d) : FrequencyDomain::continuous(sh, m, d);
                };
                const PointSet Y = X.with_space(discrete ? Space::Torus : Space::Euclidean);
                const double ball = measure_spectrum(dom(Shape::Ball), Y).sigma_min;
                const double cube = measure_spectrum(dom(Shape::Cube), Y).sigma_min;
                t.check(ball <= cube + 1e-9, fmt("sigma_min ball vs cube", ball, cube));
            }

            // Translation of all nodes (wrapped on the torus).
            const Shape shape = random_shape(g);
            const FrequencyDomain D = FrequencyDomain::discrete(shape, m, d);
            const Vec shift = random_point(g, d);
            std::vector<Vec> moved = X.points();
            for (Vec& x : moved)
                for (int l = 0; l < d; ++l) x[l] = wrap(x[l] + shift[l]);
            const auto sv = measure_spectrum(D, X).singular_values;
            const auto sv_moved = measure_spectrum(D, PointSet(d, Space::Torus, moved)).singular_values;
            const double scale = std::max(1.0, sv.empty() ? 1.0 : sv.back());
            const double e_translate = max_abs_diff(sv, sv_moved);
            t.check(e_translate <= 1e-9 * scale, fmt("translation change in singular values", e_translate, 1e-9 * scale));

            // Frequency shift: rows omega + omega0, built directly.
            const FourierMatrix Phi = build_matrix(D, X);
            std::vector<int> w0(d);
            for (int& v : w0) v = pick(g, -5, 5);
            CMatrix shifted(Phi.entries.rows(), Phi.entries.cols());
            for (std::size_t row = 0; row < Phi.rows.size(); ++row)
                for (Index k = 0; k < X.size(); ++k) {
                    double phase = 0;
                    for (int l = 0; l < d; ++l) phase += (Phi.rows.omega(row, l) + w0[l]) * X[k][l];
                    shifted(row, k) = std::exp(cplx(0, -2 * pi * phase));
                }
            const auto sv_shift = tall_svd(shifted).values;
            const double e_shift = max_abs_diff(sv, sv_shift);
            t.check(e_shift <= 1e-9 * scale, fmt("frequency-shift change in singular values", e_shift, 1e-9 * scale));

            // Oversampling, cube with integer radius. Ball lattice counts fluctuate with rho
            // (d = 3, m = 1, one node: 2.81, 0.064, 0.173), so balls are not checked here.
            const double mo = pick(g, 1, d == 2 ? 8 : 3);
            const PointSet Z(d, Space::Euclidean, random_points(g, d, s, 0.4));
            const auto exact = gram_eigenvalues(FrequencyDomain::continuous(Shape::Cube, mo, d), Z);
            std::vector<double> errs;
            for (int rho : {1, 2, 4, 8})
                errs.push_back(
                    max_abs_diff(gram_eigenvalues(FrequencyDomain::discrete(Shape::Cube, mo, d, rho), Z), exact));
            std::ostringstream os;
            for (double e : errs) os << ' ' << e;
            const bool strict = errs[1] < errs[0] && errs[2] < errs[1] && errs[3] < errs[2];
            t.check(strict, "oversampling errors not strictly decreasing:" + os.str());
        } catch (const Error& e) {
            t.check(false, e.what());
        }
    }
    return t.finish(std::to_string(t.r.checked) + " instances: monotone, invariant, convergent");
}

VerifyCounts VerifyCounts::scaled(double f) const
{
    auto sc = [f](std::size_t n) { return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(n * f))); };
    return {sc(singleton), sc(gram), sc(soundness), sc(quantization), sc(interpolants), sc(duality), sc(structural)};
}

std::vector<SuiteResult> verify_all(const VerifyCounts& c, std::uint64_t seed)
{
    return {verify_singleton(c.singleton, seed),       verify_gram_oracle(c.gram, seed),
            verify_bound_soundness(c.soundness, seed), verify_quantization(c.quantization, seed),
            verify_interpolants(c.interpolants, seed), verify_duality(c.duality, seed),
            verify_structural(c.structural, seed)};
}

}  // namespace sigmalab
