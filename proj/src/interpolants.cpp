#include "sigmalab/interpolants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sigmalab/bounds.hpp"
#include "sigmalab/error.hpp"

namespace sigmalab {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kRel = 1e-12;  // slack on comparisons between computed reals

cplx expi(double theta) { return {std::cos(theta), std::sin(theta)}; }

double dot(std::span<const double> a, std::span<const double> b)
{
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

LpNorm checked_hyperplane_norm(LpNorm p)
{
    require(p.is_inf() || p.p() == 2, "hyperplane interpolants are implemented for p = 2 and p = inf");
    return p;
}

Shape shape_of(LpNorm p) { return p.is_inf() ? Shape::Cube : Shape::Ball; }

// U must contain the origin and every other point must lie on one of the planes.
void require_covered(const PointSet& U, const LocalHyperplaneDecomposition& dec)
{
    bool has_origin = false;
    for (Index k = 0; k < U.size(); ++k) {
        if (LpNorm::inf()(U[k]) == 0) {
            has_origin = true;
            continue;
        }
        bool on = false;
        for (const auto& pl : dec.planes) {
            require(static_cast<int>(pl.plane.normal.size()) == U.dim(), "plane dimension mismatch");
            if (std::abs(dot(pl.plane.normal, U[k]) - pl.plane.offset) <= 1e-9) on = true;
        }
        require(on, "a point of U lies on none of the planes");
    }
    require(has_origin, "U must contain the origin");
}

// Default verification grid per dimension.
int grid_for(int d)
{
    switch (d) {
    case 2: return 512;
    case 3: return 64;
    default: return 16;
    }
}

}  // namespace

Vec dual_vector(std::span<const double> u, LpNorm p)
{
    const LpNorm pd = p.dual();
    const double un = pd(u);
    require(un > 0, "dual vector of the zero vector");
    Vec v(u.size(), 0.0);
    if (pd.is_inf()) {
        // p = 1: all mass on one largest coordinate
        std::size_t j = 0;
        for (std::size_t i = 1; i < u.size(); ++i)
            if (std::abs(u[i]) > std::abs(u[j])) j = i;
        v[j] = u[j] > 0 ? 1.0 : -1.0;
        return v;
    }
    const double e = pd.p() - 1;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0) continue;
        const double mag = e == 0 ? 1.0 : std::pow(std::abs(u[i]) / un, e);
        v[i] = u[i] > 0 ? mag : -mag;
    }
    return v;
}

QuantizedDirection quantize_direction(std::span<const double> u, double alpha, LpNorm p)
{
    const int d = static_cast<int>(u.size());
    const double un = p.dual()(u);
    const double cap = 1 / (4 * p.dim_factor(d));
    require(un > 0, "quantize_direction needs u != 0");
    require(un <= alpha * (1 + kRel), "quantize_direction needs |u|_{p'} <= alpha");
    require(alpha <= cap * (1 + kRel), "quantize_direction needs alpha <= 1/(4 d^{1/p})");

    const Vec v = dual_vector(u, p);
    QuantizedDirection out;
    out.q.resize(u.size());
    Vec qd(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        out.q[i] = static_cast<int>(std::trunc(v[i] / (2 * alpha)));
        qd[i] = out.q[i];
    }
    out.u_norm = un;
    out.q_norm = p(qd);
    out.q_dot_u = dot(qd, u);
    out.gap = std::abs(1.0 - expi(2 * pi * out.q_dot_u));
    const double t = std::abs(out.q_dot_u);
    out.norm_ok = out.q_norm <= (1 / (2 * alpha)) * (1 + kRel);
    out.dot_ok = t >= un / (4 * alpha) * (1 - kRel) && t <= 0.5 * (1 + kRel);
    out.gap_ok = out.gap >= std::sqrt(2.0) / alpha * un * (1 - kRel);
    if (!out.ok())
        throw Error(ErrorKind::numerical, "quantization certificate failed (norm " + std::to_string(out.norm_ok) +
                                              ", dot " + std::to_string(out.dot_ok) + ", gap " +
                                              std::to_string(out.gap_ok) + ")");
    return out;
}

PlaneWaveFactor::PlaneWaveFactor(Vec frequency_, Vec root_)
    : frequency(std::move(frequency_)), root(std::move(root_))
{
    require(frequency.size() == root.size(), "frequency and root dimensions differ");
    denominator = 1.0 - expi(2 * pi * dot(frequency, root));
    require(std::abs(denominator) > 1e-300, "plane-wave factor has a vanishing denominator", ErrorKind::numerical);
}

cplx PlaneWaveFactor::operator()(std::span<const double> y) const
{
    return (expi(2 * pi * dot(frequency, y)) - expi(2 * pi * dot(frequency, root))) / denominator;
}

bool PlaneWaveFactor::integer_frequency() const
{
    return std::all_of(frequency.begin(), frequency.end(), [](double f) { return f == std::round(f); });
}

cplx InterpolantProduct::operator()(std::span<const double> x) const
{
    Vec y(d);
    for (int l = 0; l < d; ++l) y[l] = x[l] - center[l];
    cplx v = 1.0;
    for (const auto& f : factors) v *= f(y);
    switch (kernel) {
    case KernelKind::None: break;
    case KernelKind::Dirichlet: v *= (*dirichlet)(y); break;
    case KernelKind::LowPass: v *= LowPassKernel{kernel_shape, kernel_radius, d}(y); break;
    }
    return v;
}

bool InterpolantProduct::integer_frequencies() const
{
    return std::all_of(factors.begin(), factors.end(), [](const auto& f) { return f.integer_frequency(); });
}

TrigPolynomial InterpolantProduct::to_polynomial() const
{
    require(integer_frequencies() && kernel != KernelKind::LowPass,
            "only integer-frequency products without a low-pass kernel are polynomials");
    TrigPolynomial P = TrigPolynomial::constant(d);
    std::vector<int> q(d), zero(d, 0);
    for (const auto& f : factors) {
        TrigPolynomial term(d);
        for (int l = 0; l < d; ++l) q[l] = static_cast<int>(std::lround(f.frequency[l]));
        term.add(q, 1.0 / f.denominator);
        term.add(zero, -expi(2 * pi * dot(f.frequency, f.root)) / f.denominator);
        P = P * term;
    }
    if (kernel == KernelKind::Dirichlet) P = P * *dirichlet;
    return P.translated(center);
}

BandlimitedFunction InterpolantProduct::to_bandlimited() const
{
    require(kernel == KernelKind::LowPass, "a bandlimited function needs a low-pass kernel");
    // expand prod_k (a_k e^{2 pi i xi_k.y} + b_k) in y = x - center
    std::vector<Vec> freqs{Vec(d, 0.0)};
    CVec coeffs{1.0};
    for (const auto& f : factors) {
        const cplx a = 1.0 / f.denominator;
        const cplx b = -expi(2 * pi * dot(f.frequency, f.root)) / f.denominator;
        const std::size_t n = freqs.size();
        for (std::size_t j = 0; j < n; ++j) {
            Vec xi = freqs[j];
            for (int l = 0; l < d; ++l) xi[l] += f.frequency[l];
            freqs.push_back(std::move(xi));
            coeffs.push_back(coeffs[j] * a);
            coeffs[j] *= b;
        }
    }
    BandlimitedFunction out{LowPassKernel{kernel_shape, kernel_radius, d}, center, PlaneWaveSum{d, {}, {}}};
    for (std::size_t j = 0; j < freqs.size(); ++j)
        out.waves.add(freqs[j], coeffs[j] * expi(-2 * pi * dot(freqs[j], center)));
    return out;
}

double InterpolantProduct::l2_norm() const
{
    if (kernel == KernelKind::LowPass) return to_bandlimited().l2_norm();
    return to_polynomial().l2_norm();
}

InterpolantProduct neighbor_interpolant_discrete(const PointSet& U, double n, Index r, LpNorm p)
{
    const int d = U.dim();
    const double dp = p.dim_factor(d);
    const LpNorm pd = p.dual();
    require(n > 0, "n must be positive");
    require(r >= U.size(), "r must be at least |U|");
    require(n >= 2 * dp * static_cast<double>(r) * (1 - kRel), "n must be at least 2 d^{1/p} r");

    bool has_origin = false;
    for (Index k = 0; k < U.size(); ++k) {
        const double un = pd(U[k]);
        if (un == 0) has_origin = true;
        require(un <= 1 / (4 * dp) * (1 + kRel), "every u needs |u|_{p'} <= 1/(4 d^{1/p})");
    }
    require(has_origin, "U must contain the origin");

    InterpolantProduct f;
    f.d = d;
    f.center = Vec(d, 0.0);
    f.certificate_p = p.p();
    const double rr = static_cast<double>(r);
    const double near = rr / (2 * n);

    std::vector<Vec> roots;
    for (Index k = 0; k < U.size(); ++k)
        if (pd(U[k]) > 0) roots.emplace_back(U[k].begin(), U[k].end());
    std::sort(roots.begin(), roots.end());

    double bound = std::sqrt(std::pow(2.0, static_cast<double>(roots.size())));
    double width = 0;
    for (const Vec& u : roots) {
        const double un = pd(u);
        const bool is_near = un <= near;
        const QuantizedDirection Q = quantize_direction(u, is_near ? near : un, p);
        if (is_near) bound *= near / un;
        Vec q(Q.q.begin(), Q.q.end());
        width += Q.q_norm;
        f.factors.emplace_back(std::move(q), u);
    }
    f.norm_bound = bound;
    f.bandwidth_certificate = width;
    return f;
}

InterpolantProduct neighbor_interpolant_continuous(const PointSet& U, const LocalHyperplaneDecomposition& decomposition,
                                                   double n, LpNorm p, ContinuousOptions options)
{
    checked_hyperplane_norm(p);
    require_covered(U, decomposition);
    require(n > 0, "n must be positive");
    const Index r = decomposition.r();
    const double R = static_cast<double>(std::max(r, options.r_global));
    const double limit = (R + 1) / (4 * n);

    InterpolantProduct f;
    f.certificate_p = p.p();
    f.kernel = KernelKind::LowPass;
    f.kernel_shape = shape_of(p);
    f.kernel_radius = n / (R + 1);
    const int d = U.dim();
    std::vector<std::pair<Vec, Vec>> parts;  // (root, frequency)
    double bound = 1;
    double width = f.kernel_radius;
    for (const auto& pl : decomposition.planes) {
        const Vec& theta = pl.plane.normal;
        const double eta = pl.plane.offset;
        require(eta > 0, "planes must not pass through the reference node");
        const bool capped = eta > limit * (1 + kRel);
        require(!capped || options.cap_frequencies, "hyperplane distance exceeds (r+1)/(4n)");
        const double scale = capped ? 1 / (4 * eta) : n / (R + 1);
        Vec root(theta.size()), xi(theta.size());
        for (std::size_t l = 0; l < theta.size(); ++l) {
            root[l] = eta * theta[l];
            xi[l] = scale * theta[l];
        }
        width += p(xi);
        bound *= std::sqrt(2.0) * std::max(1.0, limit / eta);
        parts.emplace_back(std::move(root), std::move(xi));
    }
    std::sort(parts.begin(), parts.end());
    for (auto& [root, xi] : parts) f.factors.emplace_back(std::move(xi), std::move(root));
    f.d = d;
    f.center = Vec(d, 0.0);
    f.norm_bound = bound / std::sqrt(volume(FrequencyDomain::continuous(f.kernel_shape, f.kernel_radius, d)));
    f.bandwidth_certificate = width;
    return f;
}

std::vector<int> integer_normal(const Hyperplane& plane, double max_norm)
{
    const Vec& nrm = plane.normal;
    std::size_t j = 0;
    for (std::size_t i = 1; i < nrm.size(); ++i)
        if (std::abs(nrm[i]) > std::abs(nrm[j])) j = i;
    const double lead = std::abs(nrm[j]);
    for (int k = 1; k <= static_cast<int>(std::floor(max_norm)); ++k) {
        std::vector<int> q(nrm.size());
        Vec qd(nrm.size());
        bool close = true;
        for (std::size_t i = 0; i < nrm.size(); ++i) {
            const double w = nrm[i] * k / lead;
            q[i] = static_cast<int>(std::lround(w));
            qd[i] = q[i];
            if (std::abs(w - q[i]) > 1e-9 * k) close = false;
        }
        const double qn = LpNorm::two()(qd);
        if (close && qn <= max_norm) return q;
        if (qn > max_norm) break;
    }
    return {};
}

InterpolantProduct neighbor_interpolant_integer_hyperplanes(const PointSet& U,
                                                            const LocalHyperplaneDecomposition& decomposition,
                                                            std::span<const std::vector<int>> normals, double n,
                                                            LpNorm p)
{
    checked_hyperplane_norm(p);
    require_covered(U, decomposition);
    require(n > 0, "n must be positive");
    const Index r = decomposition.r();
    require(normals.size() == r, "one integer normal per plane is required");
    const double rr = static_cast<double>(r);
    const double limit = (rr + 1) / (4 * n);
    const double qmax = n / (rr + 1);

    InterpolantProduct f;
    f.certificate_p = p.p();
    f.kernel = KernelKind::Dirichlet;
    f.kernel_shape = shape_of(p);
    f.kernel_radius = qmax;
    const int d = U.dim();
    std::vector<std::pair<Vec, Vec>> parts;
    double bound = 1;
    double width = qmax;
    for (Index k = 0; k < r; ++k) {
        const auto& pl = decomposition.planes[k].plane;
        const double eta = pl.offset;
        require(eta > 0, "planes must not pass through the reference node");
        require(eta <= limit * (1 + kRel), "hyperplane distance exceeds (r+1)/(4n)");
        require(normals[k].size() == pl.normal.size(), "integer normal has the wrong dimension");
        Vec q(normals[k].begin(), normals[k].end());
        const double qn = LpNorm::two()(q);
        require(qn > 0, "integer normal must be nonzero");
        require(qn <= qmax * (1 + kRel), "integer normal longer than n/(r+1)");
        const double cosang = std::abs(dot(q, pl.normal)) / qn;
        require(cosang >= 1 - 1e-12, "integer normal is not orthogonal to its plane");
        Vec root(q.size());
        for (std::size_t l = 0; l < q.size(); ++l) root[l] = eta * pl.normal[l];
        width += p(q);
        bound *= 1 / (4 * qn * eta);
        parts.emplace_back(std::move(root), std::move(q));
    }
    std::sort(parts.begin(), parts.end());
    for (auto& [root, q] : parts) f.factors.emplace_back(std::move(q), std::move(root));
    f.d = d;
    f.center = Vec(d, 0.0);
    f.dirichlet = std::make_shared<const TrigPolynomial>(TrigPolynomial::dirichlet_kernel(f.kernel_shape, qmax, d));
    const double count = static_cast<double>(lattice_count(FrequencyDomain::discrete(f.kernel_shape, qmax, d)));
    f.norm_bound = std::sqrt(std::pow(2.0, rr) / count) * bound;
    f.bandwidth_certificate = width;
    return f;
}

Localization localization_polynomials(const PointSet& X, double tau, double m, Shape shape, double param)
{
    const int d = X.dim();
    const PointSet Xt = X.with_space(Space::Torus);
    const LpNorm p = shape == Shape::Ball ? LpNorm::two() : LpNorm::inf();
    const LocalizationConstants K = localization_constants(shape, param, tau, d);

    Localization L;
    L.C = K.C;
    L.c = K.c;
    L.nu = local_sparsity(Xt, tau, p);
    const double nu = static_cast<double>(L.nu);
    require(K.C * nu / tau <= m / 2 * (1 + kRel), "density condition C nu/tau <= m/2 fails");

    const FrequencyDomain D = FrequencyDomain::discrete(shape, K.C / tau, d);
    const double limit = K.c > 0 ? std::pow(K.c, -nu) : std::numeric_limits<double>::infinity();
    const int G = grid_for(d);
    for (Index k = 0; k < Xt.size(); ++k) {
        IndexSet far;
        for (Index j = 0; j < Xt.size(); ++j)
            if (lp_distance(Xt[k], Xt[j], p, Space::Torus) > tau) far.push_back(j);
        TrigPolynomial g = TrigPolynomial::constant(d);
        Index parts = 0;
        if (!far.empty()) {
            for (const IndexSet& part : separated_partition(Xt, far, tau, p)) {
                IndexSet nodes{k};
                nodes.insert(nodes.end(), part.begin(), part.end());
                const PointSet sub = Xt.subset(nodes);
                CVec w(sub.size(), 0.0);
                w[0] = 1.0;
                g = g * min_norm_interpolant(D, sub, w);
                ++parts;
            }
        }
        const double sup = parts == 0 ? 1.0 : g.sup_norm_refined(G, 2 * G);
        L.g.push_back(std::move(g));
        L.sup_norm.push_back(sup);
        L.flagged.push_back(sup > limit + 1e-6);
        L.parts.push_back(parts);
    }
    return L;
}

namespace {

template <class Family, class Eval>
double duality_common(const Family& family, const PointSet& X, Eval eval, std::span<const double> norms)
{
    const Index s = X.size();
    require(family.size() == s, "the family needs one function per node");
    double fro2 = 0, worst = 0;
    for (Index k = 0; k < s; ++k)
        for (Index j = 0; j < s; ++j) {
            const double e = std::abs(eval(family[k], X[j]) - (j == k ? 1.0 : 0.0));
            worst = std::max(worst, e);
            fro2 += e * e;
        }
    require(worst < 1e-9, "family is not Lagrange: residual " + std::to_string(worst));
    const double top = *std::max_element(norms.begin(), norms.end());
    require(top > 0, "family has a zero member");
    return std::max(0.0, 1 - std::sqrt(fro2)) / (std::sqrt(static_cast<double>(s)) * top);
}

}  // namespace

double duality_lower_bound(std::span<const TrigPolynomial> family, const PointSet& X, const FrequencyDomain& target)
{
    require(target.discrete_mode() && target.rho == 1, "polynomial families certify the rho = 1 Fourier matrix");
    std::vector<double> norms;
    for (const auto& f : family) {
        require(f.support_radius(target.norm(), 0.0) <= target.m * (1 + kRel),
                "family member has frequencies outside the target domain");
        norms.push_back(f.l2_norm());
    }
    return duality_common(family, X, [](const TrigPolynomial& f, std::span<const double> x) { return f(x); },
                          norms);
}

double duality_lower_bound(std::span<const BandlimitedFunction> family, const PointSet& X,
                           const FrequencyDomain& target)
{
    require(!target.discrete_mode(), "bandlimited families certify the continuous operator");
    std::vector<double> norms;
    for (const auto& f : family) {
        require(f.support_radius(target.norm()) <= target.m * (1 + kRel) + 1e-12,
                "family member has frequencies outside the target domain");
        norms.push_back(f.l2_norm());
    }
    return duality_common(family, X,
                          [](const BandlimitedFunction& f, std::span<const double> x) { return f(x); }, norms);
}

std::vector<TrigPolynomial> min_norm_family(const FrequencyDomain& target, const PointSet& X)
{
    std::vector<TrigPolynomial> out;
    for (Index k = 0; k < X.size(); ++k) {
        CVec w(X.size(), 0.0);
        w[k] = 1.0;
        out.push_back(min_norm_interpolant(target, X, w));
    }
    return out;
}

namespace {

PointSet chart(const PointSet& Xt, Index k, double tau, LpNorm p)
{
    std::vector<Vec> U;
    for (Index j : neighborhood(Xt, k, tau, p)) U.push_back(displacement(Xt[k], Xt[j], Space::Torus));
    return PointSet(Xt.dim(), Space::Euclidean, U);
}

}  // namespace

std::vector<TrigPolynomial> sr_family(double m, const PointSet& X, double tau, Shape shape, double param)
{
    const int d = X.dim();
    const PointSet Xt = X.with_space(Space::Torus);
    const LpNorm p = shape == Shape::Ball ? LpNorm::two() : LpNorm::inf();
    const Localization L = localization_polynomials(Xt, tau, m, shape, param);
    const double nu = static_cast<double>(L.nu);
    const TrigPolynomial h = TrigPolynomial::dirichlet_kernel(shape, m / (2 * nu), d);

    std::vector<TrigPolynomial> out;
    for (Index k = 0; k < Xt.size(); ++k) {
        InterpolantProduct b = neighbor_interpolant_discrete(chart(Xt, k, tau, p), m / 2, L.nu, p);
        b.center.assign(Xt[k].begin(), Xt[k].end());
        out.push_back(h.translated(Xt[k]) * b.to_polynomial() * L.g[k]);
    }
    return out;
}

std::vector<BandlimitedFunction> hyper_family(double m, const PointSet& X, double tau, Shape shape, double param,
                                              Index r_max)
{
    const PointSet Xt = X.with_space(Space::Torus);
    const LpNorm p = shape == Shape::Ball ? LpNorm::two() : LpNorm::inf();
    for (Index k = 0; k < Xt.size(); ++k)
        for (Index j : neighborhood(Xt, k, tau, p)) {
            const Vec a = displacement(Xt[k], Xt[j], Space::Torus);
            const Vec b = displacement(Xt[k], Xt[j], Space::Euclidean);
            for (int l = 0; l < Xt.dim(); ++l)
                require(std::abs(a[l] - b[l]) <= 0.5, "a tau-neighborhood wraps around the torus");
        }
    const DecompositionSet D = hyperplane_decompositions(Xt, tau, p, r_max);
    if (!D.decompositions) throw Error(ErrorKind::no_decomposition, D.reason);
    Index R = 0;
    for (const auto& dec : *D.decompositions) R = std::max(R, dec.r());
    const Localization L = localization_polynomials(Xt, tau, m, shape, param);

    std::vector<BandlimitedFunction> out;
    for (Index k = 0; k < Xt.size(); ++k) {
        InterpolantProduct b = neighbor_interpolant_continuous(chart(Xt, k, tau, p), (*D.decompositions)[k], m / 2,
                                                               p, {R, /*cap_frequencies=*/true});
        b.center.assign(Xt[k].begin(), Xt[k].end());
        BandlimitedFunction f = b.to_bandlimited();
        f.waves = multiply(f.waves, L.g[k]);
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace sigmalab
