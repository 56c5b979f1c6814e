#include "sigmalab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sigmalab/error.hpp"
#include "sigmalab/specfun.hpp"

namespace sigmalab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const double kBetaMin = 1 / (2 * std::numbers::ln2);

void check(BoundReport& R, std::string name, double actual, const char* rel, double required)
{
    const std::string r = rel;
    bool pass = false;
    if (r == "<=")
        pass = actual <= required;
    else if (r == ">=")
        pass = actual >= required;
    else if (r == "<")
        pass = actual < required;
    else if (r == ">")
        pass = actual > required;
    else
        pass = actual == required;
    R.hypotheses.push_back({std::move(name), r, required, actual, pass});
}

bool all_pass(const BoundReport& R)
{
    return std::all_of(R.hypotheses.begin(), R.hypotheses.end(), [](const Hypothesis& h) { return h.pass; });
}

void finalize(BoundReport& R)
{
    R.applicable = all_pass(R);
    if (!R.applicable) {
        R.lower = 0;
        R.upper.reset();
    }
}

// |Omega_radius| or |Omega_radius|_* depending on the operator.
double domain_size(Shape shape, double radius, int d, OperatorKind op)
{
    if (op == OperatorKind::Discrete)
        return static_cast<double>(lattice_count(FrequencyDomain::discrete(shape, radius, d)));
    return volume(FrequencyDomain::continuous(shape, radius, d));
}

double separation_or_inf(const PointSet& X, LpNorm p)
{
    return X.size() >= 2 ? min_separation(X, p) : kInf;
}

double cube_factor(double beta)
{
    return std::max(0.0, 1 - 0.5 * std::exp(1 / (2 * beta)));
}

void require_common(double m, const PointSet& X)
{
    require(X.dim() >= 2, "the theorems need d >= 2");
    require(m > 0 && std::isfinite(m), "m must be positive");
}

void require_beta(double beta)
{
    require(beta >= kBetaMin, "beta must be at least 1/(2 log 2)");
}

double min_product(const PointSet& X, double scale, LpNorm q)
{
    double best = 1;
    for (Index k = 0; k < X.size(); ++k) best = std::min(best, multiscale_product(X, k, scale, q));
    return best;
}

// Hypotheses shared by the super-resolution and hyperplane theorems.
struct LocalSetup {
    Index nu = 0;
    double C = 0;
};

LocalSetup local_hypotheses(BoundReport& R, double m, const PointSet& Xt, double tau, Shape shape, double param)
{
    const int d = Xt.dim();
    const double s = static_cast<double>(Xt.size());
    const double rd = std::sqrt(static_cast<double>(d));
    const LpNorm p = shape == Shape::Cube ? LpNorm::inf() : LpNorm::two();
    LocalSetup L;
    L.C = shape == Shape::Cube ? param * d : param;
    L.nu = local_sparsity(Xt, tau, p);
    if (shape == Shape::Cube) {
        check(R, "m >= 4s", m, ">=", 4 * s);
        check(R, "tau > 0", tau, ">", 0);
        check(R, "tau <= 1/(4d)", tau, "<=", 1 / (4.0 * d));
        check(R, "2 beta d nu / tau <= m", tau > 0 ? 2 * L.C * L.nu / tau : kInf, "<=", m);
    } else {
        check(R, "m >= 4s sqrt(d)", m, ">=", 4 * s * rd);
        check(R, "tau > 0", tau, ">", 0);
        check(R, "tau <= 1/(4 sqrt(d))", tau, "<=", 1 / (4 * rd));
        check(R, "2 alpha nu / tau <= m", tau > 0 ? 2 * L.C * L.nu / tau : kInf, "<=", m);
    }
    R.constants["nu"] = static_cast<double>(L.nu);
    R.constants["tau"] = tau;
    R.constants[shape == Shape::Cube ? "beta" : "alpha"] = param;
    return L;
}

}  // namespace

std::string to_string(Theorem t)
{
    switch (t) {
    case Theorem::WellSepCube: return "wellsep_cube";
    case Theorem::WellSepBall: return "wellsep_ball";
    case Theorem::SRCube: return "sr_cube";
    case Theorem::SRBall: return "sr_ball";
    case Theorem::ClumpCube: return "clump_cube";
    case Theorem::ClumpBall: return "clump_ball";
    case Theorem::HyperCube: return "hyper_cube";
    case Theorem::HyperBall: return "hyper_ball";
    }
    return "?";
}

std::optional<Theorem> theorem_from_string(const std::string& name)
{
    for (Theorem t : {Theorem::WellSepCube, Theorem::WellSepBall, Theorem::SRCube, Theorem::SRBall,
                      Theorem::ClumpCube, Theorem::ClumpBall, Theorem::HyperCube, Theorem::HyperBall})
        if (to_string(t) == name) return t;
    return std::nullopt;
}

std::string to_string(OperatorKind op)
{
    return op == OperatorKind::Discrete ? "discrete" : "continuous";
}

Shape theorem_shape(Theorem t)
{
    switch (t) {
    case Theorem::WellSepCube:
    case Theorem::SRCube:
    case Theorem::ClumpCube:
    case Theorem::HyperCube: return Shape::Cube;
    default: return Shape::Ball;
    }
}

const Hypothesis* BoundReport::find(const std::string& name) const
{
    for (const auto& h : hypotheses)
        if (h.name == name) return &h;
    return nullptr;
}

double multiscale_product(const PointSet& X, Index k, double scale, LpNorm q)
{
    require(k < X.size(), "node index out of range");
    require(scale > 0, "scale must be positive");
    double prod = 1;
    for (Index j = 0; j < X.size(); ++j) {
        if (j == k) continue;
        const double t = lp_distance(X[j], X[k], q, X.space());
        if (t > 0 && t <= scale) prod *= t / scale;
    }
    return prod;
}

LocalizationConstants localization_constants(Shape shape, double param, double tau, int d)
{
    require(tau > 0, "tau must be positive");
    if (shape == Shape::Cube) {
        require_beta(param);
        return {param * d, std::sqrt(std::max(0.0, 2 - std::exp(1 / (2 * param))))};
    }
    const double ca = c_alpha(param, d);
    const double R = param / tau;
    const double vol = volume(FrequencyDomain::continuous(Shape::Ball, R, d));
    const double cnt = static_cast<double>(lattice_count(FrequencyDomain::discrete(Shape::Ball, R, d)));
    return {param, std::sqrt(ca / unit_ball_volume(d) * vol / cnt)};
}

BoundReport wellsep_cube(double m, const PointSet& X, double beta, OperatorKind op)
{
    require(X.dim() >= 2, "the theorems need d >= 2");
    require(m >= 1, "m must be at least 1");
    require_beta(beta);
    const int d = X.dim();
    BoundReport R;
    R.theorem = Theorem::WellSepCube;
    R.op = op;
    const PointSet Xm = X.with_space(op == OperatorKind::Discrete ? Space::Torus : Space::Euclidean);
    const double sep = separation_or_inf(Xm, LpNorm::inf());
    check(R, "Delta_inf >= beta d / m", sep, ">=", beta * d / m);
    const double V = op == OperatorKind::Discrete
                         ? static_cast<double>(lattice_count(FrequencyDomain::discrete(Shape::Cube, m, d)))
                         : volume(FrequencyDomain::continuous(Shape::Cube, m, d));
    const double e = std::exp(1 / (2 * beta));
    R.constants["beta"] = beta;
    R.constants["size"] = V;
    R.lower = std::sqrt(std::max(0.0, 2 - e) * V);
    R.upper = std::sqrt(e * V);
    finalize(R);
    return R;
}

BoundReport wellsep_ball(double m, const PointSet& X, double alpha, OperatorKind op)
{
    require_common(m, X);
    const int d = X.dim();
    const double c = c_alpha(alpha, d);
    BoundReport R;
    R.theorem = Theorem::WellSepBall;
    R.op = op;
    const PointSet Xm = X.with_space(op == OperatorKind::Discrete ? Space::Torus : Space::Euclidean);
    const double sep = separation_or_inf(Xm, LpNorm::two());
    check(R, "Delta_2 >= alpha / m", sep, ">=", alpha / m);
    R.constants["alpha"] = alpha;
    R.constants["c_alpha"] = c;
    R.lower = std::sqrt(c * std::pow(m, d));
    finalize(R);
    return R;
}

BoundReport sr_cube(double m, const PointSet& X, double tau, double beta, OperatorKind op)
{
    require_common(m, X);
    require_beta(beta);
    const int d = X.dim();
    const PointSet Xt = X.with_space(Space::Torus);
    BoundReport R;
    R.theorem = Theorem::SRCube;
    R.op = op;
    const LocalSetup L = local_hypotheses(R, m, Xt, tau, Shape::Cube, beta);
    if (all_pass(R)) {
        const double nu = static_cast<double>(L.nu);
        const double prod = min_product(Xt, nu / m, LpNorm::one());
        const double size = domain_size(Shape::Cube, m / (2 * nu), d, op);
        R.constants["product"] = prod;
        R.constants["size"] = size;
        R.lower = std::sqrt(2 / static_cast<double>(X.size())) * std::pow(cube_factor(beta), nu / 2) *
                  std::sqrt(size) * prod;
    }
    finalize(R);
    return R;
}

BoundReport sr_ball(double m, const PointSet& X, double tau, double alpha, OperatorKind op)
{
    require_common(m, X);
    const int d = X.dim();
    c_alpha(alpha, d);  // rejects alpha at or below the critical value
    const PointSet Xt = X.with_space(Space::Torus);
    BoundReport R;
    R.theorem = Theorem::SRBall;
    R.op = op;
    const LocalSetup L = local_hypotheses(R, m, Xt, tau, Shape::Ball, alpha);
    if (all_pass(R)) {
        const double nu = static_cast<double>(L.nu);
        const double c = localization_constants(Shape::Ball, alpha, tau, d).c;
        const double prod = min_product(Xt, nu / m, LpNorm::two());
        const double size = domain_size(Shape::Ball, m / (2 * nu), d, op);
        R.constants["c_loc"] = c;
        R.constants["product"] = prod;
        R.constants["size"] = size;
        R.lower = std::pow(c, nu) * std::pow(2.0, -(nu - 1) / 2) * std::sqrt(size) * prod /
                  std::sqrt(static_cast<double>(X.size()));
    }
    finalize(R);
    return R;
}

namespace {

BoundReport clump_common(Theorem t, double m, const PointSet& X, double tau, double param, OperatorKind op)
{
    const Shape shape = theorem_shape(t);
    const int d = X.dim();
    const double s = static_cast<double>(X.size());
    const double rd = std::sqrt(static_cast<double>(d));
    const PointSet Xt = X.with_space(Space::Torus);
    const LpNorm p = shape == Shape::Cube ? LpNorm::inf() : LpNorm::two();
    const LpNorm q = shape == Shape::Cube ? LpNorm::one() : LpNorm::two();
    const double C = shape == Shape::Cube ? param * d : param;

    BoundReport R;
    R.theorem = t;
    R.op = op;
    R.constants[shape == Shape::Cube ? "beta" : "alpha"] = param;
    R.constants["tau"] = tau;
    if (shape == Shape::Cube)
        check(R, "m >= 4s", m, ">=", 4 * s);
    else
        check(R, "m >= 4s sqrt(d)", m, ">=", 4 * s * rd);
    check(R, "s >= 2", s, ">=", 2);

    const ClumpDetection det = tau > 0 ? detect_clumps(Xt, tau, p) : ClumpDetection{};
    check(R, "clump configuration", det.ok() ? 1 : 0, "==", 1);
    if (!det.ok()) {
        R.note = tau > 0 ? det.reason : "tau must be positive";
        finalize(R);
        return R;
    }
    const double lambda = static_cast<double>(det.structure->lambda);
    const double delta = separation_or_inf(Xt, q);
    R.constants["lambda"] = lambda;
    if (std::isfinite(delta)) R.constants["delta"] = delta;
    check(R, "delta <= lambda / m", delta, "<=", lambda / m);
    if (shape == Shape::Cube) {
        check(R, "2 beta d lambda / m <= tau", 2 * C * lambda / m, "<=", tau);
        check(R, "tau <= 1/(4d)", tau, "<=", 1 / (4.0 * d));
    } else {
        check(R, "2 alpha lambda / m <= tau", 2 * C * lambda / m, "<=", tau);
        check(R, "tau <= 1/(4 sqrt(d))", tau, "<=", 1 / (4 * rd));
    }
    if (all_pass(R)) {
        const double size = domain_size(shape, m / (2 * lambda), d, op);
        const double rate = std::pow(m * delta / lambda, lambda - 1);
        R.constants["size"] = size;
        R.constants["product"] = rate;
        if (shape == Shape::Cube) {
            R.lower = std::sqrt(2 / s) * std::pow(cube_factor(param), lambda / 2) * std::sqrt(size) * rate;
        } else {
            const double c = localization_constants(Shape::Ball, param, tau, d).c;
            R.constants["c_loc"] = c;
            R.lower = std::pow(c, lambda) * std::pow(2.0, -(lambda - 1) / 2) * std::sqrt(size) * rate / std::sqrt(s);
        }
    }
    finalize(R);
    return R;
}

}  // namespace

BoundReport clump_cube(double m, const PointSet& X, double tau, double beta, OperatorKind op)
{
    require_common(m, X);
    require_beta(beta);
    return clump_common(Theorem::ClumpCube, m, X, tau, beta, op);
}

BoundReport clump_ball(double m, const PointSet& X, double tau, double alpha, OperatorKind op)
{
    require_common(m, X);
    c_alpha(alpha, X.dim());
    return clump_common(Theorem::ClumpBall, m, X, tau, alpha, op);
}

DecompositionSet hyperplane_decompositions(const PointSet& X, double tau, LpNorm p, Index r_max)
{
    DecompositionSet out;
    std::vector<LocalHyperplaneDecomposition> all;
    try {
        for (Index k = 0; k < X.size(); ++k) all.push_back(local_hyperplane_decomposition(X, k, tau, p, r_max));
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::budget && e.kind() != ErrorKind::no_decomposition) throw;
        out.reason = e.what();
        return out;
    }
    out.decompositions = std::move(all);
    return out;
}

namespace {

// Pairs inside a tau-neighborhood whose torus and Euclidean displacements differ.
Index wrapped_pairs(const PointSet& Xt, double tau, LpNorm p)
{
    Index count = 0;
    for (Index k = 0; k < Xt.size(); ++k)
        for (Index j : neighborhood(Xt, k, tau, p)) {
            if (j == k) continue;
            const Vec a = displacement(Xt[k], Xt[j], Space::Torus);
            const Vec b = displacement(Xt[k], Xt[j], Space::Euclidean);
            for (int l = 0; l < Xt.dim(); ++l)
                if (std::abs(a[l] - b[l]) > 0.5) {
                    ++count;
                    break;
                }
        }
    return count;
}

BoundReport hyper_common(Theorem t, double m, const PointSet& X, double tau, double param, OperatorKind op,
                         const DecompositionSet* given, Index r_max)
{
    require(op == OperatorKind::Continuous, "the hyperplane theorems hold for the continuous operator only");
    const Shape shape = theorem_shape(t);
    const int d = X.dim();
    const double s = static_cast<double>(X.size());
    const PointSet Xt = X.with_space(Space::Torus);
    const LpNorm p = shape == Shape::Cube ? LpNorm::inf() : LpNorm::two();

    BoundReport R;
    R.theorem = t;
    R.op = op;
    const LocalSetup L = local_hypotheses(R, m, Xt, tau, shape, param);
    if (tau <= 0) {
        finalize(R);
        return R;
    }
    check(R, "neighborhoods do not wrap", static_cast<double>(wrapped_pairs(Xt, tau, p)), "==", 0);

    DecompositionSet computed;
    if (!given) computed = hyperplane_decompositions(Xt, tau, p, r_max);
    const DecompositionSet& D = given ? *given : computed;
    check(R, "hyperplane decomposition", D.decompositions ? 1 : 0, "==", 1);
    if (!D.decompositions) {
        R.note = D.reason.empty() ? "no decomposition supplied" : D.reason;
        finalize(R);
        return R;
    }
    require(D.decompositions->size() == X.size(), "one decomposition per node is required");
    Index r = 0;
    double eta = kInf;
    for (const auto& dec : *D.decompositions) {
        r = std::max(r, dec.r());
        if (dec.r() > 0) eta = std::min(eta, dec.eta);
    }
    const double rr = static_cast<double>(r);
    R.constants["r"] = rr;
    if (r > 0) {
        R.constants["eta"] = eta;
        check(R, "eta <= (r+1)/(2m)", eta, "<=", (rr + 1) / (2 * m));
    }
    if (all_pass(R)) {
        const double nu = static_cast<double>(L.nu);
        const double size = volume(FrequencyDomain::continuous(shape, m / (2 * rr + 2), d));
        const double rate = r > 0 ? std::pow(2 * m * eta / (rr + 1), rr) : 1.0;
        R.constants["size"] = size;
        R.constants["product"] = rate;
        const double tail = std::sqrt(size) * std::pow(2.0, -rr / 2) * rate;
        if (shape == Shape::Cube) {
            R.lower = std::sqrt(2 / s) * std::pow(cube_factor(param), nu / 2) * tail;
        } else {
            const double c = localization_constants(Shape::Ball, param, tau, d).c;
            R.constants["c_loc"] = c;
            R.lower = std::pow(c, nu) * tail / std::sqrt(s);
        }
    }
    finalize(R);
    return R;
}

}  // namespace

BoundReport hyper_cube(double m, const PointSet& X, double tau, double beta, OperatorKind op, Index r_max)
{
    require_common(m, X);
    require_beta(beta);
    return hyper_common(Theorem::HyperCube, m, X, tau, beta, op, nullptr, r_max);
}

BoundReport hyper_ball(double m, const PointSet& X, double tau, double alpha, OperatorKind op, Index r_max)
{
    require_common(m, X);
    c_alpha(alpha, X.dim());
    return hyper_common(Theorem::HyperBall, m, X, tau, alpha, op, nullptr, r_max);
}

BoundReport hyper_cube(double m, const PointSet& X, double tau, double beta, OperatorKind op,
                       const DecompositionSet& decompositions)
{
    require_common(m, X);
    require_beta(beta);
    return hyper_common(Theorem::HyperCube, m, X, tau, beta, op, &decompositions, 0);
}

BoundReport hyper_ball(double m, const PointSet& X, double tau, double alpha, OperatorKind op,
                       const DecompositionSet& decompositions)
{
    require_common(m, X);
    c_alpha(alpha, X.dim());
    return hyper_common(Theorem::HyperBall, m, X, tau, alpha, op, &decompositions, 0);
}

BoundReport evaluate_bound(Theorem t, double m, const PointSet& X, double tau, double param, OperatorKind op)
{
    switch (t) {
    case Theorem::WellSepCube: return wellsep_cube(m, X, param, op);
    case Theorem::WellSepBall: return wellsep_ball(m, X, param, op);
    case Theorem::SRCube: return sr_cube(m, X, tau, param, op);
    case Theorem::SRBall: return sr_ball(m, X, tau, param, op);
    case Theorem::ClumpCube: return clump_cube(m, X, tau, param, op);
    case Theorem::ClumpBall: return clump_ball(m, X, tau, param, op);
    case Theorem::HyperCube: return hyper_cube(m, X, tau, param, op);
    case Theorem::HyperBall: return hyper_ball(m, X, tau, param, op);
    }
    throw Error(ErrorKind::invalid_argument, "unknown theorem");
}

BoundReport best_over_tau(Theorem t, double m, const PointSet& X, double param, OperatorKind op)
{
    if (t == Theorem::WellSepCube || t == Theorem::WellSepBall) return evaluate_bound(t, m, X, 0, param, op);
    const int d = X.dim();
    const Shape shape = theorem_shape(t);
    const double C = shape == Shape::Cube ? param * d : param;
    const double cap = shape == Shape::Cube ? 1 / (4.0 * d) : 1 / (4 * std::sqrt(static_cast<double>(d)));

    std::vector<double> taus{cap};
    for (Index nu = 1; nu <= X.size(); ++nu)
        for (double tau = 2 * C * static_cast<double>(nu) / m; tau < cap; tau *= 2) taus.push_back(tau);
    std::sort(taus.begin(), taus.end());
    taus.erase(std::unique(taus.begin(), taus.end()), taus.end());

    std::optional<BoundReport> best;
    for (double tau : taus) {
        BoundReport R = evaluate_bound(t, m, X, tau, param, op);
        if (R.applicable && (!best || R.lower > best->lower)) best = std::move(R);
    }
    if (best) return *best;
    return evaluate_bound(t, m, X, cap, param, op);
}

double default_parameter(Theorem t, int d)
{
    if (theorem_shape(t) == Shape::Cube) return 1 / std::numbers::ln2;
    return alpha_saturation(d);
}

}  // namespace sigmalab
