#include "sigmalab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sigmalab/error.hpp"

namespace sigmalab {

LpNorm::LpNorm(double p) : p_(p)
{
    require(p >= 1.0, "l^p exponent must lie in [1, inf]");
}

LpNorm LpNorm::dual() const
{
    if (is_inf()) return one();
    if (p_ == 1.0) return inf();
    return LpNorm(p_ / (p_ - 1.0));
}

double LpNorm::operator()(std::span<const double> x) const
{
    if (is_inf()) {
        double m = 0;
        for (double v : x) m = std::max(m, std::abs(v));
        return m;
    }
    if (p_ == 1.0) {
        double s = 0;
        for (double v : x) s += std::abs(v);
        return s;
    }
    if (p_ == 2.0) {
        double s = 0;
        for (double v : x) s += v * v;
        return std::sqrt(s);
    }
    double scale = 0;
    for (double v : x) scale = std::max(scale, std::abs(v));
    if (scale == 0) return 0;
    double s = 0;
    for (double v : x) s += std::pow(std::abs(v) / scale, p_);
    return scale * std::pow(s, 1.0 / p_);
}

double LpNorm::dim_factor(int d) const
{
    return is_inf() ? 1.0 : std::pow(static_cast<double>(d), 1.0 / p_);
}

PointSet::PointSet(int d, Space space, const std::vector<Vec>& points) : d_(d), space_(space)
{
    require(d >= 1, "point set dimension must be positive");
    require(!points.empty(), "point set must contain at least one node");
    coords_.reserve(points.size() * static_cast<Index>(d));
    for (const auto& x : points) {
        require(static_cast<int>(x.size()) == d, "node dimension does not match d");
        for (double v : x) {
            require(std::isfinite(v) && v >= -0.5 && v < 0.5, "node coordinate outside [-1/2, 1/2)");
            coords_.push_back(v);
        }
    }
    for (Index j = 0; j < size(); ++j)
        for (Index k = j + 1; k < size(); ++k) {
            auto a = (*this)[j];
            auto b = (*this)[k];
            require(!std::equal(a.begin(), a.end(), b.begin()), "coincident nodes");
        }
}

std::vector<Vec> PointSet::points() const
{
    std::vector<Vec> out;
    out.reserve(size());
    for (Index k = 0; k < size(); ++k) out.emplace_back((*this)[k].begin(), (*this)[k].end());
    return out;
}

PointSet PointSet::with_space(Space s) const
{
    PointSet out = *this;
    out.space_ = s;
    return out;
}

PointSet PointSet::subset(std::span<const Index> indices) const
{
    require(!indices.empty(), "subset must be non-empty");
    PointSet out;
    out.d_ = d_;
    out.space_ = space_;
    for (Index k : indices) {
        require(k < size(), "subset index out of range");
        auto x = (*this)[k];
        out.coords_.insert(out.coords_.end(), x.begin(), x.end());
    }
    return out;
}

double wrap(double t)
{
    return t - std::nearbyint(t);
}

Vec displacement(std::span<const double> x, std::span<const double> y, Space space)
{
    require(x.size() == y.size(), "dimension mismatch");
    Vec u(x.size());
    for (Index i = 0; i < x.size(); ++i) {
        u[i] = y[i] - x[i];
        if (space == Space::Torus) u[i] = wrap(u[i]);
    }
    return u;
}

double lp_distance(std::span<const double> x, std::span<const double> y, LpNorm p, Space space)
{
    return p(displacement(x, y, space));
}

double min_separation(const PointSet& X, LpNorm p)
{
    require(X.size() >= 2, "minimum separation needs at least two nodes");
    double best = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < X.size(); ++j)
        for (Index k = j + 1; k < X.size(); ++k) best = std::min(best, lp_distance(X[j], X[k], p, X.space()));
    return best;
}

IndexSet neighborhood(const PointSet& X, Index k, double tau, LpNorm p)
{
    require(k < X.size(), "node index out of range");
    IndexSet out;
    for (Index j = 0; j < X.size(); ++j)
        if (j == k || lp_distance(X[j], X[k], p, X.space()) <= tau) out.push_back(j);
    return out;
}

Index local_sparsity(const PointSet& X, std::span<const Index> subset, double tau, LpNorm p)
{
    Index best = 0;
    for (Index k : subset) {
        Index count = 0;
        for (Index j : subset)
            if (j == k || lp_distance(X[j], X[k], p, X.space()) <= tau) ++count;
        best = std::max(best, count);
    }
    return best;
}

Index local_sparsity(const PointSet& X, double tau, LpNorm p)
{
    IndexSet all(X.size());
    std::iota(all.begin(), all.end(), Index{0});
    return local_sparsity(X, all, tau, p);
}

std::vector<IndexSet> separated_partition(const PointSet& X, std::span<const Index> subset, double tau, LpNorm p)
{
    std::vector<IndexSet> parts;
    for (Index k : subset) {
        bool placed = false;
        for (auto& part : parts) {
            bool far = std::all_of(part.begin(), part.end(),
                                   [&](Index j) { return lp_distance(X[j], X[k], p, X.space()) > tau; });
            if (far) {
                part.push_back(k);
                placed = true;
                break;
            }
        }
        if (!placed) parts.push_back({k});
    }
    // First fit never needs more than nu parts (max degree + 1 of the conflict
    // graph). It can need fewer; subsets of separated sets stay separated, so
    // split the largest part until the count is exactly nu.
    Index nu = local_sparsity(X, subset, tau, p);
    while (parts.size() < nu) {
        auto largest = std::max_element(parts.begin(), parts.end(),
                                        [](const IndexSet& a, const IndexSet& b) { return a.size() < b.size(); });
        Index moved = largest->back();
        largest->pop_back();
        parts.push_back({moved});
    }
    return parts;
}

std::vector<IndexSet> separated_partition(const PointSet& X, double tau, LpNorm p)
{
    IndexSet all(X.size());
    std::iota(all.begin(), all.end(), Index{0});
    return separated_partition(X, all, tau, p);
}

ClumpDetection detect_clumps(const PointSet& X, double tau, LpNorm p)
{
    const Index s = X.size();
    std::vector<Index> parent(s);
    std::iota(parent.begin(), parent.end(), Index{0});
    auto find = [&](Index a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (Index j = 0; j < s; ++j)
        for (Index k = j + 1; k < s; ++k)
            if (lp_distance(X[j], X[k], p, X.space()) <= tau) parent[find(j)] = find(k);

    std::vector<IndexSet> comps;
    std::vector<long> slot(s, -1);
    for (Index j = 0; j < s; ++j) {
        Index root = find(j);
        if (slot[root] < 0) {
            slot[root] = static_cast<long>(comps.size());
            comps.emplace_back();
        }
        comps[static_cast<Index>(slot[root])].push_back(j);
    }

    ClumpDetection out;
    for (const auto& c : comps)
        for (Index a = 0; a < c.size(); ++a)
            for (Index b = a + 1; b < c.size(); ++b)
                if (lp_distance(X[c[a]], X[c[b]], p, X.space()) > tau) {
                    out.reason = "clump diameter exceeds tau";
                    out.violating = c;
                    return out;
                }
    for (const auto& c : comps)
        if (c.size() != comps.front().size()) {
            out.reason = "clumps have unequal cardinality";
            out.violating = c;
            return out;
        }
    out.structure = ClumpStructure{comps, tau, comps.front().size()};
    return out;
}

Hyperplane::Hyperplane(Vec n, double c) : normal(std::move(n)), offset(c)
{
    double len = LpNorm::two()(normal);
    require(std::abs(len - 1.0) <= 1e-12, "hyperplane normal must have unit length");
}

double point_hyperplane_distance(std::span<const double> x, const Hyperplane& H)
{
    require(x.size() == H.normal.size(), "dimension mismatch");
    double dot = 0;
    for (Index i = 0; i < x.size(); ++i) dot += H.normal[i] * x[i];
    return std::abs(dot - H.offset);
}

namespace {

double dot(std::span<const double> a, std::span<const double> b)
{
    double s = 0;
    for (Index i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Directions whose residual after projection falls below this are treated as
// dependent; well under the 1e-10 plane-membership tolerance.
constexpr double kRankTol = 1e-11;
constexpr double kReferenceTol = 1e-10;

}  // namespace

AffineSpan affine_span(std::span<const Vec> pts)
{
    AffineSpan out;
    if (pts.empty()) return out;
    const Vec& g0 = pts[0];
    const Index d = g0.size();
    std::vector<Vec> basis;
    for (Index i = 1; i < pts.size(); ++i) {
        Vec v(d);
        for (Index l = 0; l < d; ++l) v[l] = pts[i][l] - g0[l];
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) {
                double c = dot(v, b);
                for (Index l = 0; l < d; ++l) v[l] -= c * b[l];
            }
        double len = std::sqrt(dot(v, v));
        if (len > kRankTol) {
            for (double& x : v) x /= len;
            basis.push_back(std::move(v));
        }
    }
    out.dimension = static_cast<int>(basis.size());
    out.foot = g0;
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) {
            double c = dot(out.foot, b);
            for (Index l = 0; l < d; ++l) out.foot[l] -= c * b[l];
        }
    out.origin_distance = std::sqrt(dot(out.foot, out.foot));
    return out;
}

namespace {

struct CoverSearch {
    int d;
    Index r;
    const std::vector<Vec>& pts;
    std::vector<std::vector<Index>> groups;  // local indices into pts
    std::vector<double> group_eta;
    std::vector<std::vector<Index>> best;
    double best_eta = -1;

    bool valid(const std::vector<Index>& members, double& eta) const
    {
        std::vector<Vec> g;
        for (Index i : members) g.push_back(pts[i]);
        AffineSpan span = affine_span(g);
        eta = span.origin_distance;
        return span.dimension <= d - 1 && eta > kReferenceTol;
    }

    void run(Index i)
    {
        double current = std::numeric_limits<double>::infinity();
        for (double e : group_eta) current = std::min(current, e);
        if (current <= best_eta) return;
        if (i == pts.size()) {
            best = groups;
            best_eta = current;
            return;
        }
        for (Index g = 0; g < groups.size(); ++g) {
            groups[g].push_back(i);
            double eta;
            if (valid(groups[g], eta) && eta > best_eta) {
                double saved = group_eta[g];
                group_eta[g] = eta;
                run(i + 1);
                group_eta[g] = saved;
            }
            groups[g].pop_back();
        }
        if (groups.size() < r) {
            groups.push_back({i});
            double eta;
            if (valid(groups.back(), eta) && eta > best_eta) {
                group_eta.push_back(eta);
                run(i + 1);
                group_eta.pop_back();
            }
            groups.pop_back();
        }
    }
};

}  // namespace

LocalHyperplaneDecomposition local_hyperplane_decomposition(const PointSet& X, Index k, double tau, LpNorm p,
                                                            Index r_max, Index budget)
{
    require(r_max >= 1, "r_max must be positive");
    IndexSet nb = neighborhood(X, k, tau, p);
    IndexSet others;
    for (Index j : nb)
        if (j != k) others.push_back(j);
    require(others.size() <= budget,
            "hyperplane search budget exceeded: neighborhood has " + std::to_string(others.size()) +
                " non-reference nodes, budget " + std::to_string(budget),
            ErrorKind::budget);

    LocalHyperplaneDecomposition out;
    out.reference_index = k;
    if (others.empty()) return out;

    std::vector<Vec> pts;
    for (Index j : others) pts.push_back(displacement(X[k], X[j], X.space()));

    for (Index r = 1; r <= std::min(r_max, others.size()); ++r) {
        CoverSearch search{X.dim(), r, pts, {}, {}, {}, -1};
        search.run(0);
        if (search.best.empty()) continue;
        for (const auto& g : search.best) {
            std::vector<Vec> gp;
            IndexSet members;
            for (Index i : g) {
                gp.push_back(pts[i]);
                members.push_back(others[i]);
            }
            AffineSpan span = affine_span(gp);
            Vec normal = span.foot;
            for (double& v : normal) v /= span.origin_distance;
            out.planes.push_back({Hyperplane(std::move(normal), span.origin_distance), std::move(members)});
        }
        out.eta = search.best_eta;
        return out;
    }
    throw Error(ErrorKind::no_decomposition,
                "no hyperplane decomposition within r_max = " + std::to_string(r_max));
}

GenericExponents generic_exponents(int lambda, int d)
{
    require(lambda >= 1 && d >= 1, "lambda and d must be positive");
    // C(gamma+d, d) grows in gamma; stop at the first value reaching lambda
    int gamma = 0;
    for (;; ++gamma) {
        double binom = 1;
        for (int i = 1; i <= d; ++i) binom = binom * (gamma + i) / i;
        if (binom + 0.5 >= lambda) break;
    }
    return {gamma, (lambda - 1 + d - 1) / d};
}

PointSet dilate(const PointSet& X, double delta)
{
    require(delta > 0 && std::isfinite(delta), "dilation factor must be positive");
    std::vector<Vec> pts = X.points();
    for (auto& x : pts)
        for (double& v : x) {
            v *= delta;
            require(v >= -0.5 && v < 0.5, "dilated node leaves [-1/2, 1/2)^d");
        }
    return PointSet(X.dim(), X.space(), pts);
}

}  // namespace sigmalab
