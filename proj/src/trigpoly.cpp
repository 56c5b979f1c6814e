#include "sigmalab/trigpoly.hpp"

#include <fftw3.h>

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <unordered_map>

#include "sigmalab/error.hpp"
#include "sigmalab/specfun.hpp"

namespace sigmalab {

using std::numbers::pi;

namespace {

constexpr int kBits = 16;
constexpr int kBias = 1 << (kBits - 1);

// The FFTW planner is not reentrant.
std::mutex& fftw_planner_mutex()
{
    static std::mutex m;
    return m;
}

cplx expi(double theta)
{
    return {std::cos(theta), std::sin(theta)};
}

}  // namespace

TrigPolynomial::TrigPolynomial(int d) : d_(d)
{
    require(d >= 1 && d <= kMaxDim, "trigonometric polynomials support 1 <= d <= 4");
}

TrigPolynomial TrigPolynomial::constant(int d, cplx c)
{
    TrigPolynomial f(d);
    std::vector<int> zero(d, 0);
    f.add(zero, c);
    return f;
}

TrigPolynomial TrigPolynomial::dirichlet_kernel(Shape shape, double radius, int d)
{
    Lattice L = enumerate_lattice(FrequencyDomain::discrete(shape, radius, d));
    TrigPolynomial f(d);
    const double w = 1.0 / static_cast<double>(L.size());
    f.terms_.reserve(L.size());
    for (std::size_t i = 0; i < L.size(); ++i)
        f.terms_.emplace_back(f.pack({L.index.data() + i * d, static_cast<std::size_t>(d)}), w);
    std::sort(f.terms_.begin(), f.terms_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return f;
}

TrigPolynomial::Key TrigPolynomial::pack(std::span<const int> f) const
{
    require(static_cast<int>(f.size()) == d_, "frequency dimension mismatch");
    Key k = 0;
    for (int v : f) {
        require(v > -kBias && v < kBias, "frequency out of packable range");
        k = (k << kBits) | static_cast<Key>(v + kBias);
    }
    return k;
}

void TrigPolynomial::unpack(Key k, int* f) const
{
    for (int l = d_ - 1; l >= 0; --l) {
        f[l] = static_cast<int>(k & ((Key{1} << kBits) - 1)) - kBias;
        k >>= kBits;
    }
}

std::vector<int> TrigPolynomial::frequency(std::size_t i) const
{
    std::vector<int> f(d_);
    unpack(terms_[i].first, f.data());
    return f;
}

void TrigPolynomial::add(std::span<const int> freq, cplx c)
{
    Key k = pack(freq);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k, [](const auto& t, Key key) { return t.first < key; });
    if (it != terms_.end() && it->first == k)
        it->second += c;
    else
        terms_.insert(it, {k, c});
}

cplx TrigPolynomial::operator()(std::span<const double> x) const
{
    require(static_cast<int>(x.size()) == d_, "evaluation point dimension mismatch");
    cplx s = 0;
    int f[kMaxDim];
    for (const auto& [k, c] : terms_) {
        unpack(k, f);
        double ph = 0;
        for (int l = 0; l < d_; ++l) ph += f[l] * x[l];
        s += c * expi(2 * pi * ph);
    }
    return s;
}

TrigPolynomial TrigPolynomial::operator*(const TrigPolynomial& g) const
{
    require(d_ == g.d_, "dimension mismatch in product");
    TrigPolynomial out(d_);
    if (terms_.empty() || g.terms_.empty()) return out;
    int a[kMaxDim], b[kMaxDim], s[kMaxDim];
    // bounding box of the sum set
    int lo[kMaxDim], hi[kMaxDim];
    auto box = [&](const TrigPolynomial& P, int* l, int* h) {
        for (int i = 0; i < d_; ++i) l[i] = h[i] = 0;
        bool first = true;
        for (const auto& t : P.terms_) {
            P.unpack(t.first, a);
            for (int i = 0; i < d_; ++i) {
                l[i] = first ? a[i] : std::min(l[i], a[i]);
                h[i] = first ? a[i] : std::max(h[i], a[i]);
            }
            first = false;
        }
    };
    int la[kMaxDim], ha[kMaxDim], lb[kMaxDim], hb[kMaxDim];
    box(*this, la, ha);
    box(g, lb, hb);
    std::size_t dims[kMaxDim] = {}, total = 1;
    for (int i = 0; i < d_; ++i) {
        lo[i] = la[i] + lb[i];
        hi[i] = ha[i] + hb[i];
        dims[i] = static_cast<std::size_t>(hi[i] - lo[i] + 1);
        total *= dims[i];
    }
    std::size_t stride[kMaxDim];
    for (int i = d_ - 1, st = 1; i >= 0; --i) {
        stride[i] = static_cast<std::size_t>(st);
        st *= static_cast<int>(dims[i]);
    }
    // flat(a + b) = offset of a relative to la plus offset of b relative to lb
    auto offset = [&](const int* f, const int* base) {
        std::size_t idx = 0;
        for (int i = 0; i < d_; ++i) idx += static_cast<std::size_t>(f[i] - base[i]) * stride[i];
        return idx;
    };
    if (total <= 50'000'000) {
        std::vector<cplx> acc(total, 0.0);
        std::vector<char> hit(total, 0);
        std::vector<std::size_t> ob;
        ob.reserve(g.terms_.size());
        for (const auto& t : g.terms_) {
            g.unpack(t.first, b);
            ob.push_back(offset(b, lb));
        }
        for (const auto& [ka, ca] : terms_) {
            unpack(ka, a);
            const std::size_t base = offset(a, la);
            for (std::size_t j = 0; j < ob.size(); ++j) {
                acc[base + ob[j]] += ca * g.terms_[j].second;
                hit[base + ob[j]] = 1;
            }
        }
        std::vector<int> f(d_);
        for (std::size_t idx = 0; idx < total; ++idx) {
            if (!hit[idx]) continue;
            std::size_t rem = idx;
            for (int i = d_ - 1; i >= 0; --i) {
                f[i] = static_cast<int>(rem % dims[i]) + lo[i];
                rem /= dims[i];
            }
            out.terms_.emplace_back(pack(f), acc[idx]);
        }
    } else {
        std::unordered_map<Key, cplx> acc;
        for (const auto& [ka, ca] : terms_) {
            unpack(ka, a);
            for (const auto& [kb, cb] : g.terms_) {
                unpack(kb, b);
                for (int l = 0; l < d_; ++l) s[l] = a[l] + b[l];
                acc[pack({s, static_cast<std::size_t>(d_)})] += ca * cb;
            }
        }
        out.terms_.assign(acc.begin(), acc.end());
    }
    std::sort(out.terms_.begin(), out.terms_.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

TrigPolynomial TrigPolynomial::translated(std::span<const double> t) const
{
    require(static_cast<int>(t.size()) == d_, "translation dimension mismatch");
    TrigPolynomial out = *this;
    int f[kMaxDim];
    for (auto& [k, c] : out.terms_) {
        unpack(k, f);
        double ph = 0;
        for (int l = 0; l < d_; ++l) ph += f[l] * t[l];
        c *= expi(-2 * pi * ph);
    }
    return out;
}

TrigPolynomial TrigPolynomial::scaled(cplx c) const
{
    TrigPolynomial out = *this;
    for (auto& t : out.terms_) t.second *= c;
    return out;
}

double TrigPolynomial::l2_norm() const
{
    double s = 0;
    for (const auto& t : terms_) s += std::norm(t.second);
    return std::sqrt(s);
}

double TrigPolynomial::support_radius(LpNorm p, double threshold) const
{
    double r = 0;
    int f[kMaxDim];
    Vec v(d_);
    for (const auto& [k, c] : terms_) {
        if (std::abs(c) <= threshold) continue;
        unpack(k, f);
        for (int l = 0; l < d_; ++l) v[l] = f[l];
        r = std::max(r, p(v));
    }
    return r;
}

std::vector<cplx> TrigPolynomial::grid_values(int G) const
{
    require(G >= 1, "grid size must be positive");
    // At x = -1/2 + g/G, e^{2 pi i omega x} = (-1)^omega e^{2 pi i (omega mod G) g / G}:
    // fold the coefficients modulo G, then one G^d inverse DFT.
    std::size_t total = 1;
    for (int l = 0; l < d_; ++l) total *= static_cast<std::size_t>(G);
    std::vector<cplx> A(total, 0.0);
    int f[kMaxDim];
    for (const auto& [k, c] : terms_) {
        unpack(k, f);
        std::size_t idx = 0;
        int parity = 0;
        for (int l = 0; l < d_; ++l) {
            idx = idx * G + static_cast<std::size_t>(((f[l] % G) + G) % G);
            parity += f[l];
        }
        A[idx] += (parity & 1) ? -c : c;
    }
    int n[kMaxDim];
    for (int l = 0; l < d_; ++l) n[l] = G;
    auto* data = reinterpret_cast<fftw_complex*>(A.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        plan = fftw_plan_dft(d_, n, data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    return A;
}

double TrigPolynomial::sup_norm(int G) const
{
    double m = 0;
    for (const auto& v : grid_values(G)) m = std::max(m, std::abs(v));
    return m;
}

double TrigPolynomial::sup_norm_refined(int G0, int max_G) const
{
    double prev = sup_norm(G0);
    for (int G = 2 * G0; G <= max_G; G *= 2) {
        double cur = sup_norm(G);
        bool settled = std::abs(cur - prev) <= 1e-3 * std::max(cur, 1e-300);
        prev = std::max(prev, cur);
        if (settled) break;
    }
    return prev;
}

void PlaneWaveSum::add(std::span<const double> xi, cplx a)
{
    require(static_cast<int>(xi.size()) == d, "frequency dimension mismatch");
    freqs.insert(freqs.end(), xi.begin(), xi.end());
    coeffs.push_back(a);
}

cplx PlaneWaveSum::operator()(std::span<const double> x) const
{
    cplx s = 0;
    for (std::size_t j = 0; j < size(); ++j) {
        auto xi = frequency(j);
        double ph = 0;
        for (int l = 0; l < d; ++l) ph += xi[l] * x[l];
        s += coeffs[j] * expi(2 * pi * ph);
    }
    return s;
}

PlaneWaveSum to_plane_waves(const TrigPolynomial& f)
{
    PlaneWaveSum out;
    out.d = f.dim();
    Vec xi(f.dim());
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto w = f.frequency(i);
        for (int l = 0; l < f.dim(); ++l) xi[l] = w[l];
        out.add(xi, f.coefficient(i));
    }
    return out;
}

PlaneWaveSum multiply(const PlaneWaveSum& f, const TrigPolynomial& g)
{
    require(f.d == g.dim(), "dimension mismatch in product");
    PlaneWaveSum out;
    out.d = f.d;
    Vec xi(f.d);
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto w = g.frequency(i);
        for (std::size_t j = 0; j < f.size(); ++j) {
            auto a = f.frequency(j);
            for (int l = 0; l < f.d; ++l) xi[l] = a[l] + w[l];
            out.add(xi, f.coeffs[j] * g.coefficient(i));
        }
    }
    return out;
}

double LowPassKernel::volume() const
{
    return shape == Shape::Cube ? std::pow(2 * radius, d) : unit_ball_volume(d) * std::pow(radius, d);
}

double LowPassKernel::operator()(std::span<const double> x) const
{
    require(static_cast<int>(x.size()) == d, "kernel argument dimension mismatch");
    if (shape == Shape::Cube) {
        double v = 1;
        for (double t : x) v *= sinc(2 * radius * t);
        return v;
    }
    return ball_indicator_ft(radius, x) / volume();
}

double LowPassKernel::overlap(std::span<const double> shift) const
{
    if (shape == Shape::Cube) {
        double v = 1;
        for (double t : shift) v *= std::max(0.0, 2 * radius - std::abs(t));
        return v;
    }
    double D2 = 0;
    for (double t : shift) D2 += t * t;
    const double q = std::sqrt(D2) / (2 * radius);
    if (q >= 1) return 0;
    if (q == 0) return volume();
    // two equal balls: V * I_{1-q^2}((d+1)/2, 1/2)
    return volume() * boost::math::ibeta((d + 1) / 2.0, 0.5, 1 - q * q);
}

cplx BandlimitedFunction::operator()(std::span<const double> x) const
{
    Vec y(x.begin(), x.end());
    for (int l = 0; l < kernel.d; ++l) y[l] -= center[l];
    return kernel(y) * waves(x);
}

namespace {

// Cube spectra: the Fourier transform is piecewise constant on the grid cut
// out by the faces xi_jl +- R, so |f^|^2 integrates exactly cell by cell.
// Returns a negative value when the grid would be too large.
double cube_cell_integral(const PlaneWaveSum& waves, const CVec& b, double R)
{
    const int d = waves.d;
    const std::size_t n = waves.size();
    std::vector<Vec> cuts(d);
    for (int l = 0; l < d; ++l) {
        cuts[l].reserve(2 * n);
        for (std::size_t j = 0; j < n; ++j) {
            cuts[l].push_back(waves.frequency(j)[l] - R);
            cuts[l].push_back(waves.frequency(j)[l] + R);
        }
        std::sort(cuts[l].begin(), cuts[l].end());
        cuts[l].erase(std::unique(cuts[l].begin(), cuts[l].end()), cuts[l].end());
    }
    std::vector<std::size_t> dims(d), stride(d);
    double cells = 1;
    for (int l = 0; l < d; ++l) {
        dims[l] = cuts[l].size();
        cells *= static_cast<double>(dims[l]);
    }
    if (cells > 3e7) return -1;
    std::size_t total = 1;
    for (int l = d - 1; l >= 0; --l) {
        stride[l] = total;
        total *= dims[l];
    }
    // difference array on cut indices, then prefix sums along every axis
    CVec A(total, 0.0);
    std::vector<std::size_t> lo(d), hi(d);
    for (std::size_t j = 0; j < n; ++j) {
        auto xi = waves.frequency(j);
        for (int l = 0; l < d; ++l) {
            lo[l] = std::lower_bound(cuts[l].begin(), cuts[l].end(), xi[l] - R) - cuts[l].begin();
            hi[l] = std::lower_bound(cuts[l].begin(), cuts[l].end(), xi[l] + R) - cuts[l].begin();
        }
        for (unsigned mask = 0; mask < (1u << d); ++mask) {
            std::size_t idx = 0;
            int sign = 1;
            for (int l = 0; l < d; ++l) {
                if (mask & (1u << l)) {
                    idx += hi[l] * stride[l];
                    sign = -sign;
                } else {
                    idx += lo[l] * stride[l];
                }
            }
            A[idx] += static_cast<double>(sign) * b[j];
        }
    }
    for (int l = 0; l < d; ++l)
        for (std::size_t i = 0; i < total; ++i)
            if ((i / stride[l]) % dims[l] != 0) A[i] += A[i - stride[l]];
    double sum = 0;
    for (std::size_t i = 0; i < total; ++i) {
        if (A[i] == cplx{}) continue;
        double vol = 1;
        bool inside = true;
        for (int l = 0; l < d; ++l) {
            const std::size_t c = (i / stride[l]) % dims[l];
            if (c + 1 >= dims[l]) {
                inside = false;
                break;
            }
            vol *= cuts[l][c + 1] - cuts[l][c];
        }
        if (inside) sum += std::norm(A[i]) * vol;
    }
    return sum;
}

// Waves whose frequencies share a fractional part lie on one shifted copy of
// Z^d, so the pair sum over two such classes is a lattice correlation of the
// coefficients (computed by FFT) weighted by kernel overlaps. Returns a
// negative value when there are too many classes or the arrays get too large.
double lattice_class_integral(const PlaneWaveSum& waves, const CVec& b, const LowPassKernel& K)
{
    const int d = waves.d;
    const std::size_t n = waves.size();
    struct Class {
        Vec frac;
        std::vector<std::vector<long>> points;
        CVec coeffs;
        std::vector<long> lo, hi;
    };
    std::vector<Class> classes;
    std::map<std::vector<long long>, std::size_t> index;
    for (std::size_t j = 0; j < n; ++j) {
        auto xi = waves.frequency(j);
        std::vector<long long> key(d);
        std::vector<long> pt(d);
        Vec frac(d);
        for (int l = 0; l < d; ++l) {
            long long q = std::llround((xi[l] - std::floor(xi[l])) * 1e9);
            if (q == 1'000'000'000LL) q = 0;
            key[l] = q;
            frac[l] = static_cast<double>(q) * 1e-9;
        }
        auto [it, fresh] = index.try_emplace(key, classes.size());
        if (fresh) {
            if (classes.size() == 64) return -1;
            // keep the exact fractional part of the first member
            for (int l = 0; l < d; ++l) frac[l] = xi[l] - std::round(xi[l] - frac[l]);
            classes.push_back({frac, {}, {}, std::vector<long>(d), std::vector<long>(d)});
        }
        Class& c = classes[it->second];
        for (int l = 0; l < d; ++l) pt[l] = std::lround(xi[l] - c.frac[l]);
        c.points.push_back(pt);
        c.coeffs.push_back(b[j]);
    }
    for (auto& c : classes)
        for (int l = 0; l < d; ++l) {
            c.lo[l] = c.hi[l] = c.points[0][l];
            for (const auto& pt : c.points) {
                c.lo[l] = std::min(c.lo[l], pt[l]);
                c.hi[l] = std::max(c.hi[l], pt[l]);
            }
        }

    const double reach = 2 * K.radius;
    double total = 0;
    std::vector<int> N(d);
    Vec shift(d);
    for (std::size_t s = 0; s < classes.size(); ++s)
        for (std::size_t t = s; t < classes.size(); ++t) {
            const Class& A = classes[s];
            const Class& B = classes[t];
            std::size_t size = 1;
            for (int l = 0; l < d; ++l) {
                const long span = (A.hi[l] - A.lo[l]) + (B.hi[l] - B.lo[l]) + 1;
                int m = 1;
                while (m < span) m *= 2;
                N[l] = m;
                size *= static_cast<std::size_t>(m);
            }
            if (size > 50'000'000) return -1;
            auto scatter = [&](const Class& C) {
                CVec arr(size, 0.0);
                for (std::size_t j = 0; j < C.points.size(); ++j) {
                    std::size_t idx = 0;
                    for (int l = 0; l < d; ++l) idx = idx * N[l] + static_cast<std::size_t>(C.points[j][l] - C.lo[l]);
                    arr[idx] += C.coeffs[j];
                }
                return arr;
            };
            CVec fa = scatter(A), fb = scatter(B);
            auto* pa = reinterpret_cast<fftw_complex*>(fa.data());
            auto* pb = reinterpret_cast<fftw_complex*>(fb.data());
            fftw_plan plan_a, plan_b, plan_back;
            {
                std::lock_guard<std::mutex> lock(fftw_planner_mutex());
                plan_a = fftw_plan_dft(d, N.data(), pa, pa, FFTW_FORWARD, FFTW_ESTIMATE);
                plan_b = fftw_plan_dft(d, N.data(), pb, pb, FFTW_FORWARD, FFTW_ESTIMATE);
                plan_back = fftw_plan_dft(d, N.data(), pa, pa, FFTW_BACKWARD, FFTW_ESTIMATE);
            }
            fftw_execute(plan_a);
            fftw_execute(plan_b);
            for (std::size_t i = 0; i < size; ++i) fa[i] *= std::conj(fb[i]);
            fftw_execute(plan_back);
            {
                std::lock_guard<std::mutex> lock(fftw_planner_mutex());
                fftw_destroy_plan(plan_a);
                fftw_destroy_plan(plan_b);
                fftw_destroy_plan(plan_back);
            }
            // fa[k] = size * sum_{i} A[i] conj(B[i - k]); lattice difference = k + lo_A - lo_B
            double part = 0;
            std::vector<long> k(d);
            for (std::size_t i = 0; i < size; ++i) {
                std::size_t rem = i;
                bool near = true;
                for (int l = d - 1; l >= 0; --l) {
                    long kl = static_cast<long>(rem % N[l]);
                    rem /= N[l];
                    if (kl > A.hi[l] - A.lo[l]) kl -= N[l];
                    shift[l] = static_cast<double>(kl + A.lo[l] - B.lo[l]) + A.frac[l] - B.frac[l];
                    if (std::abs(shift[l]) >= reach) near = false;
                }
                if (!near) continue;
                const double w = K.overlap(shift);
                if (w > 0) part += (fa[i] * w).real();
            }
            part /= static_cast<double>(size);
            total += (s == t) ? part : 2 * part;
        }
    return total;
}

}  // namespace

double BandlimitedFunction::l2_norm() const
{
    const int d = kernel.d;
    const std::size_t n = waves.size();
    // move the kernel to the origin: b_j = a_j e^{2 pi i xi_j.center}
    CVec b(n);
    for (std::size_t j = 0; j < n; ++j) {
        auto xi = waves.frequency(j);
        double ph = 0;
        for (int l = 0; l < d; ++l) ph += xi[l] * center[l];
        b[j] = waves.coeffs[j] * expi(2 * pi * ph);
    }
    if (kernel.shape == Shape::Cube) {
        const double cell = cube_cell_integral(waves, b, kernel.radius);
        if (cell >= 0) return std::sqrt(cell) / kernel.volume();
    }
    const double lattice = lattice_class_integral(waves, b, kernel);
    if (lattice >= 0) return std::sqrt(std::max(0.0, lattice)) / kernel.volume();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t c) { return waves.frequency(a)[0] < waves.frequency(c)[0]; });
    const double reach = 2 * kernel.radius;
    const double V = kernel.volume();
    double total = 0;
    Vec shift(d);
    for (std::size_t a = 0; a < n; ++a) {
        const std::size_t j = order[a];
        total += std::norm(b[j]) * V;
        auto xj = waves.frequency(j);
        for (std::size_t c = a + 1; c < n; ++c) {
            const std::size_t k = order[c];
            auto xk = waves.frequency(k);
            if (xk[0] - xj[0] >= reach) break;
            for (int l = 0; l < d; ++l) shift[l] = xk[l] - xj[l];
            const double ov = kernel.overlap(shift);
            if (ov > 0) total += 2 * (b[j] * std::conj(b[k])).real() * ov;
        }
    }
    return std::sqrt(std::max(total, 0.0)) / V;
}

double BandlimitedFunction::support_radius(LpNorm p) const
{
    const int d = kernel.d;
    // l^p radius of the kernel's own spectrum
    double base = kernel.radius;
    if (kernel.shape == Shape::Cube)
        base *= p.dim_factor(d);
    else if (!p.is_inf() && p.p() < 2)
        base *= std::pow(static_cast<double>(d), 1.0 / p.p() - 0.5);
    double shift = 0;
    for (std::size_t j = 0; j < waves.size(); ++j) shift = std::max(shift, p(waves.frequency(j)));
    return base + shift;
}

}  // namespace sigmalab
