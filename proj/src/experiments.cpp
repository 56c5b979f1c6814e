#include "sigmalab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "sigmalab/error.hpp"
#include "sigmalab/operators.hpp"
#include "sigmalab/rng.hpp"
#include "sigmalab/specfun.hpp"

namespace sigmalab {

std::string to_string(ScenarioKind k)
{
    switch (k) {
    case ScenarioKind::Line: return "line";
    case ScenarioKind::Triangle: return "triangle";
    case ScenarioKind::Parabola: return "parabola";
    case ScenarioKind::Generic: return "generic";
    case ScenarioKind::Clumps: return "clumps";
    case ScenarioKind::Custom: return "custom";
    }
    return "?";
}

std::optional<ScenarioKind> scenario_from_string(const std::string& name)
{
    for (auto k : {ScenarioKind::Line, ScenarioKind::Triangle, ScenarioKind::Parabola, ScenarioKind::Generic,
                   ScenarioKind::Clumps, ScenarioKind::Custom})
        if (to_string(k) == name) return k;
    return std::nullopt;
}

FrequencyDomain ScenarioSpec::domain() const
{
    return mode == Sampling::Discrete ? FrequencyDomain::discrete(shape, m, d, rho)
                                      : FrequencyDomain::continuous(shape, m, d);
}

PointSet generate_scenario(const ScenarioSpec& spec, double delta)
{
    require(delta > 0 && std::isfinite(delta), "delta must be positive");
    require(spec.d >= 2 && spec.d <= TrigPolynomial::kMaxDim, "scenarios need 2 <= d <= 4");
    require(spec.lambda >= 1, "lambda must be positive");
    const int d = spec.d;
    std::vector<Vec> pts;
    switch (spec.kind) {
    case ScenarioKind::Line:
        for (int i = 0; i < spec.lambda; ++i) {
            Vec x(d, 0.0);
            x[0] = i * delta;
            pts.push_back(x);
        }
        break;
    case ScenarioKind::Triangle: {
        Vec a(d, 0.0), b(d, 0.0), c(d, 0.0);
        b[0] = delta;
        c[1] = delta;
        pts = {a, b, c};
        break;
    }
    case ScenarioKind::Parabola: {
        const int shift = (spec.lambda - 1) / 2;
        for (int i = 0; i < spec.lambda; ++i) {
            const double t = (i - shift) * delta;
            Vec x(d, 0.0);
            x[0] = t;
            x[1] = t * t;
            pts.push_back(x);
        }
        break;
    }
    case ScenarioKind::Generic: {
        require(spec.m > 0, "generic scenarios need m > 0");
        auto g = trial_stream(spec.seed, spec.trial);
        for (int i = 0; i < spec.lambda; ++i) {
            Vec x(d);
            for (int l = 0; l < d; ++l) x[l] = delta * uniform(g, -1 / spec.m, 1 / spec.m);
            pts.push_back(x);
        }
        break;
    }
    case ScenarioKind::Clumps:
        require(spec.clumps >= 1, "clumps must be positive");
        for (int c = 0; c < spec.clumps; ++c)
            for (int i = 0; i < spec.lambda; ++i) {
                Vec x(d, 0.0);
                x[0] = c * spec.gap;
                x[1] = i * delta;
                pts.push_back(x);
            }
        break;
    case ScenarioKind::Custom:
        require(!spec.custom.empty(), "custom scenario has no points");
        for (const Vec& u : spec.custom) {
            require(static_cast<int>(u.size()) == d, "custom point has the wrong dimension");
            Vec x(u);
            for (double& v : x) v *= delta;
            pts.push_back(x);
        }
        break;
    }
    for (const Vec& x : pts)
        for (double v : x) require(v >= -0.5 && v < 0.5, "scenario leaves [-1/2,1/2)^d at this delta");
    return PointSet(d, spec.mode == Sampling::Discrete ? Space::Torus : Space::Euclidean, pts);
}

std::vector<double> geometric_grid(double hi, double lo, int count)
{
    require(count >= 2, "a grid needs at least two points");
    require(hi > lo && lo > 0, "grid needs hi > lo > 0");
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i)
        out[i] = hi * std::pow(lo / hi, static_cast<double>(i) / (count - 1));
    out.front() = hi;
    out.back() = lo;
    return out;
}

namespace {

unsigned worker_count(unsigned threads, std::size_t jobs)
{
    unsigned n = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

// Runs job(i) for i < n on a small pool; each job writes only its own slot.
template <class Job>
void parallel_for(std::size_t n, unsigned threads, Job job)
{
    const unsigned workers = worker_count(threads, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) job(i);
        });
    for (auto& t : pool) t.join();
}

SweepRecord run_point(const ScenarioSpec& spec, double delta, const std::vector<Theorem>& bounds)
{
    SweepRecord r;
    r.delta = delta;
    r.lambda = spec.lambda;
    r.d = spec.d;
    r.m = spec.m;
    r.seed = spec.seed;
    r.trial = spec.trial;
    try {
        const PointSet X = generate_scenario(spec, delta);
        const SpectrumReport S = measure_spectrum(spec.domain(), X);
        r.sigma_min = S.sigma_min;
        r.sigma_max = S.sigma_max;
        r.floor_hit = S.floor_hit;
        const OperatorKind op = spec.mode == Sampling::Discrete ? OperatorKind::Discrete : OperatorKind::Continuous;
        for (Theorem t : bounds) {
            BoundValue v{t, false, 0};
            try {
                const BoundReport B = best_over_tau(t, spec.m, X, default_parameter(t, spec.d), op);
                v.applicable = B.applicable;
                v.lower = B.lower;
            } catch (const Error&) {
                // a theorem that cannot be evaluated here counts as inapplicable
            }
            r.bounds.push_back(v);
        }
    } catch (const Error& e) {
        r.error = e.what();
    }
    return r;
}

}  // namespace

std::vector<SweepRecord> sweep(const ScenarioSpec& spec, const std::vector<double>& deltas,
                               const std::vector<Theorem>& bounds, unsigned threads)
{
    for (std::size_t i = 1; i < deltas.size(); ++i)
        require(deltas[i] < deltas[i - 1], "the delta grid must be strictly decreasing");
    std::vector<SweepRecord> out(deltas.size());
    parallel_for(deltas.size(), threads, [&](std::size_t i) { out[i] = run_point(spec, deltas[i], bounds); });
    return out;
}

SlopeFit fit_slope(const std::vector<SweepRecord>& records, double lo, double hi)
{
    std::vector<double> xs, ys;
    for (const auto& r : records) {
        if (!r.error.empty() || r.floor_hit || !(r.sigma_min > 0)) continue;
        if (r.delta < lo * (1 - 1e-12) || r.delta > hi * (1 + 1e-12)) continue;
        xs.push_back(std::log(r.delta));
        ys.push_back(std::log(r.sigma_min));
    }
    require(xs.size() >= 4, "slope fit needs at least 4 usable points in the window");
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    SlopeFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r_squared = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
    f.points = xs.size();
    return f;
}

void write_sweep_csv(const std::vector<SweepRecord>& records, const std::vector<Theorem>& bounds, std::ostream& os,
                     bool trial_column)
{
    os << "delta,sigma_min,floor_hit";
    for (Theorem t : bounds) os << ',' << to_string(t) << "_applicable," << to_string(t) << "_lower";
    if (trial_column) os << ",trial";
    os << '\n';
    os << std::setprecision(17);
    for (const auto& r : records) {
        os << r.delta << ',';
        if (r.error.empty())
            os << r.sigma_min;
        else
            os << "nan";
        os << ',' << (r.floor_hit ? 1 : 0);
        for (std::size_t i = 0; i < bounds.size(); ++i) {
            if (i < r.bounds.size())
                os << ',' << (r.bounds[i].applicable ? 1 : 0) << ',' << r.bounds[i].lower;
            else
                os << ",0,0";
        }
        if (trial_column) os << ',' << r.trial;
        os << '\n';
    }
}

void write_table_prelim_csv(std::ostream& os)
{
    os << "d,alpha_critical,alpha_saturation,sqrt_c_saturated,sqrt_c_interior_limit\n";
    os << std::fixed << std::setprecision(6);
    for (int d = 2; d <= 10; ++d)
        os << d << ',' << alpha_critical(d) << ',' << alpha_saturation(d) << ','
           << std::sqrt(c_alpha_saturated(d)) << ',' << std::sqrt(c_alpha_interior_limit(d)) << '\n';
}

std::vector<ExponentRow> table_exponents(const ExponentOptions& o)
{
    require(o.lambda_max >= 2 && o.trials >= 1, "need lambda_max >= 2 and trials >= 1");
    std::vector<double> deltas;
    for (double t : geometric_grid(1e-1, 1e-3, o.grid))
        if (t >= kFitWindowLo * (1 - 1e-12) && t <= kFitWindowHi * (1 + 1e-12)) deltas.push_back(t);

    struct Job {
        int lambda;
        int trial;
    };
    std::vector<Job> jobs;
    for (int lambda = 2; lambda <= o.lambda_max; ++lambda)
        for (int t = 0; t < o.trials; ++t) jobs.push_back({lambda, t});
    std::vector<double> slopes(jobs.size(), std::nan(""));
    parallel_for(jobs.size(), o.threads, [&](std::size_t i) {
        ScenarioSpec spec;
        spec.kind = ScenarioKind::Generic;
        spec.lambda = jobs[i].lambda;
        spec.d = o.d;
        spec.m = o.m;
        spec.shape = o.shape;
        spec.seed = o.seed;
        spec.trial = static_cast<std::uint64_t>(jobs[i].trial);
        try {
            slopes[i] = fit_slope(sweep(spec, deltas, {}, 1), kFitWindowLo, kFitWindowHi).slope;
        } catch (const Error&) {
        }
    });

    std::vector<ExponentRow> rows;
    for (int lambda = 2; lambda <= o.lambda_max; ++lambda) {
        ExponentRow row;
        row.d = o.d;
        row.lambda = lambda;
        std::map<long, int> votes;
        for (std::size_t i = 0; i < jobs.size(); ++i)
            if (jobs[i].lambda == lambda) {
                row.slopes.push_back(slopes[i]);
                if (std::isfinite(slopes[i])) ++votes[std::lround(slopes[i])];
            }
        int best = -1;
        for (auto [v, c] : votes)
            if (c > best) {
                best = c;
                row.mode = static_cast<int>(v);
            }
        for (double s : row.slopes)
            row.max_deviation = std::max(row.max_deviation, std::isfinite(s) ? std::abs(s - row.mode) : INFINITY);
        const GenericExponents g = generic_exponents(lambda, o.d);
        row.gamma = g.gamma;
        row.r = g.r;
        rows.push_back(row);
    }
    return rows;
}

void write_table_exponents_csv(const std::vector<ExponentRow>& rows, std::ostream& os)
{
    os << "d,lambda,mode,max_deviation,gamma,r,agrees_gamma,agrees_r,slopes\n";
    for (const auto& r : rows) {
        os << r.d << ',' << r.lambda << ',' << r.mode << ',' << std::setprecision(4) << r.max_deviation << ','
           << r.gamma << ',' << r.r << ',' << (r.mode == r.gamma ? 1 : 0) << ',' << (r.mode == r.r ? 1 : 0) << ',';
        for (std::size_t i = 0; i < r.slopes.size(); ++i) os << (i ? ";" : "") << std::setprecision(6) << r.slopes[i];
        os << '\n';
    }
}

std::string emit_plotscript(const std::string& csv_path, const std::string& csv_header, const std::vector<int>& slopes)
{
    std::vector<std::string> cols;
    std::stringstream ss(csv_header);
    for (std::string c; std::getline(ss, c, ',');) {
        while (!c.empty() && (c.back() == '\r' || c.back() == ' ')) c.pop_back();
        cols.push_back(c);
    }
    auto col = [&](const std::string& name) -> int {
        for (std::size_t i = 0; i < cols.size(); ++i)
            if (cols[i] == name) return static_cast<int>(i) + 1;
        throw Error(ErrorKind::invalid_argument, "CSV lacks the column " + name);
    };
    const int cd = col("delta");
    const int cs = col("sigma_min");
    const int cf = col("floor_hit");
    std::ostringstream o;
    o << "set datafile separator ','\n"
      << "set logscale xy\n"
      << "set format xy '10^{%T}'\n"
      << "set xlabel 'delta'\n"
      << "set ylabel 'sigma_min'\n"
      << "set key left top\n"
      << "C = 1e3\n"
      << "plot '" << csv_path << "' every ::1 using " << cd << ":($" << cf << " == 0 ? $" << cs
      << " : 1/0) with linespoints title 'sigma_min'";
    for (int k : slopes) o << ", \\\n     C*x**" << k << " with lines dashtype 2 title 'C delta^" << k << "'";
    o << '\n';
    return o.str();
}

}  // namespace sigmalab
