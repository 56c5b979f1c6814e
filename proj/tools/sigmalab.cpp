// Command-line front end: sigma, sweep, tables, verify, plot.

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sigmalab/error.hpp"
#include "sigmalab/experiments.hpp"
#include "sigmalab/io.hpp"
#include "sigmalab/operators.hpp"
#include "sigmalab/rng.hpp"
#include "sigmalab/verify.hpp"

using namespace sigmalab;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;
constexpr int kExitViolation = 4;

// Scenario flags shared by `sigma`; every set flag overrides the config file.
struct ScenarioFlags {
    std::string config;
    std::string scenario, shape, mode;
    int lambda = 0, d = 0, rho = 0, clumps = 0;
    double m = 0, gap = 0;
    std::int64_t seed = -1;
    std::vector<std::string> bounds;

    void add(CLI::App* cmd)
    {
        cmd->add_option("-c,--config", config, "JSON config file")->check(CLI::ExistingFile);
        cmd->add_option("--scenario", scenario, "line|triangle|parabola|generic|clumps|custom");
        cmd->add_option("--lambda", lambda, "points per scenario (or per clump)");
        cmd->add_option("-d,--dim", d, "dimension (2..4)");
        cmd->add_option("-m,--radius", m, "frequency radius m");
        cmd->add_option("--shape", shape, "ball|cube");
        cmd->add_option("--mode", mode, "discrete|continuous");
        cmd->add_option("--rho", rho, "oversampling factor (discrete)");
        cmd->add_option("--seed", seed, "RNG seed (generic scenario)");
        cmd->add_option("--clumps", clumps, "number of clumps");
        cmd->add_option("--gap", gap, "distance between clump centers");
        cmd->add_option("--bounds", bounds, "theorems to evaluate, e.g. sr_cube hyper_ball")->delimiter(',');
    }

    Json merged() const
    {
        Json j = Json::object();
        if (!config.empty()) {
            std::ifstream in(config);
            try {
                j = Json::parse(in);
            } catch (const nlohmann::json::exception& e) {
                throw Error(ErrorKind::invalid_argument, std::string("config is not valid JSON: ") + e.what());
            }
        }
        if (!scenario.empty()) j["scenario"] = scenario;
        if (!shape.empty()) j["shape"] = shape;
        if (!mode.empty()) j["mode"] = mode;
        if (lambda) j["lambda"] = lambda;
        if (d) j["d"] = d;
        if (rho) j["rho"] = rho;
        if (clumps) j["clumps"] = clumps;
        if (m > 0) j["m"] = m;
        if (gap > 0) j["gap"] = gap;
        if (seed >= 0) j["seed"] = seed;
        if (!bounds.empty()) j["bounds"] = bounds;
        return j;
    }
};

std::vector<std::string> theorem_names(const std::vector<Theorem>& ts)
{
    std::vector<std::string> out;
    for (Theorem t : ts) out.push_back(to_string(t));
    return out;
}

Json metadata(const RunConfig& c)
{
    const ScenarioSpec& s = c.scenario;
    return {{"rng", kRngAlgorithm},        {"scenario", to_string(s.kind)}, {"lambda", s.lambda},
            {"d", s.d},                    {"m", number(s.m)},              {"shape", s.shape == Shape::Ball ? "ball" : "cube"},
            {"mode", s.mode == Sampling::Discrete ? "discrete" : "continuous"},
            {"rho", s.rho},                {"seed", s.seed},                {"trials", c.trials},
            {"bounds", theorem_names(c.bounds)}};
}

int run_sigma(const ScenarioFlags& flags, double delta, std::uint64_t trial)
{
    RunConfig c = parse_config(flags.merged());
    c.scenario.trial = trial;
    const PointSet X = generate_scenario(c.scenario, delta);
    const FrequencyDomain D = c.scenario.domain();
    const OperatorKind op = D.discrete_mode() ? OperatorKind::Discrete : OperatorKind::Continuous;
    Json out = metadata(c);
    out["trial"] = trial;
    out["delta"] = number(delta);
    out["domain"] = to_json(D);
    out["points"] = to_json(X);
    out["spectrum"] = to_json(measure_spectrum(D, X));
    Json bounds = Json::array();
    for (Theorem t : c.bounds) {
        try {
            bounds.push_back(to_json(best_over_tau(t, c.scenario.m, X, default_parameter(t, X.dim()), op)));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::budget) throw;
            bounds.push_back({{"theorem", to_string(t)}, {"applicable", false}, {"error", e.what()}});
        }
    }
    out["bounds"] = bounds;
    std::cout << out.dump(2) << '\n';
    return 0;
}

int run_sweep(const std::string& config, const std::string& out_path, unsigned threads)
{
    const RunConfig c = load_config(config);
    std::vector<SweepRecord> all;
    Json fits = Json::array();
    for (int trial = 0; trial < c.trials; ++trial) {
        ScenarioSpec spec = c.scenario;
        spec.trial = static_cast<std::uint64_t>(trial);
        auto records = sweep(spec, c.deltas, c.bounds, threads);
        Json fit = {{"trial", trial}};
        try {
            const SlopeFit f = fit_slope(records, kFitWindowLo, kFitWindowHi);
            fit["slope"] = number(f.slope);
            fit["r_squared"] = number(f.r_squared);
            fit["points"] = f.points;
        } catch (const Error& e) {
            fit["error"] = e.what();
        }
        fits.push_back(fit);
        all.insert(all.end(), records.begin(), records.end());
    }
    for (const auto& r : all)
        if (!r.error.empty()) std::cerr << "delta " << r.delta << ": " << r.error << '\n';

    if (out_path.empty()) {
        write_sweep_csv(all, c.bounds, std::cout, c.trials > 1);
        return 0;
    }
    std::ofstream os(out_path);
    require(os.good(), "cannot write " + out_path);
    write_sweep_csv(all, c.bounds, os, c.trials > 1);
    Json meta = metadata(c);
    meta["fit_window"] = {kFitWindowLo, kFitWindowHi};
    meta["fits"] = fits;
    std::ofstream(out_path + ".meta.json") << meta.dump(2) << '\n';
    return 0;
}

int run_verify(double scale, std::uint64_t seed, const std::vector<std::string>& only)
{
    const VerifyCounts counts = VerifyCounts{}.scaled(scale);
    using Suite = std::function<SuiteResult()>;
    const std::vector<std::pair<std::string, Suite>> suites = {
        {"singleton", [&] { return verify_singleton(counts.singleton, seed); }},
        {"gram", [&] { return verify_gram_oracle(counts.gram, seed); }},
        {"soundness", [&] { return verify_bound_soundness(counts.soundness, seed); }},
        {"quantization", [&] { return verify_quantization(counts.quantization, seed); }},
        {"interpolants", [&] { return verify_interpolants(counts.interpolants, seed); }},
        {"duality", [&] { return verify_duality(counts.duality, seed); }},
        {"structural", [&] { return verify_structural(counts.structural, seed); }},
    };
    for (const auto& name : only) {
        bool known = false;
        for (const auto& s : suites) known = known || s.first == name;
        require(known, "unknown suite '" + name + "'");
    }
    bool all_ok = true;
    for (const auto& [name, run] : suites) {
        if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
        const SuiteResult r = run();
        all_ok = all_ok && r.passed;
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " checked=" << r.checked << " failures=" << r.failures
                  << " time=" << std::fixed << std::setprecision(1) << r.seconds << "s  " << r.detail << '\n';
        std::cout.unsetf(std::ios::fixed);
    }
    return all_ok ? 0 : kExitViolation;
}

int run_plot(const std::string& csv, const std::vector<int>& slopes, const std::string& out_path)
{
    std::ifstream in(csv);
    require(in.good(), "cannot open " + csv);
    std::string header;
    std::getline(in, header);
    const std::string script = emit_plotscript(csv, header, slopes);
    if (out_path.empty()) {
        std::cout << script;
    } else {
        std::ofstream os(out_path);
        require(os.good(), "cannot write " + out_path);
        os << script;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Singular values of multivariate nonharmonic Fourier matrices"};
    app.require_subcommand(1);

    ScenarioFlags sigma_flags;
    double delta = 1e-2;
    std::uint64_t trial = 0;
    auto* sigma_cmd = app.add_subcommand("sigma", "spectrum and lower bounds for one instance, as JSON");
    sigma_flags.add(sigma_cmd);
    sigma_cmd->add_option("--delta", delta, "scale of the scenario")->check(CLI::PositiveNumber);
    sigma_cmd->add_option("--trial", trial, "trial index (generic scenario)");

    std::string sweep_config, sweep_out;
    unsigned threads = 0;
    auto* sweep_cmd = app.add_subcommand("sweep", "delta sweep from a JSON config, as CSV");
    sweep_cmd->add_option("config", sweep_config, "JSON config file")->required()->check(CLI::ExistingFile);
    sweep_cmd->add_option("-o,--out", sweep_out, "CSV path (metadata goes to <path>.meta.json); stdout if absent");
    sweep_cmd->add_option("-j,--threads", threads, "worker threads (0 = hardware)");

    auto* tables_cmd = app.add_subcommand("tables", "reproduce tables as CSV");
    tables_cmd->require_subcommand(1);
    auto* prelim_cmd = tables_cmd->add_subcommand("prelim", "Bessel zero ratios and c-values for d = 2..10");
    ExponentOptions ex;
    std::string shape_name = "cube";
    auto* exp_cmd = tables_cmd->add_subcommand("exponents", "fitted decay exponents of generic dilations");
    exp_cmd->add_option("-d,--dim", ex.d, "dimension")->check(CLI::Range(2, 4));
    exp_cmd->add_option("--lambda-max", ex.lambda_max, "largest lambda")->check(CLI::Range(2, 40));
    exp_cmd->add_option("--trials", ex.trials, "trials per lambda")->check(CLI::PositiveNumber);
    exp_cmd->add_option("--seed", ex.seed, "RNG seed");
    exp_cmd->add_option("-m,--radius", ex.m, "frequency radius")->check(CLI::PositiveNumber);
    exp_cmd->add_option("--shape", shape_name, "ball|cube")->check(CLI::IsMember({"ball", "cube"}));
    exp_cmd->add_option("--grid", ex.grid, "points of the 1e-1..1e-3 delta grid")->check(CLI::Range(4, 1000));
    exp_cmd->add_option("-j,--threads", ex.threads, "worker threads (0 = hardware)");

    double scale = 1;
    std::uint64_t verify_seed = 1;
    std::vector<std::string> only;
    auto* verify_cmd = app.add_subcommand("verify", "run the randomized property suites");
    verify_cmd->add_option("--scale", scale, "multiply every instance count")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", verify_seed, "RNG seed");
    verify_cmd->add_option("--suite", only,
                           "singleton|gram|soundness|quantization|interpolants|duality|structural (repeatable)");

    std::string plot_csv, plot_out;
    std::vector<int> slopes;
    auto* plot_cmd = app.add_subcommand("plot", "gnuplot script for a sweep CSV");
    plot_cmd->add_option("csv", plot_csv, "sweep CSV")->required();
    plot_cmd->add_option("-k,--slope", slopes, "reference slopes C delta^k")->delimiter(',');
    plot_cmd->add_option("-o,--out", plot_out, "script path; stdout if absent");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*sigma_cmd) return run_sigma(sigma_flags, delta, trial);
        if (*sweep_cmd) return run_sweep(sweep_config, sweep_out, threads);
        if (*prelim_cmd) {
            write_table_prelim_csv(std::cout);
            return 0;
        }
        if (*exp_cmd) {
            ex.shape = shape_name == "ball" ? Shape::Ball : Shape::Cube;
            write_table_exponents_csv(table_exponents(ex), std::cout);
            return 0;
        }
        if (*verify_cmd) return run_verify(scale, verify_seed, only);
        if (*plot_cmd) return run_plot(plot_csv, slopes, plot_out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.kind()) {
        case ErrorKind::invalid_argument: return kExitConfig;
        case ErrorKind::budget: return kExitBudget;
        default: return 1;
        }
    }
    return 0;
}
