#include "sigmalab/io.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "sigmalab/error.hpp"

namespace sigmalab {

namespace {

const char* shape_name(Shape s) { return s == Shape::Ball ? "ball" : "cube"; }

Shape parse_shape(const std::string& s)
{
    if (s == "ball") return Shape::Ball;
    if (s == "cube") return Shape::Cube;
    throw Error(ErrorKind::invalid_argument, "unknown shape '" + s + "' (ball|cube)");
}

Sampling parse_mode(const std::string& s)
{
    if (s == "discrete") return Sampling::Discrete;
    if (s == "continuous") return Sampling::Continuous;
    throw Error(ErrorKind::invalid_argument, "unknown mode '" + s + "' (discrete|continuous)");
}

Json complex_json(cplx z) { return Json::array({number(z.real()), number(z.imag())}); }

template <class T>
T field(const Json& j, const char* name)
{
    try {
        return j.at(name).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::invalid_argument, std::string("config field '") + name + "': " + e.what());
    }
}

}  // namespace

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json to_json(const PointSet& X)
{
    Json pts = Json::array();
    for (Index k = 0; k < X.size(); ++k) {
        Json p = Json::array();
        for (double v : X[k]) p.push_back(number(v));
        pts.push_back(p);
    }
    return {{"d", X.dim()}, {"space", X.space() == Space::Torus ? "torus" : "euclidean"}, {"points", pts}};
}

PointSet point_set_from_json(const Json& j)
{
    const int d = field<int>(j, "d");
    const std::string space = j.contains("space") ? field<std::string>(j, "space") : "torus";
    require(space == "torus" || space == "euclidean", "space must be torus or euclidean");
    return PointSet(d, space == "torus" ? Space::Torus : Space::Euclidean, field<std::vector<Vec>>(j, "points"));
}

Json to_json(const FrequencyDomain& D)
{
    Json j = {{"shape", shape_name(D.shape)},
              {"m", number(D.m)},
              {"mode", D.discrete_mode() ? "discrete" : "continuous"},
              {"d", D.d}};
    if (D.discrete_mode()) j["rho"] = D.rho;
    return j;
}

Json to_json(const SpectrumReport& S)
{
    Json sv = Json::array();
    for (double v : S.singular_values) sv.push_back(number(v));
    return {{"sigma_min", number(S.sigma_min)},
            {"sigma_max", number(S.sigma_max)},
            {"floor_hit", S.floor_hit},
            {"converged", S.converged},
            {"route", S.route == SpectrumRoute::Direct ? "direct" : "gram"},
            {"iterations", S.iterations},
            {"residual", number(S.residual)},
            {"singular_values", sv}};
}

Json to_json(const BoundReport& R)
{
    Json hyp = Json::array();
    for (const auto& h : R.hypotheses)
        hyp.push_back({{"name", h.name},
                       {"relation", h.relation},
                       {"actual", number(h.actual)},
                       {"required", number(h.required)},
                       {"pass", h.pass}});
    Json consts = Json::object();
    for (const auto& [k, v] : R.constants) consts[k] = number(v);
    Json j = {{"theorem", to_string(R.theorem)},
              {"operator", to_string(R.op)},
              {"applicable", R.applicable},
              {"lower", number(R.lower)},
              {"upper", R.upper ? number(*R.upper) : Json(nullptr)},
              {"hypotheses", hyp},
              {"constants", consts}};
    if (!R.note.empty()) j["note"] = R.note;
    return j;
}

Json to_json(const InterpolantProduct& f)
{
    Json factors = Json::array();
    for (const auto& ph : f.factors) {
        Json fr = Json::array(), rt = Json::array();
        for (double v : ph.frequency) fr.push_back(number(v));
        for (double v : ph.root) rt.push_back(number(v));
        factors.push_back({{"frequency", fr}, {"root", rt}, {"denominator", complex_json(ph.denominator)}});
    }
    const char* kind = f.kernel == KernelKind::None ? "none" : f.kernel == KernelKind::Dirichlet ? "dirichlet" : "lowpass";
    Json center = Json::array();
    for (double v : f.center) center.push_back(number(v));
    return {{"d", f.d},
            {"center", center},
            {"factors", factors},
            {"kernel", {{"kind", kind}, {"shape", shape_name(f.kernel_shape)}, {"radius", number(f.kernel_radius)}}},
            {"certificate_p", number(f.certificate_p)},
            {"bandwidth_certificate", number(f.bandwidth_certificate)},
            {"norm_bound", number(f.norm_bound)}};
}

Json to_json(const SweepRecord& r)
{
    Json b = Json::array();
    for (const auto& v : r.bounds)
        b.push_back({{"theorem", to_string(v.theorem)}, {"applicable", v.applicable}, {"lower", number(v.lower)}});
    Json j = {{"delta", number(r.delta)},   {"sigma_min", number(r.sigma_min)}, {"sigma_max", number(r.sigma_max)},
              {"floor_hit", r.floor_hit},   {"bounds", b},                      {"lambda", r.lambda},
              {"d", r.d},                   {"m", number(r.m)},                 {"seed", r.seed},
              {"trial", r.trial}};
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

RunConfig parse_config(const Json& j)
{
    require(j.is_object(), "config must be a JSON object");
    static const std::set<std::string> known = {"scenario", "lambda", "m",      "d",      "shape",  "mode",
                                                "rho",      "deltas", "bounds", "seed",   "trials", "clumps",
                                                "gap",      "points"};
    for (const auto& [k, v] : j.items()) require(known.count(k) == 1, "unknown config field '" + k + "'");

    RunConfig c;
    ScenarioSpec& s = c.scenario;
    if (j.contains("scenario")) {
        const auto k = scenario_from_string(field<std::string>(j, "scenario"));
        require(k.has_value(), "unknown scenario (line|triangle|parabola|generic|clumps|custom)");
        s.kind = *k;
    }
    if (j.contains("lambda")) s.lambda = field<int>(j, "lambda");
    if (j.contains("m")) s.m = field<double>(j, "m");
    if (j.contains("d")) s.d = field<int>(j, "d");
    if (j.contains("shape")) s.shape = parse_shape(field<std::string>(j, "shape"));
    if (j.contains("mode")) s.mode = parse_mode(field<std::string>(j, "mode"));
    if (j.contains("rho")) s.rho = field<int>(j, "rho");
    if (j.contains("seed")) s.seed = field<std::uint64_t>(j, "seed");
    if (j.contains("clumps")) s.clumps = field<int>(j, "clumps");
    if (j.contains("gap")) s.gap = field<double>(j, "gap");
    if (j.contains("points")) s.custom = field<std::vector<Vec>>(j, "points");
    if (j.contains("trials")) c.trials = field<int>(j, "trials");
    require(s.m > 0 && std::isfinite(s.m), "m must be positive");
    require(s.d >= 2 && s.d <= 4, "d must be 2, 3 or 4");
    require(s.rho >= 1, "rho must be at least 1");
    require(s.lambda >= 1, "lambda must be positive");
    require(c.trials >= 1, "trials must be positive");
    require(s.kind != ScenarioKind::Custom || !s.custom.empty(), "custom scenario needs points");

    double hi = 1e-1, lo = 1e-3;
    int count = 24;
    if (j.contains("deltas")) {
        const Json& g = j.at("deltas");
        require(g.is_object(), "deltas must be an object {min,max,count}");
        for (const auto& [k, v] : g.items())
            require(k == "min" || k == "max" || k == "count", "unknown deltas field '" + k + "'");
        if (g.contains("min")) lo = field<double>(g, "min");
        if (g.contains("max")) hi = field<double>(g, "max");
        if (g.contains("count")) count = field<int>(g, "count");
    }
    c.deltas = geometric_grid(hi, lo, count);

    if (j.contains("bounds")) {
        for (const auto& name : field<std::vector<std::string>>(j, "bounds")) {
            const auto t = theorem_from_string(name);
            require(t.has_value(), "unknown bound '" + name + "'");
            c.bounds.push_back(*t);
        }
    }
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    require(in.good(), "cannot open config file " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::invalid_argument, std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

}  // namespace sigmalab
