#include <cmath>
#include <sstream>

#include "doctest.h"
#include "sigmalab/error.hpp"
#include "sigmalab/experiments.hpp"

using namespace sigmalab;

TEST_SUITE("experiments")
{
TEST_CASE("scenario coordinates")
{
    ScenarioSpec tri;
    tri.kind = ScenarioKind::Triangle;
    const PointSet T = generate_scenario(tri, 0.01);
    REQUIRE(T.size() == 3);
    CHECK(T.points() == std::vector<Vec>{{0, 0}, {0.01, 0}, {0, 0.01}});
    CHECK(T.space() == Space::Torus);

    ScenarioSpec par;
    par.kind = ScenarioKind::Parabola;
    par.lambda = 5;
    par.mode = Sampling::Continuous;
    const PointSet P = generate_scenario(par, 0.01);
    REQUIRE(P.size() == 5);
    CHECK(P.space() == Space::Euclidean);
    for (Index i = 0; i < 5; ++i) {
        const double a = (static_cast<double>(i) - 2) * 0.01;
        CHECK(P[i][0] == doctest::Approx(a));
        CHECK(P[i][1] == doctest::Approx(a * a));
    }

    ScenarioSpec line;
    line.lambda = 2;
    line.d = 3;
    CHECK(generate_scenario(line, 0.1).points() == std::vector<Vec>{{0, 0, 0}, {0.1, 0, 0}});

    ScenarioSpec cl;
    cl.kind = ScenarioKind::Clumps;
    cl.lambda = 2;
    cl.clumps = 2;
    cl.gap = 0.25;
    CHECK(generate_scenario(cl, 0.01).points() == std::vector<Vec>{{0, 0}, {0, 0.01}, {0.25, 0}, {0.25, 0.01}});

    line.lambda = 10;
    CHECK_THROWS_AS(generate_scenario(line, 0.1), Error);  // leaves the unit cell
    CHECK(scenario_from_string(to_string(ScenarioKind::Generic)) == ScenarioKind::Generic);
}

TEST_CASE("generic scenarios are reproducible per trial")
{
    ScenarioSpec g;
    g.kind = ScenarioKind::Generic;
    g.lambda = 6;
    g.d = 3;
    g.seed = 7;
    g.trial = 2;
    const auto a = generate_scenario(g, 0.5).points();
    const auto b = generate_scenario(g, 0.5).points();
    CHECK(a == b);
    // dilation: same draw scaled
    const auto c = generate_scenario(g, 0.05).points();
    for (std::size_t i = 0; i < a.size(); ++i)
        for (int l = 0; l < 3; ++l) {
            CHECK(c[i][l] == doctest::Approx(a[i][l] / 10).epsilon(1e-14));
            CHECK(std::abs(a[i][l]) <= 0.5 / g.m);
        }
    g.trial = 3;
    CHECK(generate_scenario(g, 0.5).points() != a);
}

TEST_CASE("geometric grid")
{
    const auto G = geometric_grid(1e-1, 1e-3, 24);
    REQUIRE(G.size() == 24);
    CHECK(G.front() == doctest::Approx(1e-1));
    CHECK(G.back() == doctest::Approx(1e-3));
    for (std::size_t i = 1; i < G.size(); ++i) {
        CHECK(G[i] < G[i - 1]);
        CHECK(G[i] / G[i - 1] == doctest::Approx(std::pow(1e-2, 1.0 / 23)));
    }
    CHECK_THROWS_AS(geometric_grid(1, 2, 5), Error);
    CHECK_THROWS_AS(geometric_grid(1, 0.1, 1), Error);
}

TEST_CASE("slope fitting")
{
    std::vector<SweepRecord> recs;
    for (double delta : geometric_grid(1e-1, 1e-3, 24)) {
        SweepRecord r;
        r.delta = delta;
        r.sigma_min = 5 * delta * delta * delta;
        recs.push_back(r);
    }
    const SlopeFit f = fit_slope(recs, kFitWindowLo, kFitWindowHi);
    CHECK(f.slope == doctest::Approx(3).epsilon(1e-9));
    CHECK(std::exp(f.intercept) == doctest::Approx(5).epsilon(1e-9));
    CHECK(f.r_squared == doctest::Approx(1));
    CHECK(f.points == 12);
    // floor hits and errors are skipped
    for (auto& r : recs)
        if (r.delta < 2e-3) {
            r.floor_hit = true;
            r.sigma_min = 1e-30;
        }
    recs[10].error = "boom";
    recs[10].sigma_min = 0;
    const SlopeFit g = fit_slope(recs, kFitWindowLo, kFitWindowHi);
    CHECK(g.slope == doctest::Approx(3).epsilon(1e-9));
    CHECK(g.points < 12);
    CHECK_THROWS_AS(fit_slope(recs, 0.05, 0.06), Error);
}

TEST_CASE("sweep CSV and thread independence")
{
    ScenarioSpec s;
    s.kind = ScenarioKind::Line;
    s.lambda = 2;
    s.m = 10;
    const auto deltas = geometric_grid(1e-1, 1e-2, 5);
    const std::vector<Theorem> bounds{Theorem::WellSepCube, Theorem::SRCube};
    const auto a = sweep(s, deltas, bounds, 1);
    const auto b = sweep(s, deltas, bounds, 3);
    std::ostringstream oa, ob;
    write_sweep_csv(a, bounds, oa);
    write_sweep_csv(b, bounds, ob);
    CHECK(oa.str() == ob.str());
    const std::string header = oa.str().substr(0, oa.str().find('\n'));
    CHECK(header == "delta,sigma_min,floor_hit,wellsep_cube_applicable,wellsep_cube_lower,sr_cube_applicable,sr_cube_lower");
    std::ostringstream ot;
    write_sweep_csv(a, bounds, ot, true);
    CHECK(ot.str().substr(0, ot.str().find('\n')) == header + ",trial");
    // sigma_min decreases with delta for two nodes
    for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i].sigma_min < a[i - 1].sigma_min);
    CHECK_THROWS_AS(sweep(s, {1e-2, 1e-1}, bounds, 1), Error);
}

TEST_CASE("plot script")
{
    const std::string script = emit_plotscript("run.csv", "delta,sigma_min,floor_hit,x", {1, 3});
    CHECK(script.find("set logscale xy") != std::string::npos);
    CHECK(script.find("'run.csv'") != std::string::npos);
    CHECK(script.find("using 1:($3 == 0 ? $2 : 1/0)") != std::string::npos);
    CHECK(script.find("C*x**3") != std::string::npos);
    CHECK(script.find("C = 1e3") != std::string::npos);
    CHECK_THROWS_AS(emit_plotscript("run.csv", "delta,floor_hit", {1}), Error);
}

TEST_CASE("preliminary table")
{
    std::ostringstream os;
    write_table_prelim_csv(os);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "d,alpha_critical,alpha_saturation,sqrt_c_saturated,sqrt_c_interior_limit");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 9);
    CHECK(os.str().find("2,0.765") != std::string::npos);
}
}
