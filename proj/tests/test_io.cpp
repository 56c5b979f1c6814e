#include <cmath>
#include <limits>

#include "doctest.h"
#include "sigmalab/error.hpp"
#include "sigmalab/io.hpp"

using namespace sigmalab;

TEST_SUITE("io")
{
TEST_CASE("config parsing")
{
    const RunConfig c = parse_config(Json::parse(R"({"scenario":"parabola","lambda":4,"m":30,"d":3,
        "shape":"ball","mode":"continuous","deltas":{"min":1e-3,"max":1e-2,"count":6},
        "bounds":["sr_ball","hyper_ball"],"seed":9,"trials":3})"));
    CHECK(c.scenario.kind == ScenarioKind::Parabola);
    CHECK(c.scenario.lambda == 4);
    CHECK(c.scenario.m == 30);
    CHECK(c.scenario.d == 3);
    CHECK(c.scenario.shape == Shape::Ball);
    CHECK(c.scenario.mode == Sampling::Continuous);
    CHECK(c.scenario.seed == 9);
    CHECK(c.trials == 3);
    REQUIRE(c.deltas.size() == 6);
    CHECK(c.deltas.front() == doctest::Approx(1e-2));
    CHECK(c.bounds == std::vector<Theorem>{Theorem::SRBall, Theorem::HyperBall});

    const RunConfig dflt = parse_config(Json::object());
    CHECK(dflt.deltas.size() == 24);
    CHECK(dflt.scenario.kind == ScenarioKind::Line);
}

TEST_CASE("config rejections")
{
    for (const char* bad : {R"({"lamda":3})", R"({"lambda":"three"})", R"({"shape":"disk"})", R"({"d":7})",
                            R"({"m":-1})", R"({"bounds":["sr_disk"]})", R"({"deltas":{"step":2}})",
                            R"({"scenario":"custom"})", R"([1,2])", R"({"trials":0})"}) {
        CAPTURE(bad);
        try {
            parse_config(Json::parse(bad));
            FAIL("accepted");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::invalid_argument);
        }
    }
}

TEST_CASE("round trips and null for non-finite values")
{
    const PointSet X(2, Space::Euclidean, {{0.1, -0.2}, {0.3, 0.25}});
    const PointSet Y = point_set_from_json(Json::parse(to_json(X).dump()));
    CHECK(Y.points() == X.points());
    CHECK(Y.space() == Space::Euclidean);
    CHECK(number(std::numeric_limits<double>::quiet_NaN()).is_null());
    CHECK(number(std::numeric_limits<double>::infinity()).is_null());
    CHECK(number(1.5) == 1.5);

    BoundReport R;
    R.hypotheses.push_back({"x", ">=", 1, std::numeric_limits<double>::infinity(), true});
    const Json j = to_json(R);
    CHECK(j["hypotheses"][0]["actual"].is_null());
    CHECK(j["upper"].is_null());
    CHECK(j.dump().find("inf") == std::string::npos);
    CHECK(to_json(FrequencyDomain::discrete(Shape::Cube, 3, 2, 2))["rho"] == 2);
    CHECK_FALSE(to_json(FrequencyDomain::continuous(Shape::Cube, 3, 2)).contains("rho"));
}
}
