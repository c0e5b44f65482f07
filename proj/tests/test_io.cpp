#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "svcalc/calculus.hpp"
#include "svcalc/io.hpp"
#include "svcalc/svf.hpp"
#include "test_util.hpp"

namespace svc = ::svc;

TEST_CASE("format_double survives a strtod round trip") {
    const double values[] = {0.0,   1.0,       -1.0,        0.1,    1.0 / 3.0, 1e-300,
                             1e300, 0.1 + 0.2, 4.9e-324,    -0.375, 2.5e-17,   1e22,
                             M_PI,  -M_PI,     6.02214076e23};
    for (double v : values) {
        CHECK(std::strtod(svc::format_double(v).c_str(), nullptr) == v);
    }
    // Prefers the short form when it is faithful.
    CHECK(svc::format_double(0.5) == "0.5");
    CHECK(svc::format_double(1.0) == "1");
}

TEST_CASE("compact set JSON round trip is bit exact") {
    std::mt19937 rng(4242);
    for (int dim : {1, 2, 3}) {
        for (int t = 0; t < 25; ++t) {
            auto pts = testutil::random_points(rng, dim, 1 + t % 9);
            auto a = testutil::cs(pts);
            auto j = svc::to_json(a);
            REQUIRE(j.is_array());
            CHECK(j.size() == a.size());
            CHECK(svc::compact_set_from_json(j) == a);
            // Survives serialization to text and back as well.
            CHECK(svc::compact_set_from_json(nlohmann::json::parse(j.dump())) == a);
        }
    }
    // Awkward representations.
    auto a = testutil::cs1({0.1, 1.0 / 3.0, 1e-300, 0.1 + 0.2});
    CHECK(svc::compact_set_from_json(nlohmann::json::parse(svc::to_json(a).dump())) == a);
}

TEST_CASE("compact set JSON accepts scalars for one-dimensional sets") {
    auto j = nlohmann::json::parse("[1.5, -2.0, 0.25]");
    CHECK(svc::compact_set_from_json(j) == testutil::cs1({-2.0, 0.25, 1.5}));

    CHECK_THROWS_AS(svc::compact_set_from_json(nlohmann::json::parse("[]")),
                    std::invalid_argument);
    CHECK_THROWS_AS(svc::compact_set_from_json(nlohmann::json::parse("{\"a\": 1}")),
                    std::invalid_argument);
    CHECK_THROWS_AS(svc::compact_set_from_json(nlohmann::json::parse("[[1, 2], [3]]")),
                    std::invalid_argument);
    CHECK_THROWS_AS(svc::compact_set_from_json(nlohmann::json::parse("[[1], \"x\"]")),
                    std::invalid_argument);
}

TEST_CASE("compact set text round trip is bit exact") {
    std::mt19937 rng(777);
    for (int dim : {1, 3}) {
        for (int t = 0; t < 20; ++t) {
            auto a = testutil::cs(testutil::random_points(rng, dim, 1 + t % 7));
            CHECK(svc::compact_set_from_text(svc::to_text(a)) == a);
        }
    }
    auto one = testutil::cs({{0.1, 0.2}, {1.0 / 3.0, -7.25}});
    auto text = svc::to_text(one);
    CHECK(svc::compact_set_from_text(text) == one);

    CHECK_THROWS_AS(svc::compact_set_from_text(""), std::invalid_argument);
    CHECK_THROWS_AS(svc::compact_set_from_text("1 2\n3\n"), std::invalid_argument);
    CHECK_THROWS_AS(svc::compact_set_from_text("1 banana\n"), std::invalid_argument);
}

TEST_CASE("metric pairs serialize as index-free point pairs") {
    auto a = testutil::cs1({0.0, 3.0});
    auto b = testutil::cs1({1.0});
    auto j = svc::to_json(svc::metric_pairs(a, b));
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 2);
    CHECK(j[0][0] == nlohmann::json::parse("[0.0]"));
    CHECK(j[0][1] == nlohmann::json::parse("[1.0]"));
    CHECK(j[1][0] == nlohmann::json::parse("[3.0]"));
    CHECK(j[1][1] == nlohmann::json::parse("[1.0]"));
}

TEST_CASE("derivative field JSON carries anchors, residual trails and flags") {
    auto f = svc::gallery("interval_growth", {});
    svc::HLadder lad{0.5, 0.5, 2, 1e-6};
    auto fld = svc::one_sided_derivative(f, 0.0, svc::Side::right, lad, 0.25, 8);
    auto j = svc::to_json(fld);
    CHECK(j["x0"] == 0.0);
    CHECK(j["side"] == "right");
    CHECK(j["resolution"] == 8);
    CHECK(j["converged"] == true);
    REQUIRE(j["anchors"].is_array());
    REQUIRE(j["anchors"].size() == 9);
    const auto& top = j["anchors"].back();
    CHECK(top["y"] == nlohmann::json::parse("[1.0]"));
    CHECK(top["derivative_points"] == nlohmann::json::parse("[[0.0], [0.5], [1.0]]"));
    CHECK(top["converged"] == true);
    CHECK(top["residuals"].size() == 1);
}

TEST_CASE("order fit JSON uses null for the exact sentinel") {
    std::vector<svc::ErrorSample> zeros = {{0.5, 0.0}, {0.25, 0.0}, {0.125, 0.0}};
    auto exact = svc::to_json(svc::fit_order(zeros));
    CHECK(exact["slope"].is_null());
    CHECK(exact["rungs_used"] == 0);

    std::vector<svc::ErrorSample> samples;
    for (int k = 0; k < 5; ++k) {
        double h = std::pow(2.0, -k);
        samples.push_back({h, h * h});
    }
    auto j = svc::to_json(svc::fit_order(samples));
    CHECK(j["slope"].get<double>() == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(j["rungs_used"] == 5);
    CHECK(j["h_max"] == 1.0);
    CHECK(j["h_min"] == 0.0625);
    CHECK(j.contains("intercept"));
    CHECK(j.contains("rms_residual"));
}

TEST_CASE("error curve serialization") {
    svc::ErrorCurve curve;
    curve.x0 = 0.5;
    curve.side = svc::CurveSide::right;
    curve.samples = {{0.5, 0.25}, {0.25, 0.0625}};
    auto j = svc::to_json(curve);
    CHECK(j["x0"] == 0.5);
    CHECK(j["side"] == "right");
    REQUIRE(j["samples"].size() == 2);
    CHECK(j["samples"][0]["h"] == 0.5);
    CHECK(j["samples"][0]["err"] == 0.25);

    CHECK(svc::to_csv(curve) == "h,err\n0.5,0.25\n0.25,0.0625\n");
}
