#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "svcalc/compact_set.hpp"
#include "test_util.hpp"

using svc::CompactSet;
using svc::Point;
using testutil::cs;
using testutil::cs1;

TEST_CASE("canonical form sorts lexicographically and deduplicates") {
    CompactSet a = cs({{1.0}, {0.5}, {1.0}, {0.5}});
    REQUIRE(a.size() == 2);
    CHECK(a[0] == Point{0.5});
    CHECK(a[1] == Point{1.0});

    CompactSet b = cs({{0.5}, {1.0}});
    CHECK(a == b);
    CHECK(a != cs1({0.5}));
}

TEST_CASE("near-duplicates merge to the lexicographically smallest representative") {
    CompactSet a = cs({{1.0 + 1e-13}, {1.0}}, 1e-12);
    REQUIRE(a.size() == 1);
    CHECK(a[0][0] == 1.0);

    // No chained merging: each kept point starts a fresh cluster.
    CompactSet b = cs({{0.0}, {0.9e-12}, {1.8e-12}}, 1e-12);
    REQUIRE(b.size() == 2);
    CHECK(b[0][0] == 0.0);
    CHECK(b[1][0] == 1.8e-12);
}

TEST_CASE("negative zero is normalized") {
    CompactSet a = cs({{-0.0}});
    CHECK(std::signbit(a[0][0]) == false);
    CHECK(a == cs1({0.0}));
    CHECK(cs({{-0.0}, {0.0}}).size() == 1);
}

TEST_CASE("construction rejects bad input") {
    CHECK_THROWS_AS(cs({}), std::invalid_argument);
    CHECK_THROWS_AS(cs({{1.0}, {1.0, 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(cs({{std::nan("")}}), std::invalid_argument);
    CHECK_THROWS_AS(cs({{1.0, std::numeric_limits<double>::infinity()}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(cs({Point{}}), std::invalid_argument);
    CHECK_THROWS_AS(cs({{1.0}}, -1.0), std::invalid_argument);
}

TEST_CASE("find locates points within tolerance") {
    CompactSet a = cs({{0.0}, {0.5}, {1.0}});
    CHECK(a.find({0.5}, 1e-12).value() == 1);
    CHECK(a.find({0.5 + 1e-13}, 1e-12).value() == 1);
    CHECK(!a.find({0.25}, 1e-12).has_value());

    CompactSet b = cs({{0.0, 0.0}, {1.0, 1.0}});
    CHECK(b.find({1.0, 1.0 + 1e-13}, 1e-12).value() == 1);
    CHECK(!b.find({1.0, 1.1}, 1e-12).has_value());
}

TEST_CASE("set_union merges and re-canonicalizes") {
    CompactSet u = svc::set_union({cs1({0.0, 1.0}), cs1({1.0, 2.0})}, 1e-12);
    CHECK(u == cs1({0.0, 1.0, 2.0}));
    CHECK_THROWS_AS(svc::set_union({}, 1e-12), std::invalid_argument);
}

TEST_CASE("set_norm and set_extent") {
    CHECK(svc::set_norm(cs({{3.0, 4.0}})) == 5.0);
    CHECK(svc::set_norm(cs1({-2.0, 1.0})) == 2.0);
    CHECK(svc::set_extent(cs1({7.0})) == 0.0);
    CHECK(svc::set_extent(cs1({0.0, 0.25, 1.0})) == 1.0);
    CHECK(svc::set_extent(cs({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}})) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("scale_translate") {
    CompactSet a = cs1({0.0, 1.0});
    CHECK(svc::scale_translate(a, 2.0, {1.0}) == cs1({1.0, 3.0}));
    CHECK(svc::scale_translate(a, 0.0, {5.0}) == cs1({5.0}));
    CHECK(svc::scale_translate(a, -1.0, {0.0}) == cs1({-1.0, 0.0}));
    CHECK_THROWS_AS(svc::scale_translate(a, 1.0, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("canonical form is input-order independent") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto pts = testutil::random_points(rng, 2, 17);
        auto shuffled = pts;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(CompactSet(pts) == CompactSet(shuffled));
    }
}
