#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "eptopo/sphere.hpp"

using namespace eptopo;

TEST_CASE("poles", "[sphere]")
{
    const auto south = project({0.0, 0.0, -1.0});
    REQUIRE_FALSE(south.is_infinity);
    CHECK(south.point.n == 0.0);
    CHECK(south.point.chi == 0.0);

    CHECK(project({0.0, 0.0, 1.0}).is_infinity);

    const SpherePoint sp = unproject({0.0, 0.0});
    CHECK(sp.n == 0.0);
    CHECK(sp.chi == 0.0);
    CHECK(sp.xi == -1.0);
}

// The four published microcavity EP coordinate sets. The sphere-side
// inputs below are only quoted to three decimals, so the plane-side
// comparison carries the amplified rounding (factor ~1/(1-xi)).
TEST_CASE("published EP coordinates", "[sphere]")
{
    const PlanePoint ep1_plane{2.6257, 0.6001};
    const PlanePoint ep2_plane{2.9036, 0.5372};
    const SpherePoint ep1_sphere{0.636, 0.145, 0.758};
    const SpherePoint ep2_sphere{0.598, 0.111, 0.795};

    const SpherePoint u1 = unproject(ep1_plane);
    CHECK(std::abs(u1.n - ep1_sphere.n) <= 1e-3);
    CHECK(std::abs(u1.chi - ep1_sphere.chi) <= 1e-3);
    CHECK(std::abs(u1.xi - ep1_sphere.xi) <= 1e-3);

    const SpherePoint u2 = unproject(ep2_plane);
    CHECK(std::abs(u2.n - ep2_sphere.n) <= 1e-3);
    CHECK(std::abs(u2.chi - ep2_sphere.chi) <= 1e-3);
    CHECK(std::abs(u2.xi - ep2_sphere.xi) <= 1e-3);

    const auto p1 = project(ep1_sphere);
    REQUIRE_FALSE(p1.is_infinity);
    CHECK(std::abs(p1.point.n - ep1_plane.n) <= 5e-3);
    CHECK(std::abs(p1.point.chi - ep1_plane.chi) <= 5e-3);

    // EP2's quoted xi is itself off by ~8e-4, which the 1/(1-xi) factor
    // stretches to ~1e-2 on the plane side
    const auto p2 = project(ep2_sphere);
    REQUIRE_FALSE(p2.is_infinity);
    CHECK(std::abs(p2.point.n - ep2_plane.n) <= 2e-2);
    CHECK(std::abs(p2.point.chi - ep2_plane.chi) <= 2e-2);
}

TEST_CASE("round trips", "[sphere][property]")
{
    std::mt19937_64 rng{31};
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    for (int i = 0; i < 10000; ++i) {
        const PlanePoint q{coord(rng), coord(rng)};
        const SpherePoint s = unproject(q);
        CHECK(sphere_norm_residual(s) < 1e-12);
        const auto back = project(s);
        REQUIRE_FALSE(back.is_infinity);
        CHECK(std::abs(back.point.n - q.n) < 1e-12 * std::max(1.0, std::abs(q.n)));
        CHECK(std::abs(back.point.chi - q.chi) < 1e-12 * std::max(1.0, std::abs(q.chi)));
    }

    // sphere -> plane -> sphere away from the pole
    std::uniform_real_distribution<double> angle(0.0, 6.2831853);
    std::uniform_real_distribution<double> height(-0.999, 0.9);
    for (int i = 0; i < 2000; ++i) {
        const double xi = height(rng);
        const double rho = std::sqrt(1.0 - xi * xi);
        const double th = angle(rng);
        const SpherePoint s{rho * std::cos(th), rho * std::sin(th), xi};
        const auto q = project(s);
        REQUIRE_FALSE(q.is_infinity);
        const SpherePoint back = unproject(q.point);
        CHECK(std::abs(back.n - s.n) < 1e-12);
        CHECK(std::abs(back.chi - s.chi) < 1e-12);
        CHECK(std::abs(back.xi - s.xi) < 1e-12);
    }
}

TEST_CASE("unproject rejects non-finite input", "[sphere]")
{
    CHECK_THROWS_AS(unproject({std::nan(""), 0.0}), std::invalid_argument);
}

TEST_CASE("curve projection splits at infinity", "[sphere]")
{
    // great circle through both poles, sampled to hit the north pole exactly
    std::vector<SpherePoint> arc;
    const int n = 8;
    for (int i = 0; i <= n; ++i) {
        const double th = -1.5707963267948966 + 3.141592653589793 * 2.0 * i / n;
        arc.push_back({std::cos(th), 0.0, std::sin(th)});
    }
    arc[4] = {0.0, 0.0, 1.0};  // pin the pole sample exactly

    const auto pts = project_curve(arc);
    REQUIRE(pts.size() == arc.size());
    CHECK(pts[4].is_infinity);

    const auto polylines = split_at_infinity(pts);
    REQUIRE(polylines.size() == 2);
    CHECK(polylines[0].size() == 4);
    CHECK(polylines[1].size() == 4);

    CHECK(project_curve({}).empty());
    CHECK(split_at_infinity({}).empty());
}
