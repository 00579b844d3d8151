#include <doctest.h>

#include <cmath>
#include <numbers>

#include "msw/exact_ot.hpp"
#include "msw/max_sw.hpp"
#include "msw/ot1d.hpp"
#include "msw/rng.hpp"
#include "msw/sphere.hpp"
#include "test_util.hpp"

using msw::AscentConfig;
using msw::Direction;
using msw::EmpiricalMeasure;

namespace {

double projected_w(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const Direction& theta,
                   double p) {
    return msw::wasserstein_1d(msw::project(mu, theta), msw::project(nu, theta), p);
}

// Dense sweep over angles; oracle for 2D argmax problems.
double grid_search_max(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, double p) {
    double best = 0.0;
    for (int g = 0; g < 10000; ++g) {
        double a = 2.0 * std::numbers::pi * g / 10000.0;
        best = std::max(best, projected_w(mu, nu, Direction{{std::cos(a), std::sin(a)}}, p));
    }
    return best;
}

}  // namespace

TEST_CASE("identical measures stay at zero") {
    auto mu = testutil::random_cloud(8, 2, 301);
    auto res = msw::max_sw(mu, mu, 2.0, {50, 0.1, 3});
    CHECK(res.distance == doctest::Approx(0.0));
}

TEST_CASE("point-mass pair: ascent finds the separating axis") {
    double c = 2.0;
    auto mu = EmpiricalMeasure::uniform(1, 2, {0, 0});
    auto nu = EmpiricalMeasure::uniform(1, 2, {c, 0});
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto res = msw::max_sw(mu, nu, 2.0, {50, 0.1, seed});
        CHECK(std::abs(res.direction[0]) > std::cos(0.01));  // within 0.01 rad of +-e1
        CHECK(res.distance == doctest::Approx(c).epsilon(1e-4));
    }
    CHECK(grid_search_max(mu, nu, 2.0) == doctest::Approx(c).epsilon(1e-6));
}

TEST_CASE("d=1 collapses to the 1D distance") {
    auto mu = testutil::random_cloud(10, 1, 302);
    auto nu = testutil::random_cloud(10, 1, 303, 1.0, 2.0);
    double w = msw::wasserstein_1d(msw::project(mu, Direction{{1}}),
                                   msw::project(nu, Direction{{1}}), 2.0);
    for (int steps : {1, 5, 40}) {
        auto res = msw::max_sw(mu, nu, 2.0, {steps, 0.1, 7});
        CHECK(res.distance == doctest::Approx(w).epsilon(1e-12));
    }
}

TEST_CASE("endpoint objective dominates the start, and the exact distance dominates both") {
    for (int trial = 0; trial < 15; ++trial) {
        auto mu = testutil::random_cloud(12, 3, 5100 + trial);
        auto nu = testutil::random_cloud(12, 3, 5200 + trial, 1.2, 0.7);
        AscentConfig cfg{30, 0.1, static_cast<std::uint64_t>(trial)};

        msw::RngStream rng(cfg.seed, 0);
        Direction theta0 = msw::sample_uniform_sphere(3, rng);
        double at_start = projected_w(mu, nu, theta0, 2.0);

        auto res = msw::max_sw(mu, nu, 2.0, cfg);
        CHECK(res.distance >= at_start - 1e-9);
        CHECK(res.distance <= msw::exact_wasserstein(mu, nu, 2.0) + 1e-9);
        double norm_err = std::abs(
            msw::norm(std::span<const double>(res.direction.coords.data(), 3)) - 1.0);
        CHECK(norm_err < 1e-9);
    }
}

TEST_CASE("max_ksw identical measures and K=1 reduction") {
    auto mu = testutil::random_cloud(9, 3, 304);
    auto nu = testutil::random_cloud(9, 3, 305, 1.0, 0.9);

    CHECK(msw::max_ksw(mu, mu, 2.0, 2, {20, 0.1, 1}).distance == doctest::Approx(0.0));

    AscentConfig cfg{25, 0.1, 11};
    auto k1 = msw::max_ksw(mu, nu, 2.0, 1, cfg);
    auto plain = msw::max_sw(mu, nu, 2.0, cfg);
    CHECK(k1.directions[0].coords == plain.direction.coords);  // bitwise trajectory
    CHECK(k1.distance == plain.distance);
}

TEST_CASE("max_ksw with a full 2D basis matches the rotation grid oracle") {
    double c = 2.0;
    auto mu = EmpiricalMeasure::uniform(1, 2, {0, 0});
    auto nu = EmpiricalMeasure::uniform(1, 2, {c, 0});

    // objective over an orthonormal pair ((cos a, sin a), (-sin a, cos a)):
    // ((c^2 cos^2 + c^2 sin^2)/2)^(1/2) = c/sqrt(2) for every angle
    double oracle = 0.0;
    for (int g = 0; g < 10000; ++g) {
        double a = 2.0 * std::numbers::pi * g / 10000.0;
        double v = std::sqrt((c * c * std::cos(a) * std::cos(a) +
                              c * c * std::sin(a) * std::sin(a)) /
                             2.0);
        oracle = std::max(oracle, v);
    }
    auto res = msw::max_ksw(mu, nu, 2.0, 2, {100, 0.1, 5});
    CHECK(res.distance == doctest::Approx(oracle).epsilon(0.02));
    CHECK(std::abs(msw::dot(res.directions[0], res.directions[1])) < 1e-9);
}

TEST_CASE("ascent configuration validation") {
    auto mu = testutil::random_cloud(4, 2, 306);
    CHECK_THROWS_AS(msw::max_sw(mu, mu, 2.0, {0, 0.1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(msw::max_sw(mu, mu, 2.0, {5, -1.0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(msw::max_ksw(mu, mu, 2.0, 3, {5, 0.1, 1}), std::invalid_argument);
}
