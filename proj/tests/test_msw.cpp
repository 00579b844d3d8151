#include <doctest.h>

#include <cmath>

#include "msw/exact_ot.hpp"
#include "msw/msw.hpp"
#include "msw/ot1d.hpp"
#include "msw/sphere.hpp"
#include "msw/sw_family.hpp"
#include "test_util.hpp"

using msw::Direction;
using msw::EmpiricalMeasure;
using msw::MswConfig;
using msw::Transition;

namespace {

MswConfig base_config(Transition tr, int L, int T, std::uint64_t seed) {
    MswConfig cfg;
    cfg.chains = L;
    cfg.steps = T;
    cfg.transition = tr;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("a one-step chain is a single kept uniform direction") {
    MswConfig cfg = base_config(Transition::orthogonal(), 1, 1, 9);
    auto chain = msw::sample_chain(cfg, 3, 1);
    CHECK(chain.directions.size() == 1);
    CHECK(chain.kept == std::vector<char>{1});

    msw::RngStream rng(9, 1);
    CHECK(chain.directions[0].coords == msw::sample_uniform_sphere(3, rng).coords);
}

TEST_CASE("orthogonal transitions alternate between a line and its complement in 2D") {
    MswConfig cfg = base_config(Transition::orthogonal(), 1, 8, 17);
    auto chain = msw::sample_chain(cfg, 2, 1);
    for (std::size_t t = 1; t < 8; ++t) {
        CHECK(std::abs(msw::dot(chain.directions[t], chain.directions[t - 1])) < 1e-9);
    }
    for (std::size_t t = 0; t + 2 < 8; ++t) {
        CHECK(std::abs(msw::dot(chain.directions[t], chain.directions[t + 2])) ==
              doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("input-aware chain is constant once the gradient vanishes") {
    auto mu = testutil::random_cloud(10, 2, 401);
    MswConfig cfg = base_config(Transition::input_aware(0.1), 1, 6, 23);
    auto chain = msw::sample_chain(cfg, 2, 1, &mu, &mu);
    for (std::size_t t = 1; t < 6; ++t) {
        CHECK(chain.directions[t].coords == chain.directions[0].coords);
    }
}

TEST_CASE("estimate vanishes on identical measures for every kernel") {
    auto mu = testutil::random_cloud(12, 3, 402);
    for (Transition tr : {Transition::random_walk(10.0), Transition::orthogonal(),
                          Transition::input_aware(0.1), Transition::input_aware_vmf(0.1, 10.0)}) {
        MswConfig cfg = base_config(tr, 2, 4, 31);
        CHECK(msw::msw_estimate(mu, mu, cfg) == doctest::Approx(0.0));
    }
}

TEST_CASE("T=1 reduces to sw bitwise under shared streams") {
    auto mu = testutil::random_cloud(14, 4, 403);
    auto nu = testutil::random_cloud(14, 4, 404, 1.0, 0.8);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        MswConfig cfg = base_config(Transition::random_walk(5.0), 6, 1, seed);
        CHECK(msw::msw_estimate(mu, nu, cfg) == msw::sw(mu, nu, 2.0, 6, seed));
    }
}

TEST_CASE("gradient-guided chains dominate plain sw at a matched budget") {
    auto mu = testutil::random_cloud(100, 2, 405);
    auto nu = testutil::random_cloud(100, 2, 406, 1.0, 2.0);  // shift along both axes
    int wins = 0;
    for (int s = 0; s < 50; ++s) {
        MswConfig cfg = base_config(Transition::input_aware(0.1), 2, 5, 6000 + s);
        double guided = msw::msw_estimate(mu, nu, cfg);
        double plain = msw::sw(mu, nu, 2.0, 10, 6000 + s);
        if (guided >= plain) ++wins;
    }
    CHECK(wins >= 45);
}

TEST_CASE("burn and thin") {
    auto mu = testutil::random_cloud(10, 3, 407);
    auto nu = testutil::random_cloud(10, 3, 408, 1.0, 0.5);

    SUBCASE("no-op filter is bitwise identical") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            MswConfig cfg = base_config(Transition::random_walk(20.0), 3, 5, seed);
            CHECK(msw::msw_estimate_burn_thin(mu, nu, cfg) == msw::msw_estimate(mu, nu, cfg));
        }
    }

    SUBCASE("burning all but the last step is the endpoint evaluation") {
        MswConfig cfg = base_config(Transition::input_aware(0.1), 1, 6, 77);
        cfg.burn = cfg.steps - 1;
        double est = msw::msw_estimate_burn_thin(mu, nu, cfg);

        auto chain = msw::sample_chain(cfg, 3, 1, &mu, &nu);
        const Direction& last = chain.directions.back();
        double wpp = msw::wasserstein_1d_pth_power(msw::project(mu, last),
                                                   msw::project(nu, last), cfg.p);
        CHECK(est == std::pow(wpp / 1.0, 1.0 / cfg.p));
    }

    SUBCASE("identical measures stay at zero for any filter") {
        MswConfig cfg = base_config(Transition::orthogonal(), 2, 6, 5);
        cfg.burn = 2;
        cfg.thin = 2;
        CHECK(msw::msw_estimate_burn_thin(mu, mu, cfg) == doctest::Approx(0.0));
    }

    SUBCASE("thinning keeps the documented index set") {
        MswConfig cfg = base_config(Transition::orthogonal(), 1, 7, 5);
        cfg.burn = 2;
        cfg.thin = 2;
        auto chain = msw::sample_chain(cfg, 2, 1);
        CHECK(chain.kept == std::vector<char>{0, 0, 0, 1, 0, 1, 0});
    }
}

TEST_CASE("configuration validation") {
    MswConfig cfg = base_config(Transition::orthogonal(), 1, 3, 1);
    cfg.thin = 5;  // no t <= 3 with t % 5 == 0
    CHECK(msw::validate(cfg).has_value());

    cfg = base_config(Transition::orthogonal(), 1, 3, 1);
    cfg.burn = 3;
    CHECK(msw::validate(cfg).has_value());

    cfg = base_config(Transition::input_aware(0.0), 1, 3, 1);
    CHECK(msw::validate(cfg).has_value());

    cfg = base_config(Transition::random_walk(-1.0), 1, 3, 1);
    CHECK(msw::validate(cfg).has_value());

    cfg = base_config(Transition::orthogonal(), 0, 3, 1);
    CHECK(msw::validate(cfg).has_value());

    // input-aware kernels need both measures
    MswConfig good = base_config(Transition::input_aware(0.1), 1, 3, 1);
    CHECK_THROWS_AS(msw::sample_chain(good, 2, 1), std::invalid_argument);

    // estimate with a filter must go through the burn-thin entry point
    auto mu = testutil::random_cloud(4, 2, 409);
    MswConfig filtered = base_config(Transition::orthogonal(), 1, 4, 1);
    filtered.burn = 1;
    CHECK_THROWS_AS(msw::msw_estimate(mu, mu, filtered), std::invalid_argument);
}

TEST_CASE("metric axioms hold exactly for measure-independent kernels under a shared seed") {
    for (Transition tr : {Transition::random_walk(15.0), Transition::orthogonal()}) {
        for (int trial = 0; trial < 25; ++trial) {
            auto a = testutil::random_cloud(8, 3, 7000 + trial);
            auto b = testutil::random_cloud(8, 3, 7100 + trial, 1.0, 0.6);
            auto c = testutil::random_cloud(8, 3, 7200 + trial, 1.3, -0.4);
            MswConfig cfg = base_config(tr, 2, 4, 50 + trial);

            CHECK(msw::msw_estimate(a, b, cfg) == msw::msw_estimate(b, a, cfg));  // symmetry
            CHECK(msw::msw_estimate(a, a, cfg) == doctest::Approx(0.0));          // identity
            double ab = msw::msw_estimate(a, b, cfg);
            double bc = msw::msw_estimate(b, c, cfg);
            double ac = msw::msw_estimate(a, c, cfg);
            CHECK(ac <= ab + bc + 1e-9);  // triangle, fixed direction set
        }
    }
}

TEST_CASE("input-aware estimates are symmetric thanks to canonical gradient ordering") {
    auto a = testutil::random_cloud(9, 3, 410);
    auto b = testutil::random_cloud(9, 3, 411, 1.0, 0.7);
    for (Transition tr : {Transition::input_aware(0.1), Transition::input_aware_vmf(0.1, 25.0)}) {
        MswConfig cfg = base_config(tr, 2, 5, 61);
        CHECK(msw::msw_estimate(a, b, cfg) == msw::msw_estimate(b, a, cfg));
    }
}

TEST_CASE("estimates decrease along a shrinking-shift sequence") {
    auto mu = testutil::random_cloud(20, 3, 412);
    for (Transition tr : {Transition::random_walk(15.0), Transition::orthogonal(),
                          Transition::input_aware(0.1), Transition::input_aware_vmf(0.1, 25.0)}) {
        double prev = std::numeric_limits<double>::infinity();
        for (int k = 1; k <= 5; ++k) {
            msw::Vec shifted = mu.supports();
            double c = std::pow(2.0, -k);
            for (std::size_t i = 0; i < mu.size(); ++i) shifted[3 * i] += c;
            auto nu = EmpiricalMeasure::uniform(mu.size(), 3, shifted);
            MswConfig cfg = base_config(tr, 2, 4, 71);
            double est = msw::msw_estimate(mu, nu, cfg);
            CHECK(est < prev);
            prev = est;
        }
    }
}

TEST_CASE("estimates between same-law samples shrink as n grows") {
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t n : {50u, 200u, 800u}) {
        auto a = testutil::random_cloud(n, 20, 413);
        auto b = testutil::random_cloud(n, 20, 414);
        MswConfig cfg = base_config(Transition::orthogonal(), 2, 5, 81);
        double est = msw::msw_estimate(a, b, cfg);
        CHECK(est < prev);
        prev = est;
    }
}

TEST_CASE("chains are deterministic bit for bit") {
    auto mu = testutil::random_cloud(8, 3, 415);
    auto nu = testutil::random_cloud(8, 3, 416, 1.0, 0.5);
    MswConfig cfg = base_config(Transition::input_aware_vmf(0.1, 30.0), 1, 6, 91);
    auto c1 = msw::sample_chain(cfg, 3, 4, &mu, &nu);
    auto c2 = msw::sample_chain(cfg, 3, 4, &mu, &nu);
    REQUIRE(c1.directions.size() == c2.directions.size());
    for (std::size_t t = 0; t < c1.directions.size(); ++t) {
        CHECK(c1.directions[t].coords == c2.directions[t].coords);
    }
    auto c3 = msw::sample_chain(cfg, 3, 5, &mu, &nu);
    CHECK(c1.directions[0].coords != c3.directions[0].coords);
}

TEST_CASE("estimates are dominated by the exact distance on every seed") {
    auto mu = testutil::random_cloud(20, 5, 417);
    auto nu = testutil::random_cloud(20, 5, 418, 1.0, 0.7);
    double exact = msw::exact_wasserstein(mu, nu, 2.0);
    for (Transition tr : {Transition::random_walk(15.0), Transition::orthogonal(),
                          Transition::input_aware(0.1), Transition::input_aware_vmf(0.1, 25.0)}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            MswConfig cfg = base_config(tr, 2, 5, seed);
            CHECK(msw::msw_estimate(mu, nu, cfg) <= exact + 1e-9);
        }
    }
}

TEST_CASE("variance report") {
    auto mu = testutil::random_cloud(25, 3, 419);
    auto nu = testutil::random_cloud(25, 3, 420, 1.0, 1.0);

    MswConfig cfg = base_config(Transition::orthogonal(), 1, 4, 3);
    auto self_rows = msw::estimator_variance_report(mu, mu, cfg, {4, 8}, 5);
    for (const auto& row : self_rows) {
        CHECK(row.mean == doctest::Approx(0.0));
        CHECK(row.stddev == doctest::Approx(0.0));
    }

    auto rows = msw::estimator_variance_report(mu, nu, cfg, {10, 40, 160}, 40);
    std::vector<double> log_l, log_sd;
    for (const auto& row : rows) {
        CHECK(row.stddev > 0.0);
        log_l.push_back(std::log(row.chains));
        log_sd.push_back(std::log(row.stddev));
    }
    CHECK(log_sd[0] > log_sd[1]);
    CHECK(log_sd[1] > log_sd[2]);
    double slope = testutil::least_squares_slope(log_l, log_sd);
    CHECK(slope == doctest::Approx(-0.5).epsilon(0.35));
}

TEST_CASE("thread count does not change estimates") {
    auto mu = testutil::random_cloud(15, 3, 421);
    auto nu = testutil::random_cloud(15, 3, 422, 1.0, 0.4);
    MswConfig cfg = base_config(Transition::input_aware(0.1), 4, 5, 13);
    CHECK(msw::msw_estimate(mu, nu, cfg, 1) == msw::msw_estimate(mu, nu, cfg, 4));
}
