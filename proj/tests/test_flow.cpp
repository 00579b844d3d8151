#include <doctest.h>

#include <cmath>

#include "msw/exact_ot.hpp"
#include "msw/flow.hpp"
#include "test_util.hpp"

using msw::DistanceKind;
using msw::DistanceSpec;
using msw::EmpiricalMeasure;
using msw::FlowConfig;

namespace {

FlowConfig imsw_flow(int steps, double step_size, std::uint64_t seed) {
    FlowConfig cfg;
    cfg.steps = steps;
    cfg.step_size = step_size;
    cfg.seed = seed;
    cfg.distance.kind = DistanceKind::MswInputAware;
    cfg.distance.projections = 2;
    cfg.distance.steps = 5;
    cfg.distance.eta = 0.1;
    cfg.score_every = 100;
    return cfg;
}

}  // namespace

TEST_CASE("flow from a measure to itself does nothing") {
    auto mu = testutil::random_cloud(30, 2, 501);
    auto trace = msw::run_flow(mu, mu, imsw_flow(25, 1e-3, 3));
    CHECK(trace.final_measure.supports() == mu.supports());
    for (const auto& row : trace.rows) CHECK(row.w2 == doctest::Approx(0.0));
}

TEST_CASE("zero step size freezes the supports") {
    auto mu = testutil::random_cloud(20, 2, 502);
    auto nu = testutil::random_cloud(20, 2, 503, 1.0, 2.0);
    auto trace = msw::run_flow(mu, nu, imsw_flow(15, 0.0, 4));
    CHECK(trace.final_measure.supports() == mu.supports());
}

TEST_CASE("zero steps yield a single initial row") {
    auto mu = testutil::random_cloud(20, 2, 504);
    auto nu = testutil::random_cloud(20, 2, 505, 1.0, 1.0);
    auto trace = msw::run_flow(mu, nu, imsw_flow(0, 1e-3, 5));
    REQUIRE(trace.rows.size() == 1);
    CHECK(trace.rows[0].step == 0);
    CHECK(trace.rows[0].w2 == doctest::Approx(msw::exact_wasserstein(mu, nu, 2.0)));
}

TEST_CASE("descent on the shifted-gaussian fixture") {
    auto mu = testutil::random_cloud(100, 2, 506);
    msw::Vec shifted = mu.supports();
    for (std::size_t i = 0; i < 100; ++i) shifted[2 * i] += 5.0;
    msw::RngStream jitter(507, 0);
    for (double& x : shifted) x += 0.05 * jitter.normal();
    auto nu = EmpiricalMeasure::uniform(100, 2, shifted);

    auto trace = msw::run_flow(mu, nu, imsw_flow(300, 1e-3, 6));
    double initial = trace.rows.front().w2;
    double final_w2 = trace.rows.back().w2;
    CHECK(final_w2 < initial);
    // the verbatim update moves supports about eta per step, so 300 steps
    // close roughly 0.3 of the gap
    CHECK(final_w2 < initial - 0.2);
}

TEST_CASE("trace rows are ordered and non-negative") {
    auto mu = testutil::random_cloud(25, 2, 508);
    auto nu = testutil::random_cloud(25, 2, 509, 1.0, 1.5);
    FlowConfig cfg = imsw_flow(37, 1e-3, 7);
    cfg.score_every = 10;
    auto trace = msw::run_flow(mu, nu, cfg);
    REQUIRE(trace.rows.size() >= 3);
    for (std::size_t i = 0; i < trace.rows.size(); ++i) {
        CHECK(trace.rows[i].w2 >= 0.0);
        if (i) CHECK(trace.rows[i].step > trace.rows[i - 1].step);
    }
    CHECK(trace.rows.back().step == 37);
}

TEST_CASE("divergence is reported with the step index") {
    auto mu = testutil::random_cloud(10, 2, 510);
    auto nu = testutil::random_cloud(10, 2, 511, 1.0, 3.0);
    auto cfg = imsw_flow(50, 1e7, 8);  // absurd step size
    CHECK_THROWS_WITH_AS(msw::run_flow(mu, nu, cfg), doctest::Contains("step"),
                         msw::numerical_error);
}

TEST_CASE("the exact spec cannot drive a flow") {
    auto mu = testutil::random_cloud(5, 2, 512);
    FlowConfig cfg = imsw_flow(5, 1e-3, 9);
    cfg.distance.kind = DistanceKind::Exact;
    CHECK_THROWS_AS(msw::run_flow(mu, mu, cfg), std::invalid_argument);
}

TEST_CASE("flow is deterministic under a fixed seed") {
    auto mu = testutil::random_cloud(20, 2, 513);
    auto nu = testutil::random_cloud(20, 2, 514, 1.0, 1.0);
    auto t1 = msw::run_flow(mu, nu, imsw_flow(20, 1e-3, 10), 1);
    auto t2 = msw::run_flow(mu, nu, imsw_flow(20, 1e-3, 10), 3);
    CHECK(t1.final_measure.supports() == t2.final_measure.supports());
    REQUIRE(t1.rows.size() == t2.rows.size());
    for (std::size_t i = 0; i < t1.rows.size(); ++i) {
        CHECK(t1.rows[i].loss == t2.rows[i].loss);
        CHECK(t1.rows[i].w2 == t2.rows[i].w2);
    }
}

TEST_CASE("s-shape fixture") {
    SUBCASE("noise 0 puts every point on the curve") {
        auto mu = msw::make_s_shape(500, 0.0, 11);
        for (std::size_t i = 0; i < mu.size(); ++i) {
            double x = mu.coord(i, 0), y = mu.coord(i, 1);
            // curve invariant: x^2 + (1 - |y|)^2 = 1
            CHECK(std::abs(x * x + (1.0 - std::abs(y)) * (1.0 - std::abs(y)) - 1.0) < 1e-9);
        }
    }
    SUBCASE("deterministic under a fixed seed") {
        auto a = msw::make_s_shape(100, 0.05, 12);
        auto b = msw::make_s_shape(100, 0.05, 12);
        CHECK(a.supports() == b.supports());
    }
    SUBCASE("bounding box stays inside [-2.5, 2.5]^2") {
        auto noise_free = msw::make_s_shape(10000, 0.0, 13);
        for (double v : noise_free.supports()) CHECK(std::abs(v) <= 2.0 + 1e-12);
        auto jittered = msw::make_s_shape(1000, 0.05, 14);
        for (double v : jittered.supports()) CHECK(std::abs(v) <= 2.5);
    }
}

TEST_CASE("gaussian mixture fixture is deterministic and 2D") {
    auto a = msw::make_gaussian_mixture(64, 15);
    auto b = msw::make_gaussian_mixture(64, 15);
    CHECK(a.supports() == b.supports());
    CHECK(a.dim() == 2);
}

TEST_CASE("trace csv layout") {
    testutil::TempDir tmp;
    auto mu = testutil::random_cloud(10, 2, 516);
    auto nu = testutil::random_cloud(10, 2, 517, 1.0, 1.0);
    auto trace = msw::run_flow(mu, nu, imsw_flow(5, 1e-3, 12));
    msw::write_trace_csv(tmp.file("trace.csv"), trace);
    auto text = testutil::read_file(tmp.file("trace.csv"));
    CHECK(text.rfind("step,loss,w2,seconds\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == static_cast<long>(trace.rows.size()) + 1);
}
