#include <doctest.h>

#include <cmath>

#include "mrsle/drivers.hpp"
#include "mrsle/loewner.hpp"
#include "mrsle/zipper.hpp"

using namespace mrsle;

TEST_SUITE("zipper") {

TEST_CASE("radial segment unzips to a constant driver with exact capacities") {
    const double th = 1.3;
    const int m = 300;
    std::vector<cplx> pts(static_cast<std::size_t>(m) + 1);
    for (int k = 0; k <= m; ++k)
        pts[static_cast<std::size_t>(k)] = std::polar(slit::tip_radius(2e-3 * k), th);
    const UnzipResult uz = unzip_curve(pts);
    CHECK(uz.max_landing_error < 1e-9);
    for (int k = 0; k <= m; ++k) {
        CHECK(std::fabs(uz.driver[static_cast<std::size_t>(k)] - th) < 1e-3);
        CHECK(uz.capacity[static_cast<std::size_t>(k)] ==
              doctest::Approx(2e-3 * k).epsilon(1e-9));
    }
}

TEST_CASE("retrace inverts unzip on a traced random curve") {
    const double dt = 1e-3, S = 0.5;
    const ScalarDriver drv = single_radial_driver(0.3, 1.0, S, dt, RngKey{51, 0});
    SlitChain ch;
    for (int k = 0; k < drv.steps(); ++k) ch.push(drv.theta[static_cast<std::size_t>(k)], dt);
    std::vector<cplx> pts(static_cast<std::size_t>(drv.steps()) + 1);
    pts[0] = std::polar(1.0, drv.theta[0]);
    for (int k = 1; k <= drv.steps(); ++k) pts[static_cast<std::size_t>(k)] = ch.tip(static_cast<std::size_t>(k) - 1);

    const UnzipResult uz = unzip_curve(pts);
    CHECK(uz.max_landing_error < 1e-9);
    const auto re = retrace_single(uz.chain, uz.driver[0]);
    double worst = 0;
    for (std::size_t k = 0; k < pts.size(); ++k) worst = std::max(worst, std::abs(re[k] - pts[k]));
    CHECK(worst < 5e-3);
    // extracted driver round-trips the input driver up to the sub-step offset
    double dworst = 0;
    for (int k = 0; k < drv.steps(); ++k)
        dworst = std::max(dworst, std::fabs(uz.driver[static_cast<std::size_t>(k) + 1] -
                                            drv.theta[static_cast<std::size_t>(k)]));
    CHECK(dworst < 0.08);  // driver recovery is half-step accurate for Brownian input
    // capacities accumulate to the simulated horizon
    CHECK(uz.capacity.back() == doctest::Approx(S).epsilon(1e-6));
}

TEST_CASE("rotating driver round trips within 1e-3") {
    const double dt = 1e-4, S = 0.3, omega = 0.8;
    SlitChain ch;
    const int steps = static_cast<int>(std::llround(S / dt));
    for (int k = 0; k < steps; ++k) ch.push(omega * dt * k, dt);
    std::vector<cplx> pts(static_cast<std::size_t>(steps) + 1);
    pts[0] = cplx(1, 0);
    for (int k = 1; k <= steps; ++k) pts[static_cast<std::size_t>(k)] = ch.tip(static_cast<std::size_t>(k) - 1);
    const UnzipResult uz = unzip_curve(pts);
    for (int k = 0; k <= steps; ++k) {
        const double expect = omega * uz.capacity[static_cast<std::size_t>(k)];
        CHECK(std::fabs(uz.driver[static_cast<std::size_t>(k)] - expect) < 1e-3);
    }
}

TEST_CASE("non-simple input is rejected at the offending index") {
    // a polyline that doubles back outside the disk after welding
    std::vector<cplx> pts;
    for (int k = 0; k <= 40; ++k) pts.push_back(std::polar(slit::tip_radius(2e-3 * k), 0.0));
    pts.push_back(std::polar(1.2, 0.0));
    CHECK_THROWS_AS(unzip_curve(pts), std::invalid_argument);
}

}  // TEST_SUITE
