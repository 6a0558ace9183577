#include <doctest.h>

#include <cmath>

#include "mrsle/rng.hpp"
#include "mrsle/slit_map.hpp"
#include "mrsle/torus.hpp"

using namespace mrsle;

TEST_SUITE("slit_map") {

TEST_CASE("koebe transform round trips") {
    const RngKey key{21, 0};
    for (int i = 0; i < 200; ++i) {
        const double r = 0.98 * std::sqrt(u01(key, static_cast<std::uint64_t>(i), 0));
        const cplx z = std::polar(r, kTwoPi * u01(key, static_cast<std::uint64_t>(i), 1));
        const cplx back = slit::koebe_inv(slit::koebe(z));
        CHECK(std::abs(back - z) < 1e-12);
    }
    CHECK(std::abs(slit::koebe_inv(cplx(0, 0))) == 0.0);
}

TEST_CASE("tip radius and capacity are inverse") {
    for (double cap : {1e-6, 1e-3, 0.1, 0.5, 1.0, 3.0, 8.0}) {
        const double x = slit::tip_radius(cap);
        CHECK(x > 0);
        CHECK(x < 1);
        CHECK(slit::slit_capacity(x) == doctest::Approx(cap).epsilon(1e-10));
    }
    // deep slit: tip ~ e^{-cap}/4, the distortion-extremal rate
    CHECK(slit::tip_radius(10.0) == doctest::Approx(std::exp(-10.0) / 4).epsilon(1e-3));
}

TEST_CASE("forward and inverse maps are mutually inverse and fix 0") {
    const RngKey key{22, 0};
    for (int i = 0; i < 100; ++i) {
        const double cap = 0.01 + 2.0 * u01(key, static_cast<std::uint64_t>(i), 0);
        const double th = kTwoPi * u01(key, static_cast<std::uint64_t>(i), 1);
        const double r = 0.95 * std::sqrt(u01(key, static_cast<std::uint64_t>(i), 2));
        const cplx w = std::polar(r, kTwoPi * u01(key, static_cast<std::uint64_t>(i), 3));
        const cplx z = slit::inverse(w, th, cap);  // z in the slit domain
        CHECK(std::abs(z) < 1.0 + 1e-12);
        const cplx back = slit::forward(z, th, cap);
        CHECK(std::abs(back - w) < 1e-10);
        CHECK(std::abs(slit::inverse(cplx(0, 0), th, cap)) < 1e-15);
    }
}

TEST_CASE("derivative at 0 is e^{cap} and the tip maps to the driver") {
    for (double cap : {0.05, 0.5, 1.5}) {
        const double th = 0.7;
        const cplx eps(1e-7, 0);
        const cplx g = slit::forward(eps, th, cap);
        CHECK(std::abs(g) / 1e-7 == doctest::Approx(std::exp(cap)).epsilon(1e-5));
        const cplx tip = std::polar(slit::tip_radius(cap), th);
        const cplx img = slit::forward(tip, th, cap);
        CHECK(std::abs(img - std::polar(1.0, th)) < 1e-7);
    }
}

TEST_CASE("boundary angle map: monotone, fixes the antipode, repels from driver") {
    for (double cap : {0.05, 0.4, 1.2}) {
        double prev = 0.0;
        for (int q = 1; q < 64; ++q) {
            const double u = kTwoPi * q / 64.0;
            const double H = slit::boundary_angle(u, cap);
            CHECK(H > prev);  // strict monotonicity
            prev = H;
            if (u < M_PI) CHECK(H > u);
            if (u > M_PI) CHECK(H < u);
        }
        CHECK(slit::boundary_angle(M_PI, cap) == doctest::Approx(M_PI).epsilon(1e-14));
        // boundary consistency with the complex map
        for (int q = 1; q < 16; ++q) {
            const double u = kTwoPi * q / 16.0;
            const cplx img = slit::forward(std::polar(1.0, u), 0.0, cap);
            CHECK(std::fabs(std::abs(img) - 1.0) < 1e-12);
            double du = std::arg(img) - slit::boundary_angle(u, cap);
            du = std::remainder(du, kTwoPi);
            CHECK(std::fabs(du) < 1e-9);
        }
    }
}

TEST_CASE("boundary derivative: analytic formula vs finite differences") {
    for (double cap : {0.1, 0.8}) {
        for (int q = 1; q < 24; ++q) {
            const double u = kTwoPi * q / 24.0;
            const double h = 1e-6;
            const double fd =
                (slit::boundary_angle(u + h, cap) - slit::boundary_angle(u - h, cap)) / (2 * h);
            CHECK(slit::boundary_angle_deriv(u, cap) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("boundary contraction: sharp exponent is cap/2, not cap") {
    for (double cap : {0.2, 0.7, 1.0, 2.0}) {
        double sup = 0;
        for (int q = 1; q < 720; ++q)
            sup = std::max(sup, slit::boundary_angle_deriv(kTwoPi * q / 720.0, cap));
        CHECK(sup <= std::exp(-0.5 * cap) + 1e-12);
        // the antipode attains e^{-cap/2} exactly, exceeding e^{-cap}
        CHECK(slit::boundary_angle_deriv(M_PI, cap) ==
              doctest::Approx(std::exp(-0.5 * cap)).epsilon(1e-13));
        CHECK(slit::boundary_angle_deriv(M_PI, cap) > std::exp(-cap));
    }
}

TEST_CASE("same-angle slit maps compose exactly") {
    const double th = 1.1;
    const cplx z = std::polar(0.8, 2.9);
    const cplx one = slit::forward(slit::forward(z, th, 0.3), th, 0.5);
    const cplx two = slit::forward(z, th, 0.8);
    CHECK(std::abs(one - two) < 1e-12);
}

TEST_CASE("chain tips reproduce a straight slit for a constant chain") {
    SlitChain ch;
    const double th = 0.4, dt = 1e-3;
    for (int k = 0; k < 200; ++k) ch.push(th, dt);
    for (int k : {10, 100, 200}) {
        const cplx tip = ch.tip(static_cast<std::size_t>(k) - 1);
        const cplx expect = std::polar(slit::tip_radius(k * dt), th);
        CHECK(std::abs(tip - expect) < 1e-10);
    }
}

TEST_CASE("map_angle accumulates derivatives") {
    SlitChain ch;
    ch.push(0.0, 0.3);
    ch.push(2.0, 0.4);
    double d = 0;
    const double x = 4.0;
    const double hx = ch.map_angle(x, 0, SlitChain::npos, &d);
    const double h = 1e-6;
    const double fd = (ch.map_angle(x + h) - ch.map_angle(x - h)) / (2 * h);
    CHECK(d == doctest::Approx(fd).epsilon(1e-6));
    CHECK(hx != x);
}

}  // TEST_SUITE
