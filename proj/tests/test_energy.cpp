#include <doctest.h>

#include <cmath>

#include "mrsle/energy.hpp"
#include "mrsle/rng.hpp"

using namespace mrsle;

namespace {

DriverPath rotating_driver(int n, double omega, double T, double dt) {
    DriverPath p;
    p.dt = dt;
    p.steps = static_cast<int>(std::llround(T / dt));
    for (int k = 0; k <= p.steps; ++k) p.states.push_back(equally_spaced(n, omega * dt * k));
    return p;
}

}  // namespace

TEST_SUITE("energy") {

TEST_CASE("constants: exact values and roots") {
    CHECK(sle_constants(8.0 / 3.0, 3).central_charge == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(sle_constants(6.0, 2).central_charge == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(sle_constants(2.0, 5).central_charge == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(sle_constants(4.0, 2).beta_hat == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(sle_constants(3.7, 1).beta_hat == 0.0);
    // small-kappa limits entering the psi branches
    for (double kappa : {1e-3, 1e-5}) {
        const auto c = sle_constants(kappa, 3);
        CHECK(kappa * c.beta_hat == doctest::Approx((3 - 1) * (16.0 + 12.0) / 8.0).epsilon(2e-3));
        CHECK(0.5 * kappa * c.central_charge == doctest::Approx(-12.0).epsilon(2e-3));
    }
}

TEST_CASE("dyson dirichlet energy: rotating equally spaced driver") {
    // the cotangent interaction cancels by symmetry, leaving n omega^2 T / 2
    for (int n : {2, 3}) {
        const double omega = 0.7, T = 1.0;
        const DriverPath p = rotating_driver(n, omega, T, 1e-3);
        CHECK(dyson_dirichlet_energy(p) ==
              doctest::Approx(n * omega * omega * T / 2).epsilon(5e-3));
    }
}

TEST_CASE("dyson dirichlet energy: invariances") {
    const DriverPath p = rotating_driver(2, 0.4, 0.8, 1e-3);
    // global rotation
    DriverPath q = p;
    for (auto& st : q.states) st = st.rotated(1.25);
    CHECK(dyson_dirichlet_energy(q) == doctest::Approx(dyson_dirichlet_energy(p)).epsilon(1e-10));
    // additivity over an exact-grid split
    const int half = p.steps / 2;
    const DriverPath a = p.prefix(half);
    DriverPath b;
    b.dt = p.dt;
    b.steps = p.steps - half;
    b.states.assign(p.states.begin() + half, p.states.end());
    CHECK(dyson_dirichlet_energy(a) + dyson_dirichlet_energy(b) ==
          doctest::Approx(dyson_dirichlet_energy(p)).epsilon(1e-10));
    // collision sentinel
    DriverPath c = p;
    c.states[5] = TorusConfig({0.0, 1e-13});
    CHECK(std::isinf(dyson_dirichlet_energy(c)));
}

TEST_CASE("extract_single_driver: radial segment and rotating curve") {
    // radial segment -> constant driver
    std::vector<cplx> seg(201);
    for (int k = 0; k <= 200; ++k)
        seg[static_cast<std::size_t>(k)] = std::polar(slit::tip_radius(1e-3 * k), 0.9);
    const auto ex = extract_single_driver(seg);
    CHECK(ex.landing_error < 1e-9);
    for (double th : ex.theta) CHECK(std::fabs(th - 0.9) < 1e-3);
    CHECK(dirichlet_energy(ex.s, ex.theta) < 1e-4);

    // rotating driver omega s has energy omega^2 S / 2
    const double omega = 0.8, S = 0.4, dt = 1e-4;
    SlitChain ch;
    const int steps = static_cast<int>(std::llround(S / dt));
    for (int k = 0; k < steps; ++k) ch.push(omega * dt * k, dt);
    std::vector<cplx> pts(static_cast<std::size_t>(steps) + 1);
    pts[0] = cplx(1, 0);
    for (int k = 1; k <= steps; ++k)
        pts[static_cast<std::size_t>(k)] = ch.tip(static_cast<std::size_t>(k) - 1);
    const auto ex2 = extract_single_driver(pts);
    CHECK(dirichlet_energy(ex2.s, ex2.theta) ==
          doctest::Approx(omega * omega * S / 2).epsilon(0.01));
}

TEST_CASE("independent energy: symmetric fans are geodesic, n=1 reduces") {
    const double dt = 1e-3;
    for (int n : {2, 3}) {
        DriverPath drv;
        drv.dt = dt;
        drv.steps = 500;
        drv.states.assign(501, equally_spaced(n, 0.2));
        const MultiradialCurve cv = trace(drv);
        const TimeChange tc = time_change(drv, cv);
        CHECK(independent_energy(cv, tc) < 1e-4);
    }
    // n=1: independent energy equals the single-curve Dirichlet energy
    const DriverPath one = rotating_driver(1, 0.5, 0.4, 1e-3);
    const MultiradialCurve cv1 = trace(one);
    const TimeChange tc1 = time_change(one, cv1);
    const auto ex = extract_single_driver(cv1.pts[0]);
    CHECK(independent_energy(cv1, tc1) ==
          doctest::Approx(dirichlet_energy(ex.s, ex.theta)).epsilon(1e-12));
}

TEST_CASE("psi: zero at T=0, kappa branches join continuously, upper bound") {
    const TorusConfig th0 = equally_spaced(3, 0.1);
    const TorusConfig thT({0.2, 2.0, 4.4});
    CHECK(psi(th0, th0, 0.0, 0.0, 0.0) == 0.0);
    CHECK(psi(th0, th0, 0.0, 0.0, 2.0) == 0.0);
    const double T = 0.7, L = 0.45;
    const double p0 = psi(th0, thT, T, L, 0.0);
    double prev_gap = 1e300;
    for (double kappa : {0.5, 0.1, 0.02, 0.004}) {
        const double gap = std::fabs(psi(th0, thT, T, L, kappa) - p0);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 1e-2);
    // bounded above by the loop-free value
    CHECK(p0 <= log_partition_u(th0) + 0.5 * (3 + 4) * (3 - 1) * 3 * T - log_partition_u(thT) + 1e-12);
    CHECK(p0 <= log_partition_u(th0) - u_min(3) + 0.5 * (3 + 4) * (3 - 1) * 3 * T + 1e-12);
    // collision endpoint gives the -inf sentinel
    CHECK(std::isinf(psi(th0, TorusConfig({0.0, 1e-14, 1.0}), T, L, 0.5)));
    CHECK(psi(th0, TorusConfig({0.0, 1e-14, 1.0}), T, L, 0.5) < 0);
}

TEST_CASE("blm rate record: zero-energy trajectory and l_hat arithmetic") {
    const double dt = 1e-3, T = 0.4;
    DriverPath drv;
    drv.dt = dt;
    drv.steps = static_cast<int>(std::llround(T / dt));
    drv.states.assign(static_cast<std::size_t>(drv.steps) + 1, equally_spaced(2));
    const MultiradialCurve cv = trace(drv);
    const TimeChange tc = time_change(drv, cv);
    const double L = 0.123;
    const auto r = blm_rate_finite_T(drv, cv, tc, L, T);
    CHECK(r.rate_dyson < 1e-6);
    CHECK(r.l_hat == doctest::Approx(L - 6.0 * 2.0 * T / 24.0).epsilon(1e-14));
    // with the exact loop mass T/2 the two rate forms coincide
    const auto r2 = blm_rate_finite_T(drv, cv, tc, T / 2, T);
    CHECK(std::fabs(r2.rate_bm_form) < 2e-3);
}

TEST_CASE("steady convergence diagnostic on analytic families") {
    std::vector<double> psi0(16);
    for (int i = 0; i < 16; ++i) psi0[static_cast<std::size_t>(i)] = -2.0 + 0.3 * i;
    std::map<double, std::vector<double>> fam;
    for (double kappa : {0.4, 0.2, 0.1}) {
        std::vector<double> v = psi0;
        for (double& x : v) x += kappa;  // f^kappa = f^0 + kappa
        fam[kappa] = v;
    }
    const auto rep = steady_convergence_diagnostic(fam, psi0, {1.0, 3.0}, {0.05, 0.5});
    CHECK(rep.deviations_monotone_in_kappa);
    for (const auto& c : rep.cells) {
        CHECK(c.sup_dev == doctest::Approx(c.kappa).epsilon(1e-12));
        CHECK(c.uniform_ok == (c.kappa < c.eps));
        CHECK(c.tails_ok);
    }
    // constant family is steady trivially
    std::map<double, std::vector<double>> cst{{0.3, psi0}, {0.2, psi0}, {0.1, psi0}};
    const auto rep2 = steady_convergence_diagnostic(cst, psi0, {2.0}, {0.01});
    for (const auto& c : rep2.cells) CHECK(c.uniform_ok);
}

}  // TEST_SUITE
