#include <doctest.h>

#include <cmath>

#include "mrsle/drivers.hpp"
#include "mrsle/energy.hpp"
#include "mrsle/stats.hpp"

using namespace mrsle;

namespace {

// independent 1-d oracle for the n=2 gap: dphi/ds = 4 cot(phi/2)
double gap_ode_oracle(double phi0, double T, double h) {
    auto f = [](double p) { return 4.0 / std::tan(0.5 * p); };
    double p = phi0;
    const int steps = static_cast<int>(std::llround(T / h));
    for (int k = 0; k < steps; ++k) {
        const double k1 = f(p);
        const double k2 = f(p + 0.5 * h * k1);
        const double k3 = f(p + 0.5 * h * k2);
        const double k4 = f(p + h * k3);
        p += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return p;
}

}  // namespace

TEST_SUITE("drivers") {

TEST_CASE("zero-energy: equally spaced start stays constant") {
    const DriverPath p = zero_energy_driver(equally_spaced(3, 0.5), 1.0, 1e-3);
    for (int k = 0; k <= p.steps; ++k)
        for (int j = 0; j < 3; ++j)
            CHECK(std::fabs(p.state(k)[j] - p.state(0)[j]) < 1e-12);
}

TEST_CASE("zero-energy: n=2 gap follows the 1-d oracle and grows to pi") {
    const double T = 4.0, dt = 1e-3;  // gap relaxes to pi at rate e^{-2s}
    const DriverPath p = zero_energy_driver(TorusConfig({0.0, M_PI / 2}), T, dt);
    double prev_gap = M_PI / 2;
    for (int k = 1; k <= p.steps; ++k) {
        const double gap = p.state(k)[1] - p.state(k)[0];
        CHECK(gap > prev_gap - 1e-14);  // monotone toward pi
        prev_gap = gap;
    }
    const double oracle = gap_ode_oracle(M_PI / 2, T, 1e-5);
    CHECK(p.state(p.steps)[1] - p.state(p.steps)[0] == doctest::Approx(oracle).epsilon(1e-8));
    CHECK(prev_gap < M_PI + 1e-9);
    CHECK(prev_gap > M_PI - 1e-3);
    CHECK(dyson_dirichlet_energy(p) < 1e-8);
}

TEST_CASE("dyson with kappa=0 delegates to the zero-energy ODE") {
    const TorusConfig th0({0.1, 1.7, 4.0});
    const DriverPath a = simulate_dyson(th0, 0.0, 0.5, 1e-3, RngKey{1, 2});
    const DriverPath b = zero_energy_driver(th0, 0.5, 1e-3);
    for (int k = 0; k <= a.steps; ++k)
        for (int j = 0; j < 3; ++j) CHECK(a.state(k)[j] == b.state(k)[j]);
}

TEST_CASE("dyson ensemble: zero mean displacement from an equally spaced start") {
    const RngKey key{31, 0};
    const int N = 400;
    std::vector<double> disp;
    for (int s = 0; s < N; ++s) {
        const DriverPath p = simulate_dyson(equally_spaced(2), 2.0, 0.2, 1e-3,
                                            key.substream(static_cast<std::uint64_t>(s)));
        for (int j = 0; j < 2; ++j) disp.push_back(p.state(p.steps)[j] - p.state(0)[j]);
    }
    const auto ms = mean_stderr(disp);
    CHECK(std::fabs(ms.mean) < 3.0 * ms.stderr_);
}

TEST_CASE("dyson invariants: no collision, bounded increments") {
    const RngKey key{32, 0};
    for (int s = 0; s < 10; ++s) {
        const DriverPath p = simulate_dyson(equally_spaced(3), 4.0, 0.5, 1e-3,
                                            key.substream(static_cast<std::uint64_t>(s)));
        std::string why;
        CHECK(p.check_invariants(&why));
    }
}

TEST_CASE("dyson: n=2 gap stationary density matches sin^{8/kappa}(phi/2)") {
    // one long trajectory, thinned; chi-square against the normalized density
    const double kappa = 2.0, dt = 2e-3, T = 600.0;
    const DriverPath p = simulate_dyson(equally_spaced(2), kappa, T, dt, RngKey{33, 7});
    std::vector<double> gaps;
    const int thin = 250;  // every 0.5 time units
    for (int k = thin; k <= p.steps; k += thin) {
        double g = std::fmod(p.state(k)[1] - p.state(k)[0], kTwoPi);
        if (g < 0) g += kTwoPi;
        gaps.push_back(g);
    }
    const int nb = 12;
    // expected bin masses of c * sin^{8/kappa}(phi/2) on (0, 2pi) via Simpson
    auto dens = [&](double phi) { return std::pow(std::sin(0.5 * phi), 8.0 / kappa); };
    std::vector<double> binmass(nb, 0.0);
    double total = 0;
    for (int b = 0; b < nb; ++b) {
        const double lo = kTwoPi * b / nb, hi = kTwoPi * (b + 1) / nb;
        const int m = 64;
        double acc = 0;
        for (int i = 0; i <= m; ++i) {
            const double x = lo + (hi - lo) * i / m;
            const double w = (i == 0 || i == m) ? 1 : (i % 2 ? 4 : 2);
            acc += w * dens(x);
        }
        binmass[static_cast<std::size_t>(b)] = acc * (hi - lo) / (3 * m);
        total += binmass[static_cast<std::size_t>(b)];
    }
    double stat = 0;
    for (int b = 0; b < nb; ++b) {
        const double expected = static_cast<double>(gaps.size()) *
                                binmass[static_cast<std::size_t>(b)] / total;
        double observed = 0;
        for (double g : gaps)
            if (g >= kTwoPi * b / nb && g < kTwoPi * (b + 1) / nb) observed += 1;
        stat += (observed - expected) * (observed - expected) / std::max(expected, 1e-9);
    }
    const double pval = chi2_pvalue(stat, nb - 1);
    CHECK(pval > 0.01);
}

TEST_CASE("gradient flow: U nonincreasing, reaches the minimum, halves the zero-energy rate") {
    const TorusConfig th0({0.3, 1.1, 2.0, 4.4});
    const DriverPath fl = gradient_flow_u(th0, 50.0, 0.01);
    double prev = log_partition_u(fl.states.front());
    for (int k = 1; k <= fl.steps; ++k) {
        const double u = log_partition_u(fl.state(k));
        CHECK(u <= prev + 1e-12);
        prev = u;
    }
    CHECK(std::fabs(prev - u_min(4)) < 1e-8);
    // equally spaced start stays put
    const DriverPath cst = gradient_flow_u(equally_spaced(3), 1.0, 0.01);
    for (int j = 0; j < 3; ++j)
        CHECK(std::fabs(cst.states.back()[j] - cst.states.front()[j]) < 1e-10);
    // time rescale t -> t/2 matches the zero-energy flow
    const DriverPath g2 = gradient_flow_u(TorusConfig({0.0, 2.0}), 1.0, 1e-3);
    const DriverPath z2 = zero_energy_driver(TorusConfig({0.0, 2.0}), 0.5, 5e-4);
    for (int k = 0; k <= g2.steps; ++k)
        for (int j = 0; j < 2; ++j)
            CHECK(g2.state(k)[j] == doctest::Approx(z2.state(k)[j]).epsilon(1e-8));
}

TEST_CASE("single radial driver: kappa=0 constant; variance and quadratic variation") {
    const ScalarDriver c = single_radial_driver(0.4, 0.0, 1.0, 1e-3, RngKey{34, 0});
    for (double th : c.theta) CHECK(th == 0.4);

    const double kappa = 1.7, S = 0.8, dt = 1e-3;
    const RngKey key{35, 0};
    const int N = 10000;
    std::vector<double> ends(N);
    for (int s = 0; s < N; ++s)
        ends[static_cast<std::size_t>(s)] =
            single_radial_driver(0.0, kappa, S, dt, key.substream(static_cast<std::uint64_t>(s)))
                .theta.back();
    double var = 0;
    for (double e : ends) var += e * e;
    var /= N;
    const double se = kappa * S * std::sqrt(2.0 / N);  // stderr of the variance estimate
    CHECK(std::fabs(var - kappa * S) < 3 * se);

    // quadratic variation over 10^4 increments: relative sd sqrt(2/m) = 1.4%
    const ScalarDriver one = single_radial_driver(0.0, kappa, 2.0, 2e-4, key.substream(99991));
    double qv = 0;
    for (std::size_t k = 0; k + 1 < one.theta.size(); ++k) {
        const double d = one.theta[k + 1] - one.theta[k];
        qv += d * d;
    }
    CHECK(std::fabs(qv - kappa * 2.0) / (kappa * 2.0) < 0.05);
}

TEST_CASE("rotation equivariance up to rounding of the absolute angles") {
    // same noise stream; the translated path agrees to the accumulation of
    // last-ulp differences in the absolute-angle representation
    const TorusConfig a({0.25, 3.25});
    const TorusConfig b({0.75, 3.75});
    const DriverPath pa = simulate_dyson(a, 4.0, 0.25, 1e-3, RngKey{36, 5});
    const DriverPath pb = simulate_dyson(b, 4.0, 0.25, 1e-3, RngKey{36, 5});
    for (int k = 0; k <= pa.steps; ++k)
        for (int j = 0; j < 2; ++j)
            CHECK(std::fabs(pb.state(k)[j] - (pa.state(k)[j] + 0.5)) < 1e-11);
}

TEST_CASE("driver invariant check flags bad paths") {
    DriverPath p = zero_energy_driver(equally_spaced(2), 0.1, 1e-2);
    std::string why;
    CHECK(p.check_invariants(&why));
    p.states[3] = TorusConfig({1.0, 1.0 + 1e-14});
    CHECK_FALSE(p.check_invariants(&why));
}

TEST_CASE("dt too large for the starting gaps is rejected") {
    CHECK_THROWS_AS(simulate_dyson(TorusConfig({0.0, 1e-4}), 1.0, 0.1, 1e-2, RngKey{1, 1}),
                    std::invalid_argument);
}

}  // TEST_SUITE
