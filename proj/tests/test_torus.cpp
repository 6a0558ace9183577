#include <doctest.h>

#include <cmath>

#include "mrsle/rng.hpp"
#include "mrsle/torus.hpp"

using namespace mrsle;

namespace {

TorusConfig random_config(int n, double min_gap, RngKey key, std::uint64_t id) {
    for (std::uint64_t trial = 0;; ++trial) {
        std::vector<double> a(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
            a[static_cast<std::size_t>(j)] = kTwoPi * u01(key, id * 1000 + trial, static_cast<std::uint64_t>(j));
        TorusConfig c(a);
        if (c.min_gap() > min_gap) return c;
    }
}

std::vector<double> fd_grad_u(const TorusConfig& c, double h = 1e-6) {
    std::vector<double> g(static_cast<std::size_t>(c.n()));
    for (int j = 0; j < c.n(); ++j) {
        auto up = c.angles(), dn = c.angles();
        up[static_cast<std::size_t>(j)] += h;
        dn[static_cast<std::size_t>(j)] -= h;
        g[static_cast<std::size_t>(j)] =
            (log_partition_u(TorusConfig(up)) - log_partition_u(TorusConfig(dn))) / (2 * h);
    }
    return g;
}

}  // namespace

TEST_SUITE("torus") {

TEST_CASE("potential values") {
    CHECK(log_partition_u(TorusConfig({0.0, M_PI})) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(log_partition_u(TorusConfig({0.0, M_PI / 2})) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(log_partition_u(equally_spaced(3)) == doctest::Approx(0.8630462173553426).epsilon(1e-12));
}

TEST_CASE("minimum values") {
    CHECK(u_min(1) == doctest::Approx(0.0));
    CHECK(u_min(2) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(u_min(3) == doctest::Approx(0.8630462173553426).epsilon(1e-12));
    CHECK(u_min(4) == doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-12));
    for (int n = 2; n <= 6; ++n)
        CHECK(log_partition_u(equally_spaced(n, 0.37)) == doctest::Approx(u_min(n)).epsilon(1e-12));
}

TEST_CASE("partition function identity and collision value") {
    const RngKey key{11, 0};
    for (int id = 0; id < 20; ++id) {
        const TorusConfig c = random_config(3, 0.05, key, static_cast<std::uint64_t>(id));
        for (double kappa : {0.5, 2.0, 4.0})
            CHECK(partition_z(c, kappa) ==
                  doctest::Approx(std::exp(-log_partition_u(c) / kappa)).epsilon(1e-12));
    }
    CHECK(partition_z(TorusConfig({0.0, M_PI}), 2.0) == doctest::Approx(1.0));
    CHECK(partition_z(TorusConfig({0.0, M_PI / 2}), 2.0) ==
          doctest::Approx(std::sin(M_PI / 4)).epsilon(1e-12));

    const TorusConfig collided({1.0, 1.0 + 1e-14, 2.0});
    CHECK(std::isinf(log_partition_u(collided)));
    CHECK(log_partition_u(collided) > 0);
    CHECK(partition_z(collided, 1.0) == 0.0);
    CHECK_THROWS_AS(grad_u(collided), collision_error);
    // near-collision but above the threshold: finite, not an overflow artifact
    const TorusConfig tight({0.0, 1e-9, 2.0});
    CHECK(std::isfinite(log_partition_u(tight)));
}

TEST_CASE("gradient hand value and symmetry zeros") {
    const auto g = grad_u(TorusConfig({0.0, M_PI / 2}));
    CHECK(g[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g[1] == doctest::Approx(-1.0).epsilon(1e-12));
    for (int n = 2; n <= 5; ++n) {
        const auto ge = grad_u(equally_spaced(n, 0.21));
        for (double v : ge) CHECK(std::fabs(v) < 1e-10);
    }
}

TEST_CASE("gradient matches finite differences") {
    const RngKey key{12, 0};
    for (int id = 0; id < 100; ++id) {
        const int n = 2 + id % 4;
        const TorusConfig c = random_config(n, 0.1, key, static_cast<std::uint64_t>(id));
        const auto g = grad_u(c);
        const auto fd = fd_grad_u(c);
        double sum = 0;
        for (int j = 0; j < n; ++j) {
            const double scale = std::max(1.0, std::fabs(fd[static_cast<std::size_t>(j)]));
            CHECK(std::fabs(g[static_cast<std::size_t>(j)] - fd[static_cast<std::size_t>(j)]) / scale < 1e-6);
            sum += g[static_cast<std::size_t>(j)];
        }
        CHECK(std::fabs(sum) < 1e-10);  // translation invariance
    }
}

TEST_CASE("rotation and relabeling invariance") {
    const RngKey key{13, 0};
    for (int id = 0; id < 30; ++id) {
        const int n = 2 + id % 3;
        const TorusConfig c = random_config(n, 0.05, key, static_cast<std::uint64_t>(id));
        const double u0 = log_partition_u(c);
        CHECK(std::fabs(log_partition_u(c.rotated(0.5)) - u0) < 1e-12 * std::max(1.0, std::fabs(u0)) + 1e-12);
        CHECK(std::fabs(log_partition_u(c.rotated(-8.25)) - u0) < 1e-11);
        // cyclic relabeling
        auto a = c.angles();
        std::rotate(a.begin(), a.begin() + 1, a.end());
        CHECK(std::fabs(log_partition_u(TorusConfig(a)) - u0) < 1e-12 + 1e-12 * std::fabs(u0));
        CHECK(std::fabs(partition_z(TorusConfig(a), 2.0) - partition_z(c, 2.0)) < 1e-12);
    }
}

TEST_CASE("equally spaced configurations minimize U strictly") {
    const RngKey key{14, 0};
    for (int id = 0; id < 1000; ++id) {
        const int n = 2 + id % 3;
        const TorusConfig c = random_config(n, 0.02, key, static_cast<std::uint64_t>(id));
        const double u = log_partition_u(c);
        CHECK(u >= u_min(n) - 1e-10);
        // strict unless equally spaced: perturbed configs are not
        double worst_gap_dev = 0;
        auto cc = c.canonical().angles();
        for (int j = 0; j < n; ++j) {
            const double gap = (j + 1 < n ? cc[static_cast<std::size_t>(j) + 1] : cc[0] + kTwoPi) -
                               cc[static_cast<std::size_t>(j)];
            worst_gap_dev = std::max(worst_gap_dev, std::fabs(gap - kTwoPi / n));
        }
        if (worst_gap_dev > 1e-3) CHECK(u > u_min(n) + 1e-10);
    }
    CHECK(log_partition_u(equally_spaced(4, 0.1)) == doctest::Approx(u_min(4)).epsilon(1e-10));
}

TEST_CASE("equally spaced gaps") {
    const TorusConfig c = equally_spaced(4, 0.1);
    CHECK(c.min_gap() == doctest::Approx(M_PI / 2).epsilon(1e-12));
    CHECK(equally_spaced(2)[1] == doctest::Approx(M_PI));
}

}  // TEST_SUITE
