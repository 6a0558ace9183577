#include <doctest.h>

#include <cmath>
#include <set>

#include "mrsle/rng.hpp"
#include "mrsle/stats.hpp"

using namespace mrsle;

TEST_SUITE("rng") {

// reference vectors for philox4x32-10 (Salmon et al. known-answer values)
TEST_CASE("philox known answers") {
    auto v = philox4x32_10({0, 0, 0, 0}, {0, 0});
    CHECK(v[0] == 0x6627e8d5u);
    CHECK(v[1] == 0xe169c58du);
    CHECK(v[2] == 0xbc57ac4cu);
    CHECK(v[3] == 0x9b00dbd8u);

    auto w = philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                           {0xffffffffu, 0xffffffffu});
    CHECK(w[0] == 0x408f276du);
    CHECK(w[1] == 0x41c83b0eu);
    CHECK(w[2] == 0xa20bc7c6u);
    CHECK(w[3] == 0x6d5451fdu);

    auto x = philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                           {0xa4093822u, 0x299f31d0u});
    CHECK(x[0] == 0xd16cfe09u);
    CHECK(x[1] == 0x94fdccebu);
    CHECK(x[2] == 0x5001e420u);
    CHECK(x[3] == 0x24126ea1u);
}

TEST_CASE("draws are pure functions of the address") {
    const RngKey k{123, 45};
    CHECK(gauss(k, 7, 9) == gauss(k, 7, 9));
    CHECK(u01(k, 7, 9) == u01(k, 7, 9));
    CHECK(gauss(k, 7, 9) != gauss(k, 7, 10));
    CHECK(gauss(k, 8, 9) != gauss(k, 7, 9));
    CHECK(gauss(k.with_stream(46), 7, 9) != gauss(k, 7, 9));
    CHECK(gauss(RngKey{124, 45}, 7, 9) != gauss(k, 7, 9));
}

TEST_CASE("substreams do not collide on small ids") {
    const RngKey k{9, 0};
    std::set<double> seen;
    for (std::uint64_t s = 0; s < 100; ++s) seen.insert(u01(k.substream(s), 0, 0));
    CHECK(seen.size() == 100);
}

TEST_CASE("uniforms stay in the open interval and look uniform") {
    const RngKey k{2024, 1};
    double mn = 1, mx = 0, sum = 0;
    const int N = 20000;
    for (int i = 0; i < N; ++i) {
        const double u = u01(k, static_cast<std::uint64_t>(i), 0);
        mn = std::min(mn, u);
        mx = std::max(mx, u);
        sum += u;
    }
    CHECK(mn > 0.0);
    CHECK(mx < 1.0);
    CHECK(std::fabs(sum / N - 0.5) < 0.01);
}

TEST_CASE("gaussian moments") {
    const RngKey k{77, 3};
    const int N = 50000;
    std::vector<double> g(N);
    for (int i = 0; i < N; ++i) g[static_cast<std::size_t>(i)] = gauss(k, static_cast<std::uint64_t>(i), 1);
    const auto ms = mean_stderr(g);
    CHECK(std::fabs(ms.mean) < 3.5 * ms.stderr_);
    double m2 = 0, m4 = 0;
    for (double x : g) {
        m2 += x * x;
        m4 += x * x * x * x;
    }
    m2 /= N;
    m4 /= N;
    CHECK(m2 == doctest::Approx(1.0).epsilon(0.02));
    CHECK(m4 == doctest::Approx(3.0).epsilon(0.06));
}

}  // TEST_SUITE
