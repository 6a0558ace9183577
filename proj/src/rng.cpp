#include "mrsle/rng.hpp"

#include <cmath>

namespace mrsle {

namespace {

constexpr std::uint32_t kMultA = 0xD2511F53u;
constexpr std::uint32_t kMultB = 0xCD9E8D57u;
constexpr std::uint32_t kWeylA = 0x9E3779B9u;
constexpr std::uint32_t kWeylB = 0xBB67AE85u;

inline void round_once(std::array<std::uint32_t, 4>& x, const std::array<std::uint32_t, 2>& k) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMultA) * x[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMultB) * x[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    x = {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
}

inline std::uint64_t mix64(std::uint64_t v) {
    // splitmix64 finalizer
    v += 0x9E3779B97F4A7C15ull;
    v = (v ^ (v >> 30)) * 0xBF58476D1CE4E5B9ull;
    v = (v ^ (v >> 27)) * 0x94D049BB133111EBull;
    return v ^ (v >> 31);
}

inline std::array<std::uint32_t, 4> block(const RngKey& key, std::uint64_t a, std::uint64_t b) {
    const std::uint64_t k = key.seed ^ mix64(key.stream);
    std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
        static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    std::array<std::uint32_t, 2> kk = {static_cast<std::uint32_t>(k),
                                       static_cast<std::uint32_t>(k >> 32)};
    for (int r = 0; r < 10; ++r) {
        round_once(ctr, kk);
        kk[0] += kWeylA;
        kk[1] += kWeylB;
    }
    return ctr;
}

inline double to_unit(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t v = (static_cast<std::uint64_t>(hi) << 32) | lo;
    // 53 mantissa bits, offset keeps the value strictly inside (0,1)
    return static_cast<double>(v >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) {
    for (int r = 0; r < 10; ++r) {
        round_once(ctr, key);
        key[0] += kWeylA;
        key[1] += kWeylB;
    }
    return ctr;
}

RngKey RngKey::substream(std::uint64_t s) const {
    return RngKey{seed, mix64(stream ^ mix64(s))};
}

std::pair<double, double> u01_pair(const RngKey& key, std::uint64_t a, std::uint64_t b) {
    const auto x = block(key, a, b);
    return {to_unit(x[0], x[1]), to_unit(x[2], x[3])};
}

double u01(const RngKey& key, std::uint64_t a, std::uint64_t b) {
    return u01_pair(key, a, b).first;
}

std::pair<double, double> gauss_pair(const RngKey& key, std::uint64_t a, std::uint64_t b) {
    const auto [u1, u2] = u01_pair(key, a, b);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * M_PI * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

double gauss(const RngKey& key, std::uint64_t a, std::uint64_t b) {
    return gauss_pair(key, a, b).first;
}

}  // namespace mrsle
