#pragma once

// Counter-based random numbers (philox4x32-10, Salmon et al., SC 2011).
// Every draw is a pure function of (seed, stream, a, b), so ensembles are
// reproducible under any parallel schedule.

#include <array>
#include <cstdint>
#include <utility>

namespace mrsle {

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key);

struct RngKey {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    RngKey with_stream(std::uint64_t s) const { return RngKey{seed, s}; }
    RngKey substream(std::uint64_t s) const;
};

// Uniform draws in the open interval (0,1); a block is 128 counter bits wide.
std::pair<double, double> u01_pair(const RngKey& key, std::uint64_t a, std::uint64_t b);
double u01(const RngKey& key, std::uint64_t a, std::uint64_t b);

// Standard gaussians via Box-Muller on one philox block.
std::pair<double, double> gauss_pair(const RngKey& key, std::uint64_t a, std::uint64_t b);
double gauss(const RngKey& key, std::uint64_t a, std::uint64_t b);

// Sequential convenience wrapper over the counter space: keeps (key, a) fixed
// and advances b. Cheap to copy; state is just the cursor.
class RngStream {
  public:
    RngStream(RngKey key, std::uint64_t a) : key_(key), a_(a) {}
    double u01() { return mrsle::u01(key_, a_, b_++); }
    double gauss() { return mrsle::gauss(key_, a_, b_++); }

  private:
    RngKey key_;
    std::uint64_t a_;
    std::uint64_t b_ = 0;
};

}  // namespace mrsle
