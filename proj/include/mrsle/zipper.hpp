#pragma once

// Single-curve driver extraction by sequential slit unzipping: each input
// sample, seen in the current coordinates, is consumed by an exact radial
// slit whose angle and capacity are read off in closed form (the tip of the
// slit is placed on the mapped sample, which lands it on the circle exactly).

#include <span>
#include <vector>

#include "mrsle/slit_map.hpp"

namespace mrsle {

struct UnzipResult {
    SlitChain chain;               // one sub-slit per consumed sample
    std::vector<double> capacity;  // cumulative own capacity at each input index
    std::vector<double> driver;    // extracted driver angle at each index (unwrapped)
    double max_landing_error = 0;  // worst | |mapped sample| - tip radius | per step
};

// pts[0] must lie on the unit circle; the curve must be simple and enter the
// open disk. Throws at the offending index for non-simple input (a mapped
// sample falling outside the disk).
UnzipResult unzip_curve(std::span<const cplx> pts);

// Reconstructs curve samples from a single-curve chain (tips of the partial
// compositions); index m corresponds to input index m of the unzip.
std::vector<cplx> retrace_single(const SlitChain& chain, double theta0);

}  // namespace mrsle
