#include "mrsle/zipper.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mrsle/torus.hpp"

namespace mrsle {

UnzipResult unzip_curve(std::span<const cplx> pts) {
    if (pts.size() < 2) throw std::invalid_argument("unzip_curve: need at least 2 samples");
    if (std::fabs(std::abs(pts[0]) - 1.0) > 1e-9)
        throw std::invalid_argument("unzip_curve: first sample must lie on the circle");

    UnzipResult out;
    out.chain.reserve(pts.size() - 1);
    out.capacity.reserve(pts.size());
    out.driver.reserve(pts.size());
    out.capacity.push_back(0.0);
    out.driver.push_back(std::arg(pts[0]));

    double acc = 0.0;
    for (std::size_t m = 1; m < pts.size(); ++m) {
        if (std::abs(pts[m]) > 1.0 + 1e-12)
            throw std::invalid_argument("unzip_curve: sample " + std::to_string(m) +
                                        " lies outside the disk");
        const cplx w = out.chain.map_point(pts[m]);
        const double r = std::abs(w);
        if (r >= 1.0 + 1e-9)
            throw std::invalid_argument("unzip_curve: sample " + std::to_string(m) +
                                        " maps outside the disk (non-simple input?)");
        const double rc = std::min(r, 1.0 - 1e-15);
        double xi = std::arg(w);
        xi += kTwoPi * std::round((out.driver.back() - xi) / kTwoPi);
        const double cap = slit::slit_capacity(rc);
        out.chain.push(xi, cap);
        acc += cap;
        out.capacity.push_back(acc);
        out.driver.push_back(xi);
        // landing defect in the stable coordinate: the new slit's tip must sit
        // exactly on the mapped sample, i.e. 4 e^{cap} k(r) = 1
        const double landed = 4.0 * std::exp(cap) * rc / ((1.0 + rc) * (1.0 + rc));
        out.max_landing_error = std::max(out.max_landing_error, std::fabs(landed - 1.0));
    }
    return out;
}

std::vector<cplx> retrace_single(const SlitChain& chain, double theta0) {
    std::vector<cplx> pts(chain.size() + 1);
    pts[0] = std::polar(1.0, theta0);
    for (std::size_t m = 0; m < chain.size(); ++m) pts[m + 1] = chain.tip(m);
    return pts;
}

}  // namespace mrsle
