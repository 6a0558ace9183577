#include "mrsle/slit_map.hpp"

#include <algorithm>
#include <cmath>

#include "mrsle/torus.hpp"

namespace mrsle {

namespace slit {

namespace {
double wrap_2pi(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0) r += kTwoPi;
    return r;
}
}  // namespace

cplx koebe(cplx w) {
    const cplx d = 1.0 + w;
    return w / (d * d);
}

cplx koebe_inv(cplx zeta) {
    // 2 zeta / (1 - 2 zeta + sqrt(1 - 4 zeta)); stable near zeta = 0
    const cplx s = std::sqrt(1.0 - 4.0 * zeta);
    return 2.0 * zeta / (1.0 - 2.0 * zeta + s);
}

double koebe_inv_real(double zeta) {
    const double s = std::sqrt(std::max(0.0, 1.0 - 4.0 * zeta));
    return 2.0 * zeta / (1.0 - 2.0 * zeta + s);
}

double tip_radius(double cap) { return koebe_inv_real(0.25 * std::exp(-cap)); }

double slit_capacity(double tip) {
    return -std::log(4.0 * tip / ((1.0 + tip) * (1.0 + tip)));
}

cplx forward(cplx z, double theta, double cap) {
    const cplx rot = std::polar(1.0, -theta);
    const cplx w = z * rot;
    if (std::abs(1.0 + w) < 1e-14) return z;  // antipode is a fixed point
    if (std::fabs(std::abs(w) - 1.0) < 1e-12) {
        // exactly on the circle: koebe(w) sits on the branch cut, so use the
        // angular form to stay on the correct side
        const double u = wrap_2pi(std::arg(w));
        return std::polar(1.0, theta + boundary_angle(u, cap));
    }
    return std::polar(1.0, theta) * koebe_inv(std::exp(cap) * koebe(w));
}

cplx inverse(cplx w, double theta, double cap) {
    const cplx rot = std::polar(1.0, -theta);
    const cplx v = w * rot;
    if (std::abs(1.0 + v) < 1e-14) return w;
    return std::polar(1.0, theta) * koebe_inv(std::exp(-cap) * koebe(v));
}

cplx forward_deriv(cplx z, double theta, double cap) {
    // g'(z) = e^c k'(w) / k'(g(w)) with w = e^{-i theta} z
    const cplx rot = std::polar(1.0, -theta);
    const cplx w = z * rot;
    if (std::abs(1.0 + w) < 1e-14) return std::exp(-cap);  // |g'| at the antipode
    const cplx gw = koebe_inv(std::exp(cap) * koebe(w));
    auto kprime = [](cplx v) {
        const cplx d = 1.0 + v;
        return (1.0 - v) / (d * d * d);
    };
    return std::exp(cap) * kprime(w) / kprime(gw);
}

double boundary_angle(double u, double cap) {
    const double c = std::exp(-0.5 * cap) * std::cos(0.5 * u);
    return 2.0 * std::acos(std::clamp(c, -1.0, 1.0));
}

double boundary_angle_deriv(double u, double cap) {
    const double e = std::exp(-0.5 * cap);
    const double c = std::cos(0.5 * u);
    const double s = std::sin(0.5 * u);
    return e * s / std::sqrt(std::max(1e-300, 1.0 - e * e * c * c));
}

double base_half_angle(double cap) { return 2.0 * std::acos(std::exp(-0.5 * cap)); }

double forward_angle(double x, double theta, double cap) {
    const double u = wrap_2pi(x - theta);
    if (u == 0.0) return x;  // exactly at the driver: caller handles swallowing
    return x + (boundary_angle(u, cap) - u);
}

}  // namespace slit

double SlitChain::total_capacity() const {
    double s = 0;
    for (const auto& st : steps_) s += st.cap;
    return s;
}

cplx SlitChain::map_point(cplx z, std::size_t first, std::size_t last) const {
    last = std::min(last, steps_.size());
    for (std::size_t i = first; i < last; ++i) z = slit::forward(z, steps_[i].angle, steps_[i].cap);
    return z;
}

cplx SlitChain::pull_point(cplx w, std::size_t first, std::size_t last) const {
    last = std::min(last, steps_.size());
    for (std::size_t i = last; i > first; --i)
        w = slit::inverse(w, steps_[i - 1].angle, steps_[i - 1].cap);
    return w;
}

cplx SlitChain::tip(std::size_t idx) const {
    const cplx t = std::polar(slit::tip_radius(steps_[idx].cap), steps_[idx].angle);
    return pull_point(t, 0, idx);
}

double SlitChain::map_angle(double x, std::size_t first, std::size_t last, double* deriv) const {
    last = std::min(last, steps_.size());
    double d = 1.0;
    for (std::size_t i = first; i < last; ++i) {
        if (deriv) {
            const double u = std::fmod(x - steps_[i].angle, kTwoPi);
            d *= slit::boundary_angle_deriv(u < 0 ? u + kTwoPi : u, steps_[i].cap);
        }
        x = slit::forward_angle(x, steps_[i].angle, steps_[i].cap);
    }
    if (deriv) *deriv = d;
    return x;
}

}  // namespace mrsle
