#pragma once

// Exact radial single-slit building block for Loewner chains in the disk.
//
// With k(w) = w/(1+w)^2 (maps the disk onto the plane minus [1/4, inf)), the
// mapping-out function of the radial slit [x,1] with capacity c is
//     g(z) = k^{-1}(e^c k(z)),   cap([x,1]) = -log(4 k(x)).
// Composing these per step preserves univalence exactly; the multiradial
// chain is a flat sequence of such sub-slits.

#include <complex>
#include <cstddef>
#include <vector>

namespace mrsle {

using cplx = std::complex<double>;

namespace slit {

cplx koebe(cplx w);
cplx koebe_inv(cplx zeta);          // branch fixing 0, analytic off [1/4, inf)
double koebe_inv_real(double zeta);  // zeta in (0, 1/4], result in (0, 1]

// Radius x of the slit tip for a slit of given capacity, and its inverse.
double tip_radius(double cap);
double slit_capacity(double tip_radius);

// Mapping-out g of the slit at angle theta with capacity cap (disk minus
// slit -> disk), and its inverse f = g^{-1} (defined on the whole disk).
cplx forward(cplx z, double theta, double cap);
cplx inverse(cplx w, double theta, double cap);

// Derivative of the forward map at an interior point.
cplx forward_deriv(cplx z, double theta, double cap);

// Boundary action in angle coordinates. For u = x - theta in (0, 2pi):
//   H_cap(u) = 2 acos(e^{-cap/2} cos(u/2)),
//   H'_cap(u) = e^{-cap/2} sin(u/2) / sqrt(1 - e^{-cap} cos^2(u/2)).
// H' <= e^{-cap/2} with equality exactly at the antipode u = pi.
double boundary_angle(double u, double cap);
double boundary_angle_deriv(double u, double cap);

// Half-width of the boundary arc swallowed by the slit base: 2 acos(e^{-cap/2}).
double base_half_angle(double cap);

// Unwrapped-angle version: x -> x + (H(u) - u) with u = wrap(x - theta).
double forward_angle(double x, double theta, double cap);

}  // namespace slit

struct SlitStep {
    double angle;  // driver angle of the sub-slit (radians, unwrapped)
    double cap;    // capacity of the sub-slit
};

// Composition g = s_{m-1} o ... o s_0 of radial slit maps.
class SlitChain {
  public:
    void push(double angle, double cap) { steps_.push_back({angle, cap}); }
    void reserve(std::size_t n) { steps_.reserve(n); }
    std::size_t size() const { return steps_.size(); }
    bool empty() const { return steps_.empty(); }
    const SlitStep& step(std::size_t i) const { return steps_[i]; }
    const std::vector<SlitStep>& steps() const { return steps_; }
    double total_capacity() const;

    // Forward map through sub-slits [first, last).
    cplx map_point(cplx z, std::size_t first = 0, std::size_t last = npos) const;
    // Inverse map: applies inverses of sub-slits [first, last) in reverse.
    cplx pull_point(cplx w, std::size_t first = 0, std::size_t last = npos) const;

    // Tip of sub-slit idx pulled back to the original domain: the curve point
    // created by that sub-slit.
    cplx tip(std::size_t idx) const;

    // Boundary angle flow through sub-slits [first, last); optionally
    // accumulates the spatial derivative product into *deriv.
    double map_angle(double x, std::size_t first = 0, std::size_t last = npos,
                     double* deriv = nullptr) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  private:
    std::vector<SlitStep> steps_;
};

}  // namespace mrsle
