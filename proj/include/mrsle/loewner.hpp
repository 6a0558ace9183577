#pragma once

// Multi-slit radial Loewner engine. One time step of the common
// parameterization is realized as n sequential exact radial sub-slits of
// capacity dt each, so g'_t(0) = e^{nt} holds exactly and univalence is
// preserved at every step. Traces, boundary/interior flows, capacities and
// time changes all derive from the same flat sub-slit chain.

#include <optional>
#include <vector>

#include "mrsle/drivers.hpp"
#include "mrsle/parallel.hpp"
#include "mrsle/slit_map.hpp"

namespace mrsle {

inline double eps_disc(double dt) { return 5.0 * dt; }

struct MultiradialChain {
    int n = 0;
    double dt = 0;
    int steps = 0;
    std::vector<double> theta0;
    SlitChain chain;  // steps * n sub-slits, step-major

    // Within-step sub-slit order alternates between steps, which cancels the
    // leading splitting bias of the sequential composition.
    std::size_t sub_pos(int k, int j) const {
        const int p = (k % 2 == 0) ? j : n - 1 - j;
        return static_cast<std::size_t>(k) * static_cast<std::size_t>(n) +
               static_cast<std::size_t>(p);
    }
    // gamma^j(t_k)
    cplx tip_at(int k, int j) const;
    double capacity_at(int k) const { return n * dt * k; }
};

MultiradialChain build_chain(const DriverPath& driver);

struct BoundaryFlow {
    int n = 0;
    double dt = 0;
    int steps = 0;
    std::vector<double> grid;                 // initial angles x_m
    std::vector<std::vector<double>> h;       // [step][m], unwrapped angles
    std::vector<std::vector<double>> hprime;  // [step][m]
    std::vector<int> swallowed_step;          // -1 if never swallowed
    double capacity_at(int k) const { return n * dt * k; }
};

// Integrates the angular flow through the sub-slit chain. Grid points whose
// image gap to a sub-slit driver falls below 10*dt are marked swallowed and
// frozen.
BoundaryFlow evolve_boundary(const DriverPath& driver, std::vector<double> grid);

// Cross-check mode: plain RK4 on the angular ODE
//   d h/dt = sum_j cot((h - theta^j_t)/2),
//   d h'/dt = -(h'/2) sum_j csc^2((h - theta^j_t)/2),
// with the driver linearly interpolated at substep times. Exactly equivariant
// under rotations but not structure-preserving near the drivers.
BoundaryFlow evolve_boundary_rk4(const DriverPath& driver, std::vector<double> grid);

struct InteriorFlow {
    int n = 0;
    double dt = 0;
    int steps = 0;
    std::vector<cplx> z0;
    std::vector<std::vector<cplx>> g;  // [step][m]
    std::vector<int> swallowed_step;
    std::vector<double> gprime0;  // e^{n t_k}, tracked analytically
};

InteriorFlow evolve_interior(const DriverPath& driver, std::vector<cplx> points);

struct MultiradialCurve {
    int n = 0;
    double dt = 0;
    int steps = 0;  // steps of the underlying driver
    int stride = 1;
    std::vector<double> theta0;
    std::vector<double> times;            // sampled times, times[0] = 0
    std::vector<std::vector<cplx>> pts;   // [j][sample]
    int samples() const { return static_cast<int>(times.size()); }
};

// Tips gamma^j(t_k) by backward composition of the inverse sub-slit maps
// (O(k) per tip). Sample-parallel.
MultiradialCurve trace(const DriverPath& driver, int stride = 1,
                       RunMode mode = RunMode::openmp);
MultiradialCurve trace(const MultiradialChain& mc, int stride = 1,
                       RunMode mode = RunMode::openmp);

struct TimeChange {
    double dt = 0;
    std::vector<double> times;
    std::vector<std::vector<double>> sigma;      // [j][sample], from per-curve refit
    std::vector<std::vector<double>> sigma_ode;  // [j][sample], relative-map ODE route
    double max_disagreement = 0;
};

// sigma^j(t) = cap(gamma^j[0,t]) two ways: (b) single-slit refit of the traced
// curve (returned), (a) integrating d sigma/dt = h'_{t,j}(xi^j_t)^{-2} for the
// relative map (cross-check). Disagreement beyond `tolerance` throws.
TimeChange time_change(const DriverPath& driver, const MultiradialCurve& curve,
                       double tolerance = -1 /* default: 4*eps_disc(dt) */,
                       RunMode mode = RunMode::openmp);

struct IndependentCurve {
    double ds = 0;               // own-capacity grid spacing
    std::vector<cplx> pts;       // pts[m] at own capacity m*ds; pts[0] on the circle
};

struct Projection {
    MultiradialCurve curve;
    TimeChange time_change;      // sigma only (route: consumed own-capacity)
    DriverPath common_driver;
    bool truncated = false;
    double T = 0;
};

// Reparameterizes n disjoint single curves (each in its own capacity time)
// into the common capacity time: per common step each curve is consumed by a
// sub-slit of capacity dt. Returns the maximal horizon with a flag when a
// curve is exhausted or the requested horizon is unreachable.
Projection project_to_common_time(const std::vector<IndependentCurve>& curves, double dt,
                                  double T_request);

struct DerivativeBoundReport {
    double x = 0;
    double hprime = 0;
    double cap = 0;
    double hm_plus = 0, hm_minus = 0;
    double lower = 0;
    bool lower_ok = false;
    bool upper_full_ok = false;  // hprime <= e^{-cap}
    bool upper_half_ok = false;  // hprime <= e^{-cap/2}
};

// |h'| via the exact per-sub-slit derivative product; harmonic measures of the
// two boundary arcs adjacent to x as normalized image arc lengths.
DerivativeBoundReport check_derivative_bounds(const MultiradialChain& mc, int upto_step,
                                              double x);

// Closed forms for the "radial fan": n equally spaced radial segments grown
// under constant drivers (the zero-energy evolution from an equally spaced
// start). Via w = z^n these reduce to a single exact radial slit.
double radial_fan_tip_radius(int n, double t);
double radial_fan_sigma(int n, double t);     // cap of one segment at common time t
double radial_fan_hit_time(int n, double v);  // common time when tips reach e^{-v}

}  // namespace mrsle
