#pragma once

// Driving-function generators: the interacting n-radial Bessel SDE, the
// zero-energy ODE, the potential gradient flow, and single-curve Brownian
// drivers for independent radial evolution.

#include <optional>
#include <string>
#include <vector>

#include "mrsle/rng.hpp"
#include "mrsle/torus.hpp"

namespace mrsle {

struct numerical_abort : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DriverPath {
    double dt = 0;
    int steps = 0;
    std::vector<TorusConfig> states;  // steps + 1 entries
    std::optional<double> kappa_tag;

    int n() const { return states.empty() ? 0 : states.front().n(); }
    double T() const { return dt * steps; }
    const TorusConfig& state(int k) const { return states[static_cast<std::size_t>(k)]; }
    DriverPath prefix(int k) const;

    // No collided state; per-component increments bounded (flags blow-ups).
    bool check_invariants(std::string* why = nullptr, double max_increment = 1.0) const;
};

// Cotangent interaction drift of the n-radial Bessel SDE:
//   drift_j = 2 sum_{i != j} cot((theta_j - theta_i)/2) = -2 (grad U)_j.
std::vector<double> dyson_drift(const TorusConfig& theta);

// Euler-Maruyama with a per-step collision guard (step retried at dt/2, up to
// 8 refinement levels, then numerical_abort). Gaussians are addressed by
// (seed, stream, step, attempt, component). kappa = 0 delegates to
// zero_energy_driver so the two coincide exactly.
DriverPath simulate_dyson(const TorusConfig& theta0, double kappa, double T, double dt,
                          RngKey key);

// RK4 on dtheta^j/ds = 2 sum cot((theta^j - theta^i)/2).
DriverPath zero_energy_driver(const TorusConfig& theta0, double T, double dt);

// RK4 on dtheta/dt = -grad U(theta); U is nonincreasing along the output and
// the flow stabilizes at an equally spaced configuration.
DriverPath gradient_flow_u(const TorusConfig& theta0, double T, double dt);

struct ScalarDriver {
    double dt = 0;
    std::vector<double> theta;  // steps + 1 samples
    int steps() const { return static_cast<int>(theta.size()) - 1; }
    double S() const { return dt * steps(); }
};

// theta_s = theta0 + sqrt(kappa) W_s sampled on the grid.
ScalarDriver single_radial_driver(double theta0, double kappa, double S, double dt, RngKey key);

}  // namespace mrsle
