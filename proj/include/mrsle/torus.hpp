#pragma once

// Ordered angle configurations on the torus and the semiclassical potential
//   U(a) = -2 sum_{i<j} log sin((a_j - a_i)/2),
// together with its gradient, minimizers and the partition function
//   Z_kappa = exp(-U/kappa).

#include <stdexcept>
#include <vector>

namespace mrsle {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Angular gaps below this are treated as collisions (below the double
// precision resolution of cot at the implied scales).
inline constexpr double kCollisionGap = 1e-12;

struct collision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class TorusConfig {
  public:
    TorusConfig() = default;
    explicit TorusConfig(std::vector<double> angles);

    int n() const { return static_cast<int>(angles_.size()); }
    const std::vector<double>& angles() const { return angles_; }
    double operator[](int j) const { return angles_[static_cast<std::size_t>(j)]; }

    // Smallest cyclic gap between the angles reduced mod 2pi. For n = 1 this
    // is 2pi by convention.
    double min_gap() const;
    bool collided() const { return min_gap() < kCollisionGap; }

    // Representative with the first angle in [0, 2pi) and ascending cyclic
    // order. Angles are otherwise stored unwrapped so paths may spiral.
    TorusConfig canonical() const;

    TorusConfig rotated(double c) const;

  private:
    std::vector<double> angles_;
};

// U(theta); +infinity when the configuration has collided.
double log_partition_u(const TorusConfig& theta);

// Z^kappa(theta) = exp(-U/kappa); 0 when collided.
double partition_z(const TorusConfig& theta, double kappa);

// (grad U)_j = -sum_{i != j} cot((theta_j - theta_i)/2). Components sum to 0.
// Throws collision_error when collided.
std::vector<double> grad_u(const TorusConfig& theta);

// inf U over the torus: -2 sum_{i<j} log sin(pi (j-i)/n).
double u_min(int n);

TorusConfig equally_spaced(int n, double offset = 0.0);

}  // namespace mrsle
