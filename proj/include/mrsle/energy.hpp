#pragma once

// Energy functionals: the interacting (Dyson-Dirichlet) form, independent
// single-curve energies via driver extraction, the tilting exponent Psi with
// its kappa = 0 limit, the associated constants, and the finite-horizon rate
// identity connecting the two energy forms through the loop term.

#include <map>
#include <vector>

#include "mrsle/drivers.hpp"
#include "mrsle/loewner.hpp"
#include "mrsle/zipper.hpp"

namespace mrsle {

struct SleConstants {
    double kappa = 0;
    int n = 0;
    double beta_hat = 0;        // (n-1)((kappa-4)^2 + 4n) / (8 kappa)
    double central_charge = 0;  // (6-kappa)(3 kappa-8) / (2 kappa)
};
SleConstants sle_constants(double kappa, int n);

// (1/2) int sum_j |dtheta^j/ds - 2 sum_{i!=j} cot((theta^j-theta^i)/2)|^2 ds
// with forward differences on the grid and the drift at the midpoint state.
// Returns +infinity if any state has collided.
double dyson_dirichlet_energy(const DriverPath& driver);

struct ExtractedDriver {
    std::vector<double> s;      // own-capacity grid
    std::vector<double> theta;  // extracted driver angles (unwrapped)
    double landing_error = 0;   // worst per-step slit landing defect
};
ExtractedDriver extract_single_driver(std::span<const cplx> pts);

// (1/2) int |dtheta/ds|^2 ds for a piecewise-linear driver on a
// (possibly nonuniform) grid.
double dirichlet_energy(std::span<const double> s, std::span<const double> theta);

// Sum over curves of the Dirichlet energy of the extracted independent
// drivers, each on its own capacity grid. The extraction grids are checked
// against the supplied time change.
double independent_energy(const MultiradialCurve& curve, const TimeChange& tc);

// Tilting exponent. kappa > 0:
//   Psi = kappa log(Z(thT)/Z(th0)) + kappa beta_hat n T + kappa c(kappa)/2 L,
// kappa = 0 limit:
//   Psi0 = U(th0) - U(thT) + (1/2)(n+4)(n-1) n T - 12 L.
// Collided endpoints give -infinity.
double psi(const TorusConfig& theta0, const TorusConfig& thetaT, double T, double loop_mass,
           double kappa);
double psi(const DriverPath& driver, double loop_mass, double kappa);

struct BlmRate {
    double rate_bm_form = 0;   // J_{sigma(T)} - Psi0
    double rate_dyson = 0;     // Dyson-Dirichlet energy of the driver
    double l_hat = 0;          // loop_mass - (1/24)(n+4)(n-1) n T
    double independent = 0;    // J_{sigma(T)}
    double psi0 = 0;
};
BlmRate blm_rate_finite_T(const DriverPath& driver, const MultiradialCurve& curve,
                          const TimeChange& tc, double loop_mass, double T);

struct SteadyCell {
    double M = 0, eps = 0, kappa = 0;
    double sup_dev = 0;       // sup |psi_k - psi_0| over {|psi_0| <= M}
    bool uniform_ok = false;  // sup_dev < eps
    bool tails_ok = false;    // sign agreement beyond the M window
};
struct SteadyReport {
    std::vector<SteadyCell> cells;
    bool deviations_monotone_in_kappa = true;
};
// Diagnostic for the uniform-on-sublevels / controlled-tails convergence of a
// family of exponents evaluated on a fixed trajectory set.
SteadyReport steady_convergence_diagnostic(const std::map<double, std::vector<double>>& by_kappa,
                                           const std::vector<double>& psi0,
                                           const std::vector<double>& M_grid,
                                           const std::vector<double>& eps_grid);

}  // namespace mrsle
