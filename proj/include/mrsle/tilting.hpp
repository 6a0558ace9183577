#pragma once

// Radon-Nikodym bridge between n independent radial evolutions and the
// interacting n-radial law: the tilting weight, the importance sampler built
// on it (sample independent curves, restrict to non-colliding, project to
// common time, reweight), and the small-kappa concentration experiment.

#include <vector>

#include "mrsle/energy.hpp"
#include "mrsle/loewner.hpp"
#include "mrsle/loop_measure.hpp"

namespace mrsle {

// log of Z(thetaT)/Z(theta0) * exp(beta_hat n T + c(kappa)/2 * L), equal to
// psi(...)/kappa by construction. Collision gives -infinity (weight 0).
double log_rn_weight(const TorusConfig& theta0, const TorusConfig& thetaT, double T,
                     double loop_mass, double kappa);
double rn_weight(const TorusConfig& theta0, const TorusConfig& thetaT, double T,
                 double loop_mass, double kappa);

struct ImportanceEnsemble {
    std::vector<double> log_weight;  // surviving samples only
    std::vector<double> gap_T;       // theta^2_T - theta^1_T (n = 2)
    std::vector<double> u_T;         // U(theta_T)
    long n_total = 0;
    long n_discarded = 0;  // collided before common horizon
    double ess = 0;
    bool inconclusive = false;  // ess < 10

    double weighted_mean(const std::vector<double>& f, double* se = nullptr) const;
};

struct ImportanceParams {
    long n_samples = 20000;
    long battery_loops = 512;
    double delta_factor = 4.0;  // restriction: min curve distance >= factor * trace scale
    RngKey key;
    RunMode mode = RunMode::openmp;
};

ImportanceEnsemble importance_sample_nradial(double kappa, int n, const TorusConfig& theta0,
                                             double T, double dt, const ImportanceParams& p);

struct ConcentrationReport {
    std::vector<double> kappas;
    std::vector<double> median_sup_dev;  // vs the zero-energy path from theta0
    double fitted_power = 0;             // slope of log median vs log kappa
    bool monotone_decreasing = true;
};
ConcentrationReport concentration_experiment(int n, const TorusConfig& theta0,
                                             std::vector<double> kappa_grid, double T, double dt,
                                             int n_samples, RngKey key,
                                             RunMode mode = RunMode::openmp);

}  // namespace mrsle
