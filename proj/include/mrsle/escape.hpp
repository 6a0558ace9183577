#pragma once

// Hitting times of small disks, escape events and their Monte-Carlo
// probabilities, the transience envelope experiment, and the
// partition-expectation bound.

#include <optional>
#include <vector>

#include "mrsle/loewner.hpp"
#include "mrsle/stats.hpp"

namespace mrsle {

// First time |gamma^j(t)| < e^{-v}, linearly interpolated between bracketing
// samples; v = 0 returns 0 by convention.
std::optional<double> hitting_time(std::span<const cplx> pts, std::span<const double> times,
                                   double v);

struct HittingBoundRow {
    int j = 0;
    double v = 0, rho = 0;
    double lo_margin = 0;       // n rho - (v - log 4)
    double hi_margin = 0;       // v + log(n)/2 - n rho  (as-stated constant)
    double hi_margin_full = 0;  // v + log(n) - n rho    (chain-rule constant)
    bool ok = false;
};
struct HittingBoundsReport {
    bool all_ok = true;
    std::vector<HittingBoundRow> rows;
};
// Sandwich v - log(4) <= n rho^j(v) <= v + log(n)/2, within eps.
HittingBoundsReport check_hitting_bounds(const MultiradialCurve& curve,
                                         std::span<const double> v_grid, double eps);

struct EscapeMcResult {
    double p_hat = 0, ci_lo = 0, ci_hi = 0;
    long hits = 0, escapes = 0, n_samples = 0;
    bool inconclusive = false;
};

// Probability that curve 1 leaves the closed disk of radius e^{-u} after
// first entering the disk of radius e^{-v}, within the horizon.
EscapeMcResult escape_probability_mc(double kappa, int n, const TorusConfig& theta0, double u,
                                     double v, double horizon, long n_samples, double dt,
                                     RngKey key, RunMode mode = RunMode::openmp);

struct EscapeFit {
    std::vector<double> dv;  // v - u
    std::vector<EscapeMcResult> results;
    LineFit fit;             // log p vs (v-u), CI-weighted
};
EscapeFit escape_exponent_fit(double kappa, int n, const TorusConfig& theta0, double u,
                              std::span<const double> dv_grid, long n_samples_per_point,
                              double dt, RngKey key, RunMode mode = RunMode::openmp);

struct TransienceReport {
    std::vector<double> times;
    std::vector<double> envelope;          // 4 exp(-(n t - log(n)/2))
    std::vector<double> max_abs_tip;       // ensemble max of max_j |tip|
    std::vector<double> median_tip;        // ensemble median of max_j |tip|
    bool envelope_ok = true;
    double fraction_eventually_decreasing = 0;  // per-trajectory, after t = 1
};
TransienceReport transience_experiment(double kappa, int n, double T, double dt, int n_samples,
                                       RngKey key, RunMode mode = RunMode::openmp);

struct PartitionExpectationReport {
    double mc_mean = 0, mc_stderr = 0;
    double bound = 0;   // exp(n(n^2-1) t / 12) / Z(theta_0)
    double margin = 0;  // bound - (mean - 2 stderr)
    bool ok = false;
    double kurtosis = 0;
    bool heavy_tail_warning = false;
};
// Monte Carlo check of E[1/Z(theta_t)] <= exp(n(n^2-1)t/12) / Z(theta_0).
PartitionExpectationReport partition_expectation_check(double kappa, int n,
                                                       const TorusConfig& theta0, double t,
                                                       long n_samples, double dt, RngKey key,
                                                       RunMode mode = RunMode::openmp);

// Monotonicity of b(n,kappa) = n((8-kappa)/2 - kappa(n^2-1)/12) on (0, 1/n^2].
struct EscapeExponentStructure {
    double kappa0 = 0;  // 1/n^2
    bool b_positive_on_range = true;
    bool b_decreasing_in_kappa = true;
};
EscapeExponentStructure escape_exponent_structure(int n);

}  // namespace mrsle
