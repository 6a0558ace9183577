#pragma once

#include <span>
#include <vector>

namespace mrsle {

struct MeanStderr {
    double mean = 0;
    double stderr_ = 0;
    long n = 0;
};
MeanStderr mean_stderr(std::span<const double> v);

double median(std::vector<double> v);  // by value: sorts a copy
double quantile(std::vector<double> v, double q);
double excess_kurtosis(std::span<const double> v);

struct WilsonInterval {
    double p_hat, lo, hi;
};
WilsonInterval wilson_interval(long successes, long trials, double z = 1.959963984540054);

struct LineFit {
    double slope = 0, intercept = 0;
    double slope_se = 0;
    double r2 = 0;
};
// Weighted least squares for y ~ intercept + slope*x, weights w_i = 1/sigma_i^2.
LineFit weighted_line_fit(std::span<const double> x, std::span<const double> y,
                          std::span<const double> w);

// Upper regularized incomplete gamma Q(a, x); chi-square tail p-value.
double gamma_q(double a, double x);
double chi2_pvalue(double stat, int dof);

// Two-sample Kolmogorov-Smirnov distance; samples may carry weights
// (normalized internally).
double ks_distance(std::vector<double> a, std::vector<double> b);
double ks_distance_weighted(std::vector<double> a, std::vector<double> wa,
                            std::vector<double> b, std::vector<double> wb);

}  // namespace mrsle
