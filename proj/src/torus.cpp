#include "mrsle/torus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mrsle {

namespace {
double wrap_2pi(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0) r += kTwoPi;
    return r;
}
}  // namespace

TorusConfig::TorusConfig(std::vector<double> angles) : angles_(std::move(angles)) {
    if (angles_.empty()) throw std::invalid_argument("TorusConfig: need n >= 1 angles");
}

double TorusConfig::min_gap() const {
    const int n = this->n();
    if (n == 1) return kTwoPi;
    std::vector<double> w(angles_.size());
    std::transform(angles_.begin(), angles_.end(), w.begin(), wrap_2pi);
    std::sort(w.begin(), w.end());
    double g = w.front() + kTwoPi - w.back();
    for (int j = 0; j + 1 < n; ++j) g = std::min(g, w[j + 1] - w[j]);
    return g;
}

TorusConfig TorusConfig::canonical() const {
    std::vector<double> w(angles_.size());
    std::transform(angles_.begin(), angles_.end(), w.begin(), wrap_2pi);
    std::sort(w.begin(), w.end());
    return TorusConfig(std::move(w));
}

TorusConfig TorusConfig::rotated(double c) const {
    std::vector<double> w = angles_;
    for (double& x : w) x += c;
    return TorusConfig(std::move(w));
}

double log_partition_u(const TorusConfig& theta) {
    if (theta.collided()) return std::numeric_limits<double>::infinity();
    const int n = theta.n();
    double u = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            // |sin((a_j - a_i)/2)| matches the ordered-representative value
            // and is invariant under rotation and relabeling.
            u -= 2.0 * std::log(std::fabs(std::sin(0.5 * (theta[j] - theta[i]))));
        }
    return u;
}

double partition_z(const TorusConfig& theta, double kappa) {
    if (kappa <= 0) throw std::invalid_argument("partition_z: kappa must be > 0");
    if (theta.collided()) return 0.0;
    return std::exp(-log_partition_u(theta) / kappa);
}

std::vector<double> grad_u(const TorusConfig& theta) {
    if (theta.collided()) throw collision_error("grad_u: collided configuration");
    const int n = theta.n();
    std::vector<double> g(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            if (i == j) continue;
            g[static_cast<std::size_t>(j)] -= 1.0 / std::tan(0.5 * (theta[j] - theta[i]));
        }
    return g;
}

double u_min(int n) {
    if (n < 1) throw std::invalid_argument("u_min: n >= 1");
    double u = 0.0;
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j <= n; ++j) u -= 2.0 * std::log(std::sin(M_PI * (j - i) / n));
    return u;
}

TorusConfig equally_spaced(int n, double offset) {
    std::vector<double> a(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(j)] = offset + kTwoPi * j / n;
    return TorusConfig(std::move(a));
}

}  // namespace mrsle
