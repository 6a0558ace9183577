#include "mrsle/drivers.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace mrsle {

DriverPath DriverPath::prefix(int k) const {
    DriverPath p;
    p.dt = dt;
    p.steps = k;
    p.kappa_tag = kappa_tag;
    p.states.assign(states.begin(), states.begin() + k + 1);
    return p;
}

bool DriverPath::check_invariants(std::string* why, double max_increment) const {
    if (static_cast<int>(states.size()) != steps + 1) {
        if (why) *why = "state count does not match steps";
        return false;
    }
    for (int k = 0; k <= steps; ++k) {
        if (states[static_cast<std::size_t>(k)].min_gap() < kCollisionGap) {
            if (why) *why = "collided state at step " + std::to_string(k);
            return false;
        }
    }
    for (int k = 0; k < steps; ++k)
        for (int j = 0; j < n(); ++j) {
            const double inc = std::fabs(states[static_cast<std::size_t>(k) + 1][j] -
                                         states[static_cast<std::size_t>(k)][j]);
            if (inc > max_increment) {
                if (why) {
                    std::ostringstream os;
                    os << "increment " << inc << " at step " << k << " component " << j;
                    *why = os.str();
                }
                return false;
            }
        }
    return true;
}

std::vector<double> dyson_drift(const TorusConfig& theta) {
    const int n = theta.n();
    std::vector<double> d(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            if (i == j) continue;
            d[static_cast<std::size_t>(j)] += 2.0 / std::tan(0.5 * (theta[j] - theta[i]));
        }
    return d;
}

namespace {

std::vector<double> add_scaled(const std::vector<double>& x, const std::vector<double>& d,
                               double h) {
    std::vector<double> y = x;
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += h * d[j];
    return y;
}

template <class Drift>
std::vector<double> rk4_step(const std::vector<double>& x, double h, const Drift& f) {
    const auto k1 = f(x);
    const auto k2 = f(add_scaled(x, k1, 0.5 * h));
    const auto k3 = f(add_scaled(x, k2, 0.5 * h));
    const auto k4 = f(add_scaled(x, k3, h));
    std::vector<double> y = x;
    for (std::size_t j = 0; j < y.size(); ++j)
        y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    return y;
}

// Substeps per grid step chosen so the drift cannot traverse a quarter gap.
template <class Drift>
std::vector<double> rk4_step_guarded(std::vector<double> x, double h, const Drift& f) {
    int sub = 1;
    for (;;) {
        const auto d = f(x);
        double dmax = 0;
        for (double v : d) dmax = std::max(dmax, std::fabs(v));
        const double gap = TorusConfig(x).min_gap();
        if (dmax * (h / sub) <= 0.25 * gap || sub >= (1 << 16)) break;
        sub *= 2;
    }
    for (int s = 0; s < sub; ++s) x = rk4_step(x, h / sub, f);
    return x;
}

}  // namespace

DriverPath simulate_dyson(const TorusConfig& theta0, double kappa, double T, double dt,
                          RngKey key) {
    if (kappa == 0.0) {
        DriverPath p = zero_energy_driver(theta0, T, dt);
        p.kappa_tag = 0.0;
        return p;
    }
    if (kappa < 0 || kappa > 4)
        throw std::invalid_argument("simulate_dyson: kappa must lie in (0, 4]");
    if (theta0.collided()) throw collision_error("simulate_dyson: collided start");
    {
        const auto d0 = dyson_drift(theta0);
        double dmax = 0;
        for (double v : d0) dmax = std::max(dmax, std::fabs(v));
        if (dmax * dt >= 0.25 * theta0.min_gap())
            throw std::invalid_argument("simulate_dyson: dt too large for the starting gaps");
    }

    const int steps = static_cast<int>(std::llround(T / dt));
    const int n = theta0.n();
    DriverPath path;
    path.dt = dt;
    path.steps = steps;
    path.kappa_tag = kappa;
    path.states.reserve(static_cast<std::size_t>(steps) + 1);
    path.states.push_back(theta0);

    std::vector<double> x = theta0.angles();
    const double sq = std::sqrt(kappa);

    for (int k = 0; k < steps; ++k) {
        std::uint32_t attempt = 0;
        // one Euler-Maruyama move over h; retried on refined halves
        auto move = [&](const std::vector<double>& from, double h) {
            const auto d = dyson_drift(TorusConfig(from));
            std::vector<double> y = from;
            const double sh = sq * std::sqrt(h);
            for (int j = 0; j < n; ++j) {
                const std::uint64_t b =
                    (static_cast<std::uint64_t>(attempt) << 32) | static_cast<std::uint32_t>(j);
                y[static_cast<std::size_t>(j)] += d[static_cast<std::size_t>(j)] * h +
                                                  sh * gauss(key, static_cast<std::uint64_t>(k), b);
            }
            ++attempt;
            return y;
        };
        auto accept = [](const std::vector<double>& from, const std::vector<double>& to) {
            const double pre = TorusConfig(from).min_gap();
            const double post = TorusConfig(to).min_gap();
            return post >= 1e-9 && post >= 0.5 * pre;
        };
        std::function<std::vector<double>(const std::vector<double>&, double, int)> advance =
            [&](const std::vector<double>& from, double h, int depth) -> std::vector<double> {
            const auto y = move(from, h);
            if (accept(from, y)) return y;
            if (depth >= 8)
                throw numerical_abort("simulate_dyson: collision guard exhausted at step " +
                                      std::to_string(k));
            const auto mid = advance(from, 0.5 * h, depth + 1);
            return advance(mid, 0.5 * h, depth + 1);
        };
        x = advance(x, dt, 0);
        path.states.emplace_back(x);
    }
    std::string why;
    if (!path.check_invariants(&why)) throw numerical_abort("simulate_dyson: " + why);
    return path;
}

DriverPath zero_energy_driver(const TorusConfig& theta0, double T, double dt) {
    if (theta0.collided()) throw collision_error("zero_energy_driver: collided start");
    const int steps = static_cast<int>(std::llround(T / dt));
    DriverPath path;
    path.dt = dt;
    path.steps = steps;
    path.states.reserve(static_cast<std::size_t>(steps) + 1);
    path.states.push_back(theta0);
    auto f = [](const std::vector<double>& x) { return dyson_drift(TorusConfig(x)); };
    std::vector<double> x = theta0.angles();
    for (int k = 0; k < steps; ++k) {
        x = rk4_step_guarded(x, dt, f);
        path.states.emplace_back(x);
    }
    return path;
}

DriverPath gradient_flow_u(const TorusConfig& theta0, double T, double dt) {
    if (theta0.collided()) throw collision_error("gradient_flow_u: collided start");
    const int steps = static_cast<int>(std::llround(T / dt));
    DriverPath path;
    path.dt = dt;
    path.steps = steps;
    path.states.reserve(static_cast<std::size_t>(steps) + 1);
    path.states.push_back(theta0);
    auto f = [](const std::vector<double>& x) {
        auto g = grad_u(TorusConfig(x));
        for (double& v : g) v = -v;
        return g;
    };
    std::vector<double> x = theta0.angles();
    for (int k = 0; k < steps; ++k) {
        x = rk4_step_guarded(x, dt, f);
        path.states.emplace_back(x);
    }
    return path;
}

ScalarDriver single_radial_driver(double theta0, double kappa, double S, double dt, RngKey key) {
    if (kappa < 0) throw std::invalid_argument("single_radial_driver: kappa >= 0");
    const int steps = static_cast<int>(std::llround(S / dt));
    ScalarDriver d;
    d.dt = dt;
    d.theta.reserve(static_cast<std::size_t>(steps) + 1);
    d.theta.push_back(theta0);
    const double sh = std::sqrt(kappa * dt);
    double x = theta0;
    for (int k = 0; k < steps; ++k) {
        x += sh * gauss(key, static_cast<std::uint64_t>(k), 0);
        d.theta.push_back(x);
    }
    return d;
}

}  // namespace mrsle
