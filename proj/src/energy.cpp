#include "mrsle/energy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mrsle {

SleConstants sle_constants(double kappa, int n) {
    if (kappa <= 0) throw std::invalid_argument("sle_constants: kappa > 0");
    SleConstants c;
    c.kappa = kappa;
    c.n = n;
    c.beta_hat = (n - 1) * ((kappa - 4) * (kappa - 4) + 4.0 * n) / (8.0 * kappa);
    c.central_charge = (6.0 - kappa) * (3.0 * kappa - 8.0) / (2.0 * kappa);
    return c;
}

double dyson_dirichlet_energy(const DriverPath& driver) {
    const int n = driver.n();
    double e = 0.0;
    for (int k = 0; k < driver.steps; ++k) {
        const auto& a = driver.state(k);
        const auto& b = driver.state(k + 1);
        if (a.collided() || b.collided()) return std::numeric_limits<double>::infinity();
        std::vector<double> mid(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) mid[static_cast<std::size_t>(j)] = 0.5 * (a[j] + b[j]);
        const auto drift = dyson_drift(TorusConfig(mid));
        for (int j = 0; j < n; ++j) {
            const double d = (b[j] - a[j]) / driver.dt - drift[static_cast<std::size_t>(j)];
            e += 0.5 * d * d * driver.dt;
        }
    }
    if (!driver.states.empty() && driver.state(driver.steps).collided())
        return std::numeric_limits<double>::infinity();
    return e;
}

ExtractedDriver extract_single_driver(std::span<const cplx> pts) {
    const UnzipResult uz = unzip_curve(pts);
    ExtractedDriver out;
    out.s = uz.capacity;
    out.theta = uz.driver;
    out.landing_error = uz.max_landing_error;
    return out;
}

double dirichlet_energy(std::span<const double> s, std::span<const double> theta) {
    if (s.size() != theta.size() || s.size() < 2)
        throw std::invalid_argument("dirichlet_energy: bad grids");
    double e = 0.0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const double ds = s[i + 1] - s[i];
        if (ds <= 0) continue;  // zero-capacity step carries no energy
        const double dth = theta[i + 1] - theta[i];
        e += 0.5 * dth * dth / ds;
    }
    return e;
}

double independent_energy(const MultiradialCurve& curve, const TimeChange& tc) {
    double e = 0.0;
    for (int j = 0; j < curve.n; ++j) {
        const auto ex = extract_single_driver(curve.pts[static_cast<std::size_t>(j)]);
        const double sig_T = tc.sigma[static_cast<std::size_t>(j)].back();
        if (std::fabs(ex.s.back() - sig_T) > eps_disc(curve.dt) + 1e-9)
            throw numerical_abort("independent_energy: extraction grid disagrees with sigma");
        e += dirichlet_energy(ex.s, ex.theta);
    }
    return e;
}

double psi(const TorusConfig& theta0, const TorusConfig& thetaT, double T, double loop_mass,
           double kappa) {
    if (theta0.collided() || thetaT.collided()) return -std::numeric_limits<double>::infinity();
    if (loop_mass < 0) throw std::invalid_argument("psi: loop_mass >= 0");
    const int n = theta0.n();
    const double du = log_partition_u(theta0) - log_partition_u(thetaT);
    if (kappa == 0.0)
        return du + 0.5 * (n + 4.0) * (n - 1.0) * n * T - 12.0 * loop_mass;
    const auto c = sle_constants(kappa, n);
    // kappa log(Z(thT)/Z(th0)) = U(th0) - U(thT), evaluated without forming Z
    return du + kappa * c.beta_hat * n * T + 0.5 * kappa * c.central_charge * loop_mass;
}

double psi(const DriverPath& driver, double loop_mass, double kappa) {
    return psi(driver.states.front(), driver.states.back(), driver.T(), loop_mass, kappa);
}

BlmRate blm_rate_finite_T(const DriverPath& driver, const MultiradialCurve& curve,
                          const TimeChange& tc, double loop_mass, double T) {
    BlmRate r;
    const int n = driver.n();
    if (std::fabs(driver.T() - T) > 1e-9)
        throw std::invalid_argument("blm_rate_finite_T: driver horizon mismatch");
    r.rate_dyson = dyson_dirichlet_energy(driver);
    r.independent = independent_energy(curve, tc);
    r.psi0 = psi(driver.states.front(), driver.states.back(), T, loop_mass, 0.0);
    r.rate_bm_form = r.independent - r.psi0;
    r.l_hat = loop_mass - (n + 4.0) * (n - 1.0) * n * T / 24.0;
    return r;
}

SteadyReport steady_convergence_diagnostic(const std::map<double, std::vector<double>>& by_kappa,
                                           const std::vector<double>& psi0,
                                           const std::vector<double>& M_grid,
                                           const std::vector<double>& eps_grid) {
    if (by_kappa.size() < 3)
        throw std::invalid_argument("steady_convergence_diagnostic: need >= 3 kappa values");
    if (psi0.size() < 10)
        throw std::invalid_argument("steady_convergence_diagnostic: need >= 10 trajectories");
    SteadyReport rep;
    for (double M : M_grid) {
        std::vector<double> sup_by_kappa;
        for (const auto& [kappa, vals] : by_kappa) {
            if (vals.size() != psi0.size())
                throw std::invalid_argument("steady_convergence_diagnostic: ragged data");
            double sup = 0;
            bool tails = true;
            for (std::size_t i = 0; i < vals.size(); ++i) {
                if (std::fabs(psi0[i]) <= M)
                    sup = std::max(sup, std::fabs(vals[i] - psi0[i]));
                else if (psi0[i] > M && vals[i] <= 0)
                    tails = false;
                else if (psi0[i] < -M && vals[i] >= 0)
                    tails = false;
            }
            sup_by_kappa.push_back(sup);
            for (double eps : eps_grid)
                rep.cells.push_back({M, eps, kappa, sup, sup < eps, tails});
        }
        for (std::size_t i = 0; i + 1 < sup_by_kappa.size(); ++i)
            if (sup_by_kappa[i] > sup_by_kappa[i + 1] + 1e-12)
                rep.deviations_monotone_in_kappa = false;
    }
    return rep;
}

}  // namespace mrsle
