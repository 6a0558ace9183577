#include "mrsle/tilting.hpp"

#include <algorithm>
#include <cmath>

#include "mrsle/stats.hpp"

namespace mrsle {

double log_rn_weight(const TorusConfig& theta0, const TorusConfig& thetaT, double T,
                     double loop_mass, double kappa) {
    if (kappa <= 0) throw std::invalid_argument("log_rn_weight: kappa > 0");
    return psi(theta0, thetaT, T, loop_mass, kappa) / kappa;
}

double rn_weight(const TorusConfig& theta0, const TorusConfig& thetaT, double T, double loop_mass,
                 double kappa) {
    const double lw = log_rn_weight(theta0, thetaT, T, loop_mass, kappa);
    return std::isfinite(lw) ? std::exp(lw) : 0.0;
}

double ImportanceEnsemble::weighted_mean(const std::vector<double>& f, double* se) const {
    if (f.size() != log_weight.size() || f.empty())
        throw std::invalid_argument("weighted_mean: bad sizes");
    const double lmax = *std::max_element(log_weight.begin(), log_weight.end());
    double sw = 0, swf = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double w = std::exp(log_weight[i] - lmax);
        sw += w;
        swf += w * f[i];
    }
    const double mean = swf / sw;
    if (se) {
        double var = 0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            const double w = std::exp(log_weight[i] - lmax) / sw;
            var += w * w * (f[i] - mean) * (f[i] - mean);
        }
        *se = std::sqrt(var);
    }
    return mean;
}

ImportanceEnsemble importance_sample_nradial(double kappa, int n, const TorusConfig& theta0,
                                             double T, double dt, const ImportanceParams& p) {
    if (!(kappa > 0 && kappa <= 4))
        throw std::invalid_argument("importance_sample_nradial: kappa in (0,4]");
    const double S = n * T;  // independent horizon always suffices
    const int steps = static_cast<int>(std::llround(S / dt));

    // shared loop battery with common random numbers across samples
    BridgeParams bp;
    bp.key = p.key.substream(77);
    bp.t_min = 1e-4;
    bp.mode = RunMode::serial;  // battery evaluation happens inside the sample loop
    const LoopBattery battery(bp, p.battery_loops);

    const bool need_loop = std::fabs(sle_constants(kappa, n).central_charge) > 1e-14;

    struct Row {
        double logw = 0, gap = 0, u = 0;
        bool kept = false;
    };
    std::vector<Row> rows(static_cast<std::size_t>(p.n_samples));

    parallel_for(
        static_cast<std::size_t>(p.n_samples),
        [&](std::size_t s) {
            // n independent radial evolutions in their own capacity time
            std::vector<IndependentCurve> curves(static_cast<std::size_t>(n));
            double trace_scale = 0;
            for (int j = 0; j < n; ++j) {
                const ScalarDriver drv = single_radial_driver(
                    theta0[j], kappa, S, dt,
                    p.key.substream(2 * s * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)));
                SlitChain ch;
                ch.reserve(static_cast<std::size_t>(steps));
                for (int k = 0; k < steps; ++k) ch.push(drv.theta[static_cast<std::size_t>(k)], dt);
                auto& c = curves[static_cast<std::size_t>(j)];
                c.ds = dt;
                c.pts.resize(static_cast<std::size_t>(steps) + 1);
                c.pts[0] = std::polar(1.0, drv.theta[0]);
                for (int k = 1; k <= steps; ++k) {
                    c.pts[static_cast<std::size_t>(k)] = ch.tip(static_cast<std::size_t>(k) - 1);
                    trace_scale = std::max(
                        trace_scale, std::abs(c.pts[static_cast<std::size_t>(k)] -
                                              c.pts[static_cast<std::size_t>(k) - 1]));
                }
            }
            // restriction step: discard configurations that collide before T
            CurveSet cs;
            for (auto& c : curves) cs.curves.push_back(c.pts);
            const double delta_min = p.delta_factor * trace_scale;
            if (cs.min_pairwise_distance() < delta_min) return;

            Projection pr = project_to_common_time(curves, dt, T);
            if (pr.truncated) return;

            CurveSet common;
            for (auto& c : pr.curve.pts) common.curves.push_back(c);
            const double L = need_loop ? battery.mass(common) : 0.0;

            const TorusConfig thT = pr.common_driver.states.back();
            auto& r = rows[s];
            r.logw = log_rn_weight(theta0, thT, T, L, kappa);
            r.gap = n >= 2 ? thT[1] - thT[0] : 0.0;
            r.u = log_partition_u(thT);
            r.kept = std::isfinite(r.logw);
        },
        p.mode);

    ImportanceEnsemble ens;
    ens.n_total = p.n_samples;
    for (const auto& r : rows) {
        if (!r.kept) {
            ++ens.n_discarded;
            continue;
        }
        ens.log_weight.push_back(r.logw);
        ens.gap_T.push_back(r.gap);
        ens.u_T.push_back(r.u);
    }
    if (!ens.log_weight.empty()) {
        const double lmax = *std::max_element(ens.log_weight.begin(), ens.log_weight.end());
        double sw = 0, sw2 = 0;
        for (double lw : ens.log_weight) {
            const double w = std::exp(lw - lmax);
            sw += w;
            sw2 += w * w;
        }
        ens.ess = sw * sw / sw2;
    }
    ens.inconclusive = ens.ess < 10;
    return ens;
}

ConcentrationReport concentration_experiment(int n, const TorusConfig& theta0,
                                             std::vector<double> kappa_grid, double T, double dt,
                                             int n_samples, RngKey key, RunMode mode) {
    std::sort(kappa_grid.rbegin(), kappa_grid.rend());  // decreasing
    const DriverPath ref = zero_energy_driver(theta0, T, dt);

    ConcentrationReport rep;
    for (std::size_t ki = 0; ki < kappa_grid.size(); ++ki) {
        const double kappa = kappa_grid[ki];
        std::vector<double> sup_dev(static_cast<std::size_t>(n_samples));
        if (kappa == 0.0) {
            std::fill(sup_dev.begin(), sup_dev.end(), 0.0);
        } else {
            parallel_for(
                static_cast<std::size_t>(n_samples),
                [&](std::size_t s) {
                    const DriverPath drv = simulate_dyson(
                        theta0, kappa, T, dt, key.substream(1000 * (ki + 1) + s));
                    double sup = 0;
                    for (int k = 0; k <= drv.steps; ++k) {
                        double d = 0;
                        for (int j = 0; j < n; ++j)
                            d += std::fabs(drv.state(k)[j] - ref.state(k)[j]);
                        sup = std::max(sup, d);
                    }
                    sup_dev[s] = sup;
                },
                mode);
        }
        rep.kappas.push_back(kappa);
        rep.median_sup_dev.push_back(median(std::move(sup_dev)));
    }
    for (std::size_t i = 0; i + 1 < rep.median_sup_dev.size(); ++i)
        if (rep.median_sup_dev[i + 1] >= rep.median_sup_dev[i]) rep.monotone_decreasing = false;

    std::vector<double> lx, ly, w;
    for (std::size_t i = 0; i < rep.kappas.size(); ++i) {
        if (rep.kappas[i] <= 0 || rep.median_sup_dev[i] <= 0) continue;
        lx.push_back(std::log(rep.kappas[i]));
        ly.push_back(std::log(rep.median_sup_dev[i]));
        w.push_back(1.0);
    }
    if (lx.size() >= 2) rep.fitted_power = weighted_line_fit(lx, ly, w).slope;
    return rep;
}

}  // namespace mrsle
