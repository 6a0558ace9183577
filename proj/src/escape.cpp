#include "mrsle/escape.hpp"

#include <algorithm>
#include <cmath>

namespace mrsle {

std::optional<double> hitting_time(std::span<const cplx> pts, std::span<const double> times,
                                   double v) {
    if (pts.size() != times.size() || pts.empty())
        throw std::invalid_argument("hitting_time: bad sampling");
    if (v <= 0) return 0.0;
    const double level = std::exp(-v);
    double r_prev = std::abs(pts[0]);
    for (std::size_t k = 1; k < pts.size(); ++k) {
        const double r = std::abs(pts[k]);
        if (r < level) {
            const double f = (r_prev - level) / std::max(1e-300, r_prev - r);
            return times[k - 1] + f * (times[k] - times[k - 1]);
        }
        r_prev = r;
    }
    return std::nullopt;
}

HittingBoundsReport check_hitting_bounds(const MultiradialCurve& curve,
                                         std::span<const double> v_grid, double eps) {
    HittingBoundsReport rep;
    const double log4 = std::log(4.0);
    const double logn = std::log(static_cast<double>(curve.n));
    for (int j = 0; j < curve.n; ++j)
        for (double v : v_grid) {
            const auto rho = hitting_time(curve.pts[static_cast<std::size_t>(j)], curve.times, v);
            if (!rho) continue;  // not reached within horizon
            HittingBoundRow row;
            row.j = j;
            row.v = v;
            row.rho = *rho;
            const double nr = curve.n * *rho;
            row.lo_margin = nr - (v - log4);
            row.hi_margin = (v + 0.5 * logn) - nr;
            row.hi_margin_full = (v + logn) - nr;
            row.ok = row.lo_margin >= -eps && row.hi_margin >= -eps;
            rep.all_ok = rep.all_ok && row.ok;
            rep.rows.push_back(row);
        }
    return rep;
}

namespace {

// Tip radius of curve j at each requested step, evaluated lazily with a
// stride and locally refined near the radial levels of interest.
struct RadiusScan {
    const MultiradialChain* mc;
    int j;
    std::vector<double> r;  // per step, NaN where not evaluated

    explicit RadiusScan(const MultiradialChain& chain, int curve)
        : mc(&chain), j(curve), r(static_cast<std::size_t>(chain.steps) + 1,
                                  std::numeric_limits<double>::quiet_NaN()) {}

    double at(int k) {
        auto& v = r[static_cast<std::size_t>(k)];
        if (std::isnan(v)) v = std::abs(mc->tip_at(k, j));
        return v;
    }
};

}  // namespace

EscapeMcResult escape_probability_mc(double kappa, int n, const TorusConfig& theta0, double u,
                                     double v, double horizon, long n_samples, double dt,
                                     RngKey key, RunMode mode) {
    if (!(0 < u && u < v)) throw std::invalid_argument("escape_probability_mc: need 0 < u < v");
    // horizon must guarantee the hit of level v: n rho <= v + log n
    if (horizon * n < v + std::log(static_cast<double>(n)))
        throw std::invalid_argument("escape_probability_mc: horizon too short for certain hit");

    const double level_v = std::exp(-v);
    const double level_u = std::exp(-u);
    std::vector<char> hitf(static_cast<std::size_t>(n_samples), 0);
    std::vector<char> escf(static_cast<std::size_t>(n_samples), 0);
    const int stride = 2;

    parallel_for(
        static_cast<std::size_t>(n_samples),
        [&](std::size_t s) {
            const DriverPath drv =
                simulate_dyson(theta0, kappa, horizon, dt, key.substream(s));
            const MultiradialChain mc = build_chain(drv);
            RadiusScan scan(mc, 0);
            const int steps = mc.steps;
            // first strided step below level v
            int kv = -1;
            for (int k = 0; k <= steps; k += stride)
                if (scan.at(k) < level_v) {
                    kv = k;
                    break;
                }
            if (kv < 0) return;  // horizon precondition makes this unreachable
            // refine to the first crossing step
            int lo = std::max(0, kv - stride);
            for (int k = lo; k <= kv; ++k)
                if (scan.at(k) < level_v) {
                    kv = k;
                    break;
                }
            hitf[s] = 1;
            // escape: any later radius above level u
            for (int k = kv; k <= steps; k += stride) {
                double rk = scan.at(k);
                if (rk > 0.7 * level_u) {
                    // inspect the whole neighborhood of this excursion
                    for (int q = std::max(kv, k - stride); q <= std::min(steps, k + stride); ++q)
                        rk = std::max(rk, scan.at(q));
                }
                if (rk > level_u) {
                    escf[s] = 1;
                    return;
                }
            }
        },
        mode);

    EscapeMcResult res;
    res.n_samples = n_samples;
    for (long s = 0; s < n_samples; ++s) {
        res.hits += hitf[static_cast<std::size_t>(s)];
        res.escapes += escf[static_cast<std::size_t>(s)];
    }
    res.inconclusive = res.hits < 10;
    const auto ci = wilson_interval(res.escapes, res.hits > 0 ? res.hits : 1);
    res.p_hat = ci.p_hat;
    res.ci_lo = ci.lo;
    res.ci_hi = ci.hi;
    return res;
}

EscapeFit escape_exponent_fit(double kappa, int n, const TorusConfig& theta0, double u,
                              std::span<const double> dv_grid, long n_samples_per_point,
                              double dt, RngKey key, RunMode mode) {
    EscapeFit out;
    std::vector<double> x, y, w;
    for (std::size_t i = 0; i < dv_grid.size(); ++i) {
        const double v = u + dv_grid[i];
        const double horizon = (v + std::log(static_cast<double>(n))) / n + 2.0;
        const auto res = escape_probability_mc(kappa, n, theta0, u, v, horizon,
                                               n_samples_per_point, dt, key.substream(500 + i),
                                               mode);
        out.dv.push_back(dv_grid[i]);
        out.results.push_back(res);
        if (res.escapes > 0 && res.escapes < res.hits) {
            x.push_back(dv_grid[i]);
            y.push_back(std::log(res.p_hat));
            const double se_log = 0.5 * (std::log(res.ci_hi) - std::log(std::max(res.ci_lo, 1e-12)));
            w.push_back(1.0 / (se_log * se_log));
        }
    }
    if (x.size() >= 2) out.fit = weighted_line_fit(x, y, w);
    return out;
}

TransienceReport transience_experiment(double kappa, int n, double T, double dt, int n_samples,
                                       RngKey key, RunMode mode) {
    const int steps = static_cast<int>(std::llround(T / dt));
    const int stride = 4;
    std::vector<int> ks;
    for (int k = 0; k <= steps; k += stride) ks.push_back(k);
    if (ks.back() != steps) ks.push_back(steps);

    TransienceReport rep;
    rep.times.resize(ks.size());
    rep.envelope.resize(ks.size());
    const double logn = std::log(static_cast<double>(n));
    for (std::size_t i = 0; i < ks.size(); ++i) {
        rep.times[i] = dt * ks[i];
        rep.envelope[i] = 4.0 * std::exp(-(n * rep.times[i] - 0.5 * logn));
    }

    std::vector<std::vector<double>> maxtip(static_cast<std::size_t>(n_samples));
    std::vector<char> decreasing(static_cast<std::size_t>(n_samples), 0);
    parallel_for(
        static_cast<std::size_t>(n_samples),
        [&](std::size_t s) {
            const DriverPath drv =
                simulate_dyson(equally_spaced(n), kappa, T, dt, key.substream(s));
            const MultiradialChain mc = build_chain(drv);
            auto& row = maxtip[s];
            row.resize(ks.size());
            for (std::size_t i = 0; i < ks.size(); ++i) {
                double m = 0;
                for (int j = 0; j < n; ++j) m = std::max(m, std::abs(mc.tip_at(ks[i], j)));
                row[i] = m;
            }
            // eventually decreasing after t = 1 (tolerating sampling jitter)
            bool dec = true;
            for (std::size_t i = 0; i + 1 < ks.size(); ++i)
                if (rep.times[i] >= 1.0 && row[i + 1] > row[i] * 1.05) dec = false;
            decreasing[s] = dec ? 1 : 0;
        },
        mode);

    rep.max_abs_tip.assign(ks.size(), 0.0);
    rep.median_tip.resize(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) {
        std::vector<double> col(static_cast<std::size_t>(n_samples));
        for (std::size_t s = 0; s < col.size(); ++s) {
            col[s] = maxtip[s][i];
            rep.max_abs_tip[i] = std::max(rep.max_abs_tip[i], col[s]);
        }
        rep.median_tip[i] = median(std::move(col));
        if (rep.max_abs_tip[i] > rep.envelope[i]) rep.envelope_ok = false;
    }
    double frac = 0;
    for (char c : decreasing) frac += c;
    rep.fraction_eventually_decreasing = frac / std::max(1, n_samples);
    return rep;
}

PartitionExpectationReport partition_expectation_check(double kappa, int n,
                                                       const TorusConfig& theta0, double t,
                                                       long n_samples, double dt, RngKey key,
                                                       RunMode mode) {
    if (kappa > 4) throw std::invalid_argument("partition_expectation_check: kappa <= 4");
    std::vector<double> inv_z(static_cast<std::size_t>(n_samples));
    parallel_for(
        static_cast<std::size_t>(n_samples),
        [&](std::size_t s) {
            const DriverPath drv = simulate_dyson(theta0, kappa, t, dt, key.substream(s));
            inv_z[s] = std::exp(log_partition_u(drv.states.back()) / kappa);
        },
        mode);
    PartitionExpectationReport rep;
    const auto ms = mean_stderr(inv_z);
    rep.mc_mean = ms.mean;
    rep.mc_stderr = ms.stderr_;
    rep.bound = std::exp(n * (static_cast<double>(n) * n - 1.0) * t / 12.0 +
                         log_partition_u(theta0) / kappa);
    rep.margin = rep.bound - (rep.mc_mean - 2.0 * rep.mc_stderr);
    rep.ok = rep.margin >= 0;
    rep.kurtosis = excess_kurtosis(inv_z);
    rep.heavy_tail_warning = rep.kurtosis > 100.0;
    return rep;
}

EscapeExponentStructure escape_exponent_structure(int n) {
    EscapeExponentStructure s;
    s.kappa0 = 1.0 / (static_cast<double>(n) * n);
    auto b = [n](double kappa) {
        return n * ((8.0 - kappa) / 2.0 - kappa * (static_cast<double>(n) * n - 1.0) / 12.0);
    };
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 64; ++i) {
        const double kappa = s.kappa0 * i / 64.0;
        const double val = b(kappa);
        if (val <= 0) s.b_positive_on_range = false;
        if (val > prev + 1e-12) s.b_decreasing_in_kappa = false;
        prev = val;
    }
    return s;
}

}  // namespace mrsle
