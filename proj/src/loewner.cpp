#include "mrsle/loewner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mrsle/zipper.hpp"

namespace mrsle {

namespace {

double wrap_2pi(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0) r += kTwoPi;
    return r;
}

// smallest absolute angular distance on the circle
double circ_dist(double a, double b) {
    const double d = wrap_2pi(a - b);
    return std::min(d, kTwoPi - d);
}

}  // namespace

cplx MultiradialChain::tip_at(int k, int j) const {
    if (k == 0) return std::polar(1.0, theta0[static_cast<std::size_t>(j)]);
    return chain.tip(sub_pos(k - 1, j));
}

MultiradialChain build_chain(const DriverPath& driver) {
    MultiradialChain mc;
    mc.n = driver.n();
    mc.dt = driver.dt;
    mc.steps = driver.steps;
    mc.theta0 = driver.states.front().angles();
    mc.chain.reserve(static_cast<std::size_t>(mc.steps) * static_cast<std::size_t>(mc.n));
    for (int k = 0; k < mc.steps; ++k) {
        const auto& th = driver.state(k);
        const std::size_t base = static_cast<std::size_t>(k) * static_cast<std::size_t>(mc.n);
        for (int p = 0; p < mc.n; ++p) {
            const int j = (k % 2 == 0) ? p : mc.n - 1 - p;
            // driver angle seen in the domain after this step's earlier sub-slits
            const double xi = mc.chain.map_angle(th[j], base, base + static_cast<std::size_t>(p));
            mc.chain.push(xi, mc.dt);
        }
    }
    return mc;
}

BoundaryFlow evolve_boundary(const DriverPath& driver, std::vector<double> grid) {
    const MultiradialChain mc = build_chain(driver);
    const int n = mc.n;
    const double swallow_gap = 10.0 * mc.dt;

    for (double x : grid)
        for (int j = 0; j < n; ++j)
            if (circ_dist(x, driver.state(0)[j]) < kCollisionGap)
                throw std::invalid_argument(
                    "evolve_boundary: grid point coincides with a driver at t=0");

    BoundaryFlow bf;
    bf.n = n;
    bf.dt = mc.dt;
    bf.steps = mc.steps;
    bf.grid = grid;
    const std::size_t m = grid.size();
    bf.swallowed_step.assign(m, -1);
    bf.h.assign(static_cast<std::size_t>(mc.steps) + 1, std::vector<double>(m));
    bf.hprime.assign(static_cast<std::size_t>(mc.steps) + 1, std::vector<double>(m, 1.0));
    bf.h[0] = grid;

    std::vector<double> x = grid, d(m, 1.0);
    for (int k = 0; k < mc.steps; ++k) {
        for (std::size_t i = 0; i < m; ++i) {
            if (bf.swallowed_step[i] >= 0) continue;
            for (int j = 0; j < n; ++j) {
                const auto& st = mc.chain.step(static_cast<std::size_t>(k) * static_cast<std::size_t>(n) +
                                               static_cast<std::size_t>(j));
                const double gap = circ_dist(x[i], st.angle);
                if (gap < swallow_gap) {
                    bf.swallowed_step[i] = k;
                    break;
                }
                const double u = wrap_2pi(x[i] - st.angle);
                d[i] *= slit::boundary_angle_deriv(u, st.cap);
                x[i] = slit::forward_angle(x[i], st.angle, st.cap);
            }
        }
        bf.h[static_cast<std::size_t>(k) + 1] = x;
        bf.hprime[static_cast<std::size_t>(k) + 1] = d;
    }
    return bf;
}

BoundaryFlow evolve_boundary_rk4(const DriverPath& driver, std::vector<double> grid) {
    const int n = driver.n();
    BoundaryFlow bf;
    bf.n = n;
    bf.dt = driver.dt;
    bf.steps = driver.steps;
    bf.grid = grid;
    const std::size_t m = grid.size();
    bf.swallowed_step.assign(m, -1);
    bf.h.assign(static_cast<std::size_t>(bf.steps) + 1, std::vector<double>(m));
    bf.hprime.assign(static_cast<std::size_t>(bf.steps) + 1, std::vector<double>(m, 1.0));
    bf.h[0] = grid;

    auto theta_at = [&](double t) {
        const double pos = t / driver.dt;
        const int k = std::min(static_cast<int>(pos), driver.steps - 1);
        const double fr = pos - k;
        std::vector<double> th(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
            th[static_cast<std::size_t>(j)] =
                (1 - fr) * driver.state(k)[j] + fr * driver.state(k + 1)[j];
        return th;
    };
    // state (h, log h'); swallowing when a direction blows up
    auto rhs = [&](double t, double h, double* dh, double* dlog) {
        const auto th = theta_at(t);
        double a = 0, b = 0;
        for (int j = 0; j < n; ++j) {
            const double s = std::sin(0.5 * (h - th[static_cast<std::size_t>(j)]));
            const double c = std::cos(0.5 * (h - th[static_cast<std::size_t>(j)]));
            a += c / s;
            b += -0.5 / (s * s);
        }
        *dh = a;
        *dlog = b;
    };
    std::vector<double> x = grid, lg(m, 0.0);
    for (int k = 0; k < bf.steps; ++k) {
        const double t0 = k * driver.dt, h = driver.dt;
        for (std::size_t i = 0; i < m; ++i) {
            if (bf.swallowed_step[i] >= 0) continue;
            double k1h, k1l, k2h, k2l, k3h, k3l, k4h, k4l;
            rhs(t0, x[i], &k1h, &k1l);
            rhs(t0 + 0.5 * h, x[i] + 0.5 * h * k1h, &k2h, &k2l);
            rhs(t0 + 0.5 * h, x[i] + 0.5 * h * k2h, &k3h, &k3l);
            rhs(t0 + h, x[i] + h * k3h, &k4h, &k4l);
            const double dx = h / 6 * (k1h + 2 * k2h + 2 * k3h + k4h);
            if (std::fabs(dx) > 1.0) {  // adaptivity floor: absorbed by the hull
                bf.swallowed_step[i] = k;
                continue;
            }
            x[i] += dx;
            lg[i] += h / 6 * (k1l + 2 * k2l + 2 * k3l + k4l);
        }
        bf.h[static_cast<std::size_t>(k) + 1] = x;
        for (std::size_t i = 0; i < m; ++i)
            bf.hprime[static_cast<std::size_t>(k) + 1][i] = std::exp(lg[i]);
    }
    return bf;
}

InteriorFlow evolve_interior(const DriverPath& driver, std::vector<cplx> points) {
    const MultiradialChain mc = build_chain(driver);
    for (const cplx& z : points)
        if (std::abs(z) >= 1.0)
            throw std::invalid_argument("evolve_interior: points must lie in the open disk");

    InteriorFlow fl;
    fl.n = mc.n;
    fl.dt = mc.dt;
    fl.steps = mc.steps;
    fl.z0 = points;
    const std::size_t m = points.size();
    fl.swallowed_step.assign(m, -1);
    fl.g.assign(static_cast<std::size_t>(mc.steps) + 1, points);
    fl.gprime0.resize(static_cast<std::size_t>(mc.steps) + 1);
    for (int k = 0; k <= mc.steps; ++k)
        fl.gprime0[static_cast<std::size_t>(k)] = std::exp(mc.n * mc.dt * k);

    std::vector<cplx> z = points;
    for (int k = 0; k < mc.steps; ++k) {
        for (std::size_t i = 0; i < m; ++i) {
            if (fl.swallowed_step[i] >= 0) continue;
            for (int j = 0; j < mc.n; ++j) {
                const auto& st = mc.chain.step(static_cast<std::size_t>(k) * static_cast<std::size_t>(mc.n) +
                                               static_cast<std::size_t>(j));
                z[i] = slit::forward(z[i], st.angle, st.cap);
                if (std::abs(z[i]) >= 1.0 - 1e-10) {
                    fl.swallowed_step[i] = k;
                    break;
                }
            }
        }
        fl.g[static_cast<std::size_t>(k) + 1] = z;
    }
    return fl;
}

namespace {
std::vector<int> sample_steps(int steps, int stride) {
    std::vector<int> ks;
    for (int k = 0; k <= steps; k += stride) ks.push_back(k);
    if (ks.back() != steps) ks.push_back(steps);
    return ks;
}
}  // namespace

MultiradialCurve trace(const MultiradialChain& mc, int stride, RunMode mode) {
    MultiradialCurve cv;
    cv.n = mc.n;
    cv.dt = mc.dt;
    cv.steps = mc.steps;
    cv.stride = stride;
    cv.theta0 = mc.theta0;
    const auto ks = sample_steps(mc.steps, stride);
    cv.times.resize(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) cv.times[i] = mc.dt * ks[i];
    cv.pts.assign(static_cast<std::size_t>(mc.n), std::vector<cplx>(ks.size()));
    parallel_for(
        ks.size() * static_cast<std::size_t>(mc.n),
        [&](std::size_t idx) {
            const int j = static_cast<int>(idx % static_cast<std::size_t>(mc.n));
            const std::size_t s = idx / static_cast<std::size_t>(mc.n);
            cv.pts[static_cast<std::size_t>(j)][s] = mc.tip_at(ks[s], j);
        },
        mode);
    return cv;
}

MultiradialCurve trace(const DriverPath& driver, int stride, RunMode mode) {
    std::string why;
    if (!driver.check_invariants(&why)) throw numerical_abort("trace: invalid driver: " + why);
    return trace(build_chain(driver), stride, mode);
}

TimeChange time_change(const DriverPath& driver, const MultiradialCurve& curve, double tolerance,
                       RunMode mode) {
    if (curve.stride != 1)
        throw std::invalid_argument("time_change: needs a stride-1 trace");
    if (tolerance < 0) tolerance = 4.0 * eps_disc(curve.dt);
    const MultiradialChain mc = build_chain(driver);
    const int n = curve.n;
    const int m = curve.samples();

    TimeChange tc;
    tc.dt = curve.dt;
    tc.times = curve.times;
    tc.sigma.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(m)));
    tc.sigma_ode.assign(static_cast<std::size_t>(n),
                        std::vector<double>(static_cast<std::size_t>(m)));

    std::vector<UnzipResult> uz(static_cast<std::size_t>(n));
    parallel_for(
        static_cast<std::size_t>(n),
        [&](std::size_t j) { uz[j] = unzip_curve(curve.pts[j]); }, mode);

    for (int j = 0; j < n; ++j) tc.sigma[static_cast<std::size_t>(j)] = uz[static_cast<std::size_t>(j)].capacity;

    // route (a): d sigma^j/dt = h'_{t,j}(xi^j_t)^{-2}. The relative map
    // g_t o (g^j_t)^{-1} is analytic at the tip image even though both chains
    // have square-root branch points there; its derivative is the ratio of
    // the two local square-root coefficients times the analytic derivative
    // products along the tip orbit:
    //   |h'| = A' sqrt( e^{c_m} |k'(x_m)| |B'_full| / (e^{c_s} |k'(x_s)| |B'_single|) ),
    // where c_m, c_s are the capacities of the two sub-slits that created the
    // tip, B' the analytic prefix derivatives at the tip orbit, and A' the
    // boundary derivative of the sub-slits applied after the full chain's one.
    auto kprime_abs = [](double x) {
        return (1.0 - x) / ((1.0 + x) * (1.0 + x) * (1.0 + x));
    };
    auto prefix_deriv = [&](const SlitChain& ch, cplx z, std::size_t last) {
        double d = 1.0;
        for (std::size_t i = 0; i < last; ++i) {
            d *= std::abs(slit::forward_deriv(z, ch.step(i).angle, ch.step(i).cap));
            z = slit::forward(z, ch.step(i).angle, ch.step(i).cap);
        }
        return d;
    };
    std::vector<std::vector<double>> rate(static_cast<std::size_t>(n),
                                          std::vector<double>(static_cast<std::size_t>(m), 1.0));
    parallel_for(
        static_cast<std::size_t>(n) * static_cast<std::size_t>(m),
        [&](std::size_t idx) {
            const int j = static_cast<int>(idx / static_cast<std::size_t>(m));
            const int k = static_cast<int>(idx % static_cast<std::size_t>(m));
            if (k == 0) {
                rate[static_cast<std::size_t>(j)][0] = 1.0;
                return;
            }
            const auto& single = uz[static_cast<std::size_t>(j)].chain;
            const cplx zstar = curve.pts[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
            const double c_s = single.step(static_cast<std::size_t>(k) - 1).cap;
            const double c_m = mc.dt;
            if (c_s < 1e-14) {
                rate[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
                    rate[static_cast<std::size_t>(j)][static_cast<std::size_t>(k) - 1];
                return;
            }
            const std::size_t msub = mc.sub_pos(k - 1, j);
            const double b_full = prefix_deriv(mc.chain, zstar, msub);
            const double b_single = prefix_deriv(single, zstar, static_cast<std::size_t>(k) - 1);
            double a_post = 1.0;
            mc.chain.map_angle(mc.chain.step(msub).angle, msub + 1,
                               static_cast<std::size_t>(k) * static_cast<std::size_t>(n), &a_post);
            const double q_full = std::exp(c_m) * kprime_abs(slit::tip_radius(c_m)) * b_full;
            const double q_single = std::exp(c_s) * kprime_abs(slit::tip_radius(c_s)) * b_single;
            const double hp = a_post * std::sqrt(q_full / q_single);
            rate[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = 1.0 / (hp * hp);
        },
        mode);

    for (int j = 0; j < n; ++j) {
        double acc = 0;
        tc.sigma_ode[static_cast<std::size_t>(j)][0] = 0;
        for (int k = 1; k < m; ++k) {
            const double r0 = rate[static_cast<std::size_t>(j)][static_cast<std::size_t>(k) - 1];
            const double r1 = rate[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
            acc += 0.5 * (r0 + r1) * curve.dt;
            tc.sigma_ode[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = acc;
            tc.max_disagreement =
                std::max(tc.max_disagreement,
                         std::fabs(acc - tc.sigma[static_cast<std::size_t>(j)]
                                             [static_cast<std::size_t>(k)]));
        }
    }
    if (tc.max_disagreement > tolerance) {
        std::ostringstream os;
        os << "time_change: capacity routes disagree by " << tc.max_disagreement
           << " (tolerance " << tolerance << ")";
        throw numerical_abort(os.str());
    }
    return tc;
}

Projection project_to_common_time(const std::vector<IndependentCurve>& curves, double dt,
                                  double T_request) {
    const int n = static_cast<int>(curves.size());
    if (n < 1) throw std::invalid_argument("project_to_common_time: need curves");
    for (const auto& c : curves) {
        if (c.pts.size() < 2) throw std::invalid_argument("project_to_common_time: short curve");
        if (std::fabs(std::abs(c.pts.front()) - 1.0) > 1e-9)
            throw std::invalid_argument("project_to_common_time: curve must start on the circle");
    }

    struct Work {
        std::vector<cplx> img;    // images of remaining points; img[0] = current tip
        std::vector<double> s;    // own-capacity parameter of each image point
        double consumed = 0;      // own capacity consumed so far
        double driver = 0;        // current driver angle (unwrapped)
    };
    std::vector<Work> w(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        auto& wj = w[static_cast<std::size_t>(j)];
        wj.img = curves[static_cast<std::size_t>(j)].pts;
        wj.s.resize(wj.img.size());
        for (std::size_t i = 0; i < wj.s.size(); ++i)
            wj.s[i] = curves[static_cast<std::size_t>(j)].ds * static_cast<double>(i);
        wj.driver = std::arg(wj.img.front());
    }

    const int steps_req = static_cast<int>(std::llround(T_request / dt));
    Projection pr;
    pr.curve.n = n;
    pr.curve.dt = dt;
    pr.curve.stride = 1;
    pr.curve.pts.assign(static_cast<std::size_t>(n), {});
    pr.time_change.dt = dt;
    pr.time_change.sigma.assign(static_cast<std::size_t>(n), {});
    std::vector<std::vector<double>> thetas(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        pr.curve.theta0.push_back(w[static_cast<std::size_t>(j)].driver);
        pr.curve.pts[static_cast<std::size_t>(j)].push_back(
            curves[static_cast<std::size_t>(j)].pts.front());
        pr.time_change.sigma[static_cast<std::size_t>(j)].push_back(0.0);
        thetas[static_cast<std::size_t>(j)].push_back(w[static_cast<std::size_t>(j)].driver);
    }
    pr.curve.times.push_back(0.0);

    SlitChain chain;
    auto cap_of = [](const cplx& z) { return slit::slit_capacity(std::abs(z)); };

    int k = 0;
    bool exhausted = false;
    for (; k < steps_req && !exhausted; ++k) {
        for (int j = 0; j < n && !exhausted; ++j) {
            auto& wj = w[static_cast<std::size_t>(j)];
            // find the first polyline position where the slit from the circle
            // to the interpolated image has capacity dt
            std::size_t i = 1;
            while (i < wj.img.size() && cap_of(wj.img[i]) < dt) ++i;
            if (i >= wj.img.size()) {
                // rounding tolerance at the very end of the input curve
                if (wj.img.size() >= 2 && cap_of(wj.img.back()) >= dt - 1e-9)
                    i = wj.img.size() - 1;
                else {
                    exhausted = true;
                    break;
                }
            }
            double lo = 0.0, hi = 1.0;  // interpolation within segment [i-1, i]
            const cplx a = wj.img[i - 1], b = wj.img[i];
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                (cap_of(a + mid * (b - a)) < dt ? lo : hi) = mid;
            }
            const double lam = 0.5 * (lo + hi);
            const cplx tip_img = a + lam * (b - a);
            const double s_tip = wj.s[i - 1] + lam * (wj.s[i] - wj.s[i - 1]);

            // sub-slit consuming this piece
            double xi = std::arg(tip_img);
            // unwrap near previous driver
            xi += kTwoPi * std::round((wj.driver - xi) / kTwoPi);
            chain.push(xi, dt);
            wj.driver = xi;
            wj.consumed = s_tip;

            // drop consumed points, set the interpolated tip as the new head
            std::vector<cplx> nimg;
            std::vector<double> ns;
            nimg.reserve(wj.img.size() - i + 1);
            ns.reserve(wj.img.size() - i + 1);
            nimg.push_back(tip_img);
            ns.push_back(s_tip);
            for (std::size_t t = i; t < wj.img.size(); ++t) {
                nimg.push_back(wj.img[t]);
                ns.push_back(wj.s[t]);
            }
            wj.img = std::move(nimg);
            wj.s = std::move(ns);

            // apply the new sub-slit to every remaining image point
            for (auto& wk : w)
                for (auto& z : wk.img) z = slit::forward(z, xi, dt);
        }
        if (exhausted) break;
        pr.curve.times.push_back(dt * (k + 1));
        for (int j = 0; j < n; ++j) {
            const auto& cj = curves[static_cast<std::size_t>(j)];
            const double s = w[static_cast<std::size_t>(j)].consumed;
            const double pos = s / cj.ds;
            const std::size_t i0 =
                std::min(static_cast<std::size_t>(pos), cj.pts.size() - 2);
            const double fr = pos - static_cast<double>(i0);
            pr.curve.pts[static_cast<std::size_t>(j)].push_back(
                cj.pts[i0] + fr * (cj.pts[i0 + 1] - cj.pts[i0]));
            pr.time_change.sigma[static_cast<std::size_t>(j)].push_back(s);
            thetas[static_cast<std::size_t>(j)].push_back(w[static_cast<std::size_t>(j)].driver);
        }
    }

    pr.curve.steps = static_cast<int>(pr.curve.times.size()) - 1;
    pr.T = pr.curve.times.back();
    pr.truncated = pr.curve.steps < steps_req;
    pr.time_change.times = pr.curve.times;

    pr.common_driver.dt = dt;
    pr.common_driver.steps = pr.curve.steps;
    for (int s = 0; s <= pr.curve.steps; ++s) {
        std::vector<double> a(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(j)] = thetas[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)];
        pr.common_driver.states.emplace_back(std::move(a));
    }
    return pr;
}

DerivativeBoundReport check_derivative_bounds(const MultiradialChain& mc, int upto_step,
                                              double x) {
    const std::size_t last = static_cast<std::size_t>(upto_step) * static_cast<std::size_t>(mc.n);
    DerivativeBoundReport rep;
    rep.x = x;
    rep.cap = mc.capacity_at(upto_step);

    double deriv = 1.0;
    const double hx = mc.chain.map_angle(x, 0, last, &deriv);
    rep.hprime = deriv;

    if (upto_step == 0) {
        rep.hm_plus = rep.hm_minus = 0.5;  // empty hull: both arcs reach the slit base... no hull
    } else {
        // hull base edges: side limits of each curve's starting angle
        std::vector<double> edges;
        for (int j = 0; j < mc.n; ++j) {
            const double th0 = mc.theta0[static_cast<std::size_t>(j)];
            for (int side = -1; side <= 1; side += 2) {
                double y = th0;
                bool split = false;
                for (std::size_t i = 0; i < last; ++i) {
                    const auto& st = mc.chain.step(i);
                    if (!split && i == mc.sub_pos(0, j)) {
                        // the first sub-slit of this curve swallows its base:
                        // the two side limits emerge at +- the base arc width
                        y = st.angle + side * slit::base_half_angle(st.cap);
                        split = true;
                        continue;
                    }
                    y = slit::forward_angle(y, st.angle, st.cap);
                }
                edges.push_back(wrap_2pi(y));
            }
        }
        const double hxw = wrap_2pi(hx);
        double up = kTwoPi, down = kTwoPi;
        for (double e : edges) {
            const double d_up = wrap_2pi(e - hxw);
            const double d_dn = wrap_2pi(hxw - e);
            up = std::min(up, d_up);
            down = std::min(down, d_dn);
        }
        rep.hm_plus = up / kTwoPi;
        rep.hm_minus = down / kTwoPi;
    }

    rep.lower = 0.25 * std::sin(M_PI * std::min(rep.hm_plus, rep.hm_minus));
    rep.lower_ok = rep.lower <= rep.hprime + 1e-12;
    rep.upper_full_ok = rep.hprime <= std::exp(-rep.cap) + 1e-12;
    rep.upper_half_ok = rep.hprime <= std::exp(-0.5 * rep.cap) + 1e-12;
    return rep;
}

double radial_fan_tip_radius(int n, double t) {
    const double b = slit::tip_radius(static_cast<double>(n) * n * t);
    return std::pow(b, 1.0 / n);
}

double radial_fan_sigma(int n, double t) {
    return slit::slit_capacity(radial_fan_tip_radius(n, t));
}

double radial_fan_hit_time(int n, double v) {
    return slit::slit_capacity(std::exp(-static_cast<double>(n) * v)) / (static_cast<double>(n) * n);
}

}  // namespace mrsle
