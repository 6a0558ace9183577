#include "mrsle/loop_measure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "mrsle/loewner.hpp"

namespace mrsle {

namespace {

double pt_seg_dist2(cplx p, cplx a, cplx b) {
    const cplx ab = b - a;
    const double len2 = std::norm(ab);
    double t = len2 > 0 ? ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2
                        : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::norm(p - (a + t * ab));
}

}  // namespace

CurveIndex::CurveIndex(std::span<const cplx> pts) {
    if (pts.size() < 2) throw std::invalid_argument("CurveIndex: need a polyline");
    segs_.reserve(pts.size() - 1);
    r_lo_ = 1e300;
    r_hi_ = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        segs_.push_back({pts[i], pts[i + 1]});
        r_lo_ = std::min({r_lo_, std::abs(pts[i]), std::abs(pts[i + 1])});
        r_hi_ = std::max({r_hi_, std::abs(pts[i]), std::abs(pts[i + 1])});
    }
    r_lo_ = std::max(r_lo_, 1e-12);
    bin_w_ = std::log(1.3);
    log_lo_ = std::log(r_lo_) - 1e-12;
    nbins_ = static_cast<int>(std::floor((std::log(r_hi_ + 1e-300) - log_lo_) / bin_w_)) + 1;
    nbins_ = std::max(nbins_, 1);
    bins_.assign(static_cast<std::size_t>(nbins_), {});
    for (int s = 0; s < static_cast<int>(segs_.size()); ++s) {
        const double ra = std::abs(segs_[static_cast<std::size_t>(s)].a);
        const double rb = std::abs(segs_[static_cast<std::size_t>(s)].b);
        const double lo = std::max(std::min(ra, rb), r_lo_);
        const double hi = std::max(ra, rb);
        int b0 = static_cast<int>((std::log(lo) - log_lo_) / bin_w_);
        int b1 = static_cast<int>((std::log(hi) - log_lo_) / bin_w_);
        b0 = std::clamp(b0, 0, nbins_ - 1);
        b1 = std::clamp(b1, 0, nbins_ - 1);
        for (int b = b0; b <= b1; ++b) bins_[static_cast<std::size_t>(b)].push_back(s);
    }
}

void CurveIndex::candidates(double r, double d, std::vector<int>& out) const {
    out.clear();
    const double lo = std::max(r - d, r_lo_);
    const double hi = r + d;
    if (hi < r_lo_ * 0.999) return;
    int b0 = static_cast<int>((std::log(std::max(lo, 1e-12)) - log_lo_) / bin_w_);
    int b1 = static_cast<int>((std::log(std::max(hi, 1e-12)) - log_lo_) / bin_w_);
    b0 = std::clamp(b0 - 1, 0, nbins_ - 1);
    b1 = std::clamp(b1 + 1, 0, nbins_ - 1);
    for (int b = b0; b <= b1; ++b)
        for (int s : bins_[static_cast<std::size_t>(b)]) out.push_back(s);
}

double CurveIndex::min_distance(cplx p, double cutoff) const {
    candidates(std::abs(p), cutoff, scratch_);
    double best2 = cutoff * cutoff;
    bool found = false;
    for (int s : scratch_) {
        const double d2 = pt_seg_dist2(p, segs_[static_cast<std::size_t>(s)].a,
                                       segs_[static_cast<std::size_t>(s)].b);
        if (d2 < best2) {
            best2 = d2;
            found = true;
        }
    }
    return found ? std::sqrt(best2) : cutoff;
}

double CurveIndex::crossing_prob(cplx a, cplx b, double tau) const {
    const double reach = 6.0 * std::sqrt(tau);
    const cplx mid = 0.5 * (a + b);
    const double d = 0.5 * std::abs(b - a) + reach;
    candidates(std::abs(mid), d, scratch_);
    if (scratch_.empty()) return 0.0;
    double p = 0.0;
    for (int si : scratch_) {
        const auto& sg = segs_[static_cast<std::size_t>(si)];
        const cplx t = sg.b - sg.a;
        const double len = std::abs(t);
        if (len < 1e-15) continue;
        const cplx tn = t / len;
        auto proj = [&](cplx z, double* along) {
            const cplx rel = z - sg.a;
            *along = rel.real() * tn.real() + rel.imag() * tn.imag();
            return rel.imag() * tn.real() - rel.real() * tn.imag();  // signed normal
        };
        double ta, tb;
        const double na = proj(a, &ta);
        const double nb = proj(b, &tb);
        const double margin = 2.0 * std::sqrt(tau);
        if (std::max(ta, tb) < -margin || std::min(ta, tb) > len + margin) continue;
        double ps;
        if (na == 0.0 || nb == 0.0)
            ps = 1.0;
        else if ((na > 0) != (nb > 0))
            ps = 1.0;  // realized crossing of the supporting line
        else {
            const double prod = std::fabs(na) * std::fabs(nb);
            if (prod > 18.0 * tau) continue;  // e^{-36}; below double noise
            ps = std::exp(-2.0 * prod / tau);
        }
        p = std::max(p, ps);
        if (p >= 1.0) return 1.0;
    }
    return p;
}

bool CurveIndex::within(cplx a, cplx b, double r) const {
    const cplx mid = 0.5 * (a + b);
    const double d = 0.5 * std::abs(b - a) + r;
    candidates(std::abs(mid), d, scratch_);
    for (int si : scratch_) {
        const auto& sg = segs_[static_cast<std::size_t>(si)];
        if (pt_seg_dist2(a, sg.a, sg.b) < r * r) return true;
        if (pt_seg_dist2(b, sg.a, sg.b) < r * r) return true;
    }
    return false;
}

double CurveSet::min_pairwise_distance() const {
    double best = 2.0;
    for (int i = 0; i < n(); ++i) {
        const CurveIndex idx(curves[static_cast<std::size_t>(i)]);
        for (int j = i + 1; j < n(); ++j)
            for (const cplx& p : curves[static_cast<std::size_t>(j)])
                best = std::min(best, idx.min_distance(p, best));
    }
    return best;
}

namespace {

int bridge_nodes(double t, const BridgeParams& p) {
    double m = p.points_per_unit_time * t;
    m = std::clamp(m, static_cast<double>(p.m_min), static_cast<double>(p.m_max));
    int pw = 1;
    while (pw < static_cast<int>(m)) pw *= 2;
    return pw;
}

struct SampledLoop {
    std::vector<cplx> nodes;  // first == last
    std::vector<double> taus; // per-step durations (refined near the boundary)
    double weight = 0;        // importance weight * survival factor; 0 if dead
};

// One rooted bridge sample: duration from the 1/t density on [t_min, t_max],
// root from a mixture of uniform-on-disk and uniform near the origin at the
// loop's own scale, nodes from the standard bridge construction. The weight
// restores  dt/t * (2 pi t)^{-1} dz  and carries the boundary survival factor
// (flat-barrier crossing probabilities on a skeleton that is adaptively
// refined near the circle, where barrier curvature would otherwise bias the
// correction).
SampledLoop sample_loop(const BridgeParams& p, double t_min, long s) {
    SampledLoop L;
    const RngKey kroot = p.key.substream(11);
    const RngKey kpath = p.key.substream(12);
    const double lam = std::log(p.t_max / t_min);
    const auto [u1, u2] = u01_pair(kroot, static_cast<std::uint64_t>(s), 0);
    const auto [u3, u4] = u01_pair(kroot, static_cast<std::uint64_t>(s), 1);
    const double t = t_min * std::exp(lam * u1);
    const double R = std::min(1.0, p.root_focus * std::sqrt(t));
    cplx z;
    if (u2 < 0.5) {  // uniform on the disk
        const double r = std::sqrt(u3);
        z = std::polar(r, kTwoPi * u4);
    } else {  // uniform on |z| < R
        const double r = R * std::sqrt(u3);
        z = std::polar(r, kTwoPi * u4);
    }
    const double qz = 0.5 / M_PI + 0.5 / (M_PI * R * R) * (std::abs(z) < R ? 1.0 : 0.0);
    const double w = lam / (kTwoPi * t * qz);

    const int m = bridge_nodes(t, p);
    const double tau0 = t / m;
    const double sd = std::sqrt(tau0);
    std::vector<cplx> wsum(static_cast<std::size_t>(m) + 1);
    wsum[0] = 0;
    for (int i = 0; i < m; ++i) {
        const auto [g1, g2] = gauss_pair(kpath, static_cast<std::uint64_t>(s),
                                         static_cast<std::uint64_t>(i));
        wsum[static_cast<std::size_t>(i) + 1] =
            wsum[static_cast<std::size_t>(i)] + cplx(sd * g1, sd * g2);
    }
    const cplx wm = wsum[static_cast<std::size_t>(m)];
    std::vector<cplx> coarse(static_cast<std::size_t>(m) + 1);
    for (int i = 0; i <= m; ++i) {
        const double fr = static_cast<double>(i) / m;
        const cplx node = z + wsum[static_cast<std::size_t>(i)] - fr * wm;
        coarse[static_cast<std::size_t>(i)] = node;
        if (std::abs(node) >= 1.0) {
            L.weight = 0;
            return L;
        }
    }

    // refine steps with endpoints close to the circle by conditional midpoint
    // insertion; dies if a refined node leaves the disk
    RngStream refine(kpath.substream(13), static_cast<std::uint64_t>(s));
    L.nodes.reserve(coarse.size() * 2);
    L.taus.reserve(coarse.size() * 2);
    L.nodes.push_back(coarse[0]);
    bool dead = false;
    std::function<void(cplx, cplx, double, int)> emit = [&](cplx a, cplx b, double tau,
                                                            int depth) {
        if (dead) return;
        const double d = std::min(1.0 - std::abs(a), 1.0 - std::abs(b));
        if (depth < 4 && d < 5.0 * std::sqrt(tau)) {
            const double hsd = std::sqrt(0.25 * tau);
            const cplx mid = 0.5 * (a + b) + cplx(hsd * refine.gauss(), hsd * refine.gauss());
            if (std::abs(mid) >= 1.0) {
                dead = true;
                return;
            }
            emit(a, mid, 0.5 * tau, depth + 1);
            emit(mid, b, 0.5 * tau, depth + 1);
            return;
        }
        L.nodes.push_back(b);
        L.taus.push_back(tau);
    };
    for (int i = 0; i < m; ++i)
        emit(coarse[static_cast<std::size_t>(i)], coarse[static_cast<std::size_t>(i) + 1], tau0, 0);
    if (dead) {
        L.weight = 0;
        return L;
    }

    double survival = 1.0;
    for (std::size_t i = 0; i + 1 < L.nodes.size(); ++i) {
        const double da = 1.0 - std::abs(L.nodes[i]);
        const double db = 1.0 - std::abs(L.nodes[i + 1]);
        const double prod = da * db;
        if (prod < 18.0 * L.taus[i]) survival *= 1.0 - std::exp(-2.0 * prod / L.taus[i]);
    }
    L.weight = w * survival;
    return L;
}

// E[(N-1)^+] given per-curve hit probabilities (conditionally independent
// given the bridge skeleton): sum P_j - 1 + prod(1 - P_j).
double excess_hits(const std::vector<double>& pj) {
    double sum = 0, prod = 1;
    for (double p : pj) {
        sum += p;
        prod *= 1.0 - p;
    }
    return std::max(0.0, sum - 1.0 + prod);
}

double loop_value(const SampledLoop& L, const std::vector<CurveIndex>& idx,
                  const std::vector<std::pair<double, double>>& radial_range, bool crossing) {
    if (L.weight == 0) return 0.0;
    double rmin = 2, rmax = 0, tau_max = 0;
    for (const cplx& z : L.nodes) {
        rmin = std::min(rmin, std::abs(z));
        rmax = std::max(rmax, std::abs(z));
    }
    for (double tau : L.taus) tau_max = std::max(tau_max, tau);
    const double reach = 6.0 * std::sqrt(tau_max);
    std::vector<double> pj(idx.size(), 0.0);
    int possible = 0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
        if (rmin - reach > radial_range[j].second || rmax + reach < radial_range[j].first)
            continue;
        ++possible;
        pj[j] = -1;  // marked for evaluation
    }
    if (possible < 2) return 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
        if (pj[j] != -1) continue;
        if (crossing) {
            double miss = 1.0;
            for (std::size_t i = 0; i + 1 < L.nodes.size(); ++i) {
                const double pc = idx[j].crossing_prob(L.nodes[i], L.nodes[i + 1], L.taus[i]);
                if (pc >= 1.0) {
                    miss = 0.0;
                    break;
                }
                if (pc > 0) miss *= 1.0 - pc;
            }
            pj[j] = 1.0 - miss;
        } else {
            bool hit = false;
            for (std::size_t i = 0; i + 1 < L.nodes.size() && !hit; ++i)
                hit = idx[j].within(L.nodes[i], L.nodes[i + 1], 0.5 * std::sqrt(L.taus[i]));
            pj[j] = hit ? 1.0 : 0.0;
        }
    }
    return L.weight * excess_hits(pj);
}

}  // namespace

LoopEstimate estimate_loop_term(const CurveSet& curves, const BridgeParams& p) {
    LoopEstimate est;
    est.method = LoopMethod::bridge_mc;
    est.n_samples = p.n_samples;
    est.t_max = p.t_max;
    if (curves.n() < 2) {  // no pair to meet
        est.t_min = p.t_min;
        return est;
    }
    const double delta = curves.min_pairwise_distance();
    if (delta <= 0) throw std::invalid_argument("estimate_loop_term: curves must be disjoint");
    const double t_min = p.t_min > 0 ? p.t_min : (delta / 6.0) * (delta / 6.0);
    est.t_min = t_min;
    const double disc_scale = std::sqrt(t_min / p.m_min);
    if (delta < 4.0 * disc_scale)
        throw std::invalid_argument(
            "estimate_loop_term: curve separation below hit-detection resolution");
    est.cutoff_bias_bound = 8.0 / (delta * delta) * std::exp(-delta * delta / (4.0 * t_min));

    std::vector<CurveIndex> idx;
    std::vector<std::pair<double, double>> rng;
    idx.reserve(curves.curves.size());
    for (const auto& c : curves.curves) {
        idx.emplace_back(c);
        rng.emplace_back(idx.back().radius_lo(), idx.back().radius_hi());
    }

    std::vector<double> vals(static_cast<std::size_t>(p.n_samples));
    parallel_for(
        static_cast<std::size_t>(p.n_samples),
        [&](std::size_t s) {
            const SampledLoop L = sample_loop(p, t_min, static_cast<long>(s));
            vals[s] = loop_value(L, idx, rng, p.crossing_correction);
        },
        p.mode);
    const auto ms = mean_stderr(vals);
    est.mass = ms.mean;
    est.stderr_ = ms.stderr_;
    return est;
}

LoopBattery::LoopBattery(const BridgeParams& p, long n_loops)
    : crossing_(p.crossing_correction), mode_(p.mode) {
    const double t_min = p.t_min > 0 ? p.t_min : 1e-4;
    loops_.resize(static_cast<std::size_t>(n_loops));
    parallel_for(
        static_cast<std::size_t>(n_loops),
        [&](std::size_t s) {
            SampledLoop L = sample_loop(p, t_min, static_cast<long>(s));
            loops_[s].nodes = std::move(L.nodes);
            loops_[s].taus = std::move(L.taus);
            loops_[s].weight = L.weight;
        },
        p.mode);
}

double LoopBattery::mass(const CurveSet& curves) const {
    if (curves.n() < 2) return 0.0;
    std::vector<CurveIndex> idx;
    std::vector<std::pair<double, double>> rng;
    for (const auto& c : curves.curves) {
        idx.emplace_back(c);
        rng.emplace_back(idx.back().radius_lo(), idx.back().radius_hi());
    }
    std::vector<double> vals(loops_.size());
    for (std::size_t s = 0; s < loops_.size(); ++s) {
        SampledLoop L;
        L.nodes = loops_[s].nodes;
        L.taus = loops_[s].taus;
        L.weight = loops_[s].weight;
        vals[s] = loop_value(L, idx, rng, crossing_);
    }
    return pairwise_sum(vals) / static_cast<double>(loops_.size());
}

SlopeResult slope_experiment(int n, std::vector<double> T_grid, BridgeParams p) {
    std::sort(T_grid.begin(), T_grid.end());
    SlopeResult res;
    for (std::size_t i = 0; i < T_grid.size(); ++i) {
        const CurveSet cs = radial_fan_curves(n, T_grid[i]);
        BridgeParams pi = p;
        pi.key = p.key.substream(1000 + static_cast<std::uint64_t>(i));
        const LoopEstimate e = estimate_loop_term(cs, pi);
        res.T.push_back(T_grid[i]);
        res.mass.push_back(e.mass);
        res.mass_err.push_back(e.stderr_);
    }
    // fit over the largest half of the grid
    const std::size_t lo = T_grid.size() / 2;
    std::vector<double> x, y, w;
    for (std::size_t i = lo > 0 ? lo - 1 : 0; i < T_grid.size(); ++i) {
        x.push_back(res.T[i]);
        y.push_back(res.mass[i]);
        const double se = std::max(res.mass_err[i], 1e-12);
        w.push_back(1.0 / (se * se));
    }
    res.fit = weighted_line_fit(x, y, w);
    res.slope = res.fit.slope;
    res.stderr_ = res.fit.slope_se;
    return res;
}

CurveSet radial_fan_curves(int n, double T, double offset, int pts_per_efold) {
    const double rho = radial_fan_tip_radius(n, T);
    const double depth = -std::log(rho);
    const int m = std::max(8, static_cast<int>(std::ceil(depth * pts_per_efold)));
    CurveSet cs;
    for (int j = 0; j < n; ++j) {
        std::vector<cplx> pts(static_cast<std::size_t>(m) + 1);
        for (int i = 0; i <= m; ++i) {
            const double r = std::exp(-depth * i / m);
            pts[static_cast<std::size_t>(i)] = std::polar(r, offset + kTwoPi * j / n);
        }
        cs.curves.push_back(std::move(pts));
    }
    return cs;
}

}  // namespace mrsle
