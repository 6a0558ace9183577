#include "mrsle/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mrsle/parallel.hpp"

namespace mrsle {

MeanStderr mean_stderr(std::span<const double> v) {
    MeanStderr out;
    out.n = static_cast<long>(v.size());
    if (out.n == 0) return out;
    out.mean = pairwise_sum(v) / static_cast<double>(out.n);
    if (out.n < 2) return out;
    double ss = 0;
    for (double x : v) ss += (x - out.mean) * (x - out.mean);
    out.stderr_ = std::sqrt(ss / (static_cast<double>(out.n) * (out.n - 1.0)));
    return out;
}

double median(std::vector<double> v) { return quantile(std::move(v), 0.5); }

double quantile(std::vector<double> v, double q) {
    if (v.empty()) throw std::invalid_argument("quantile: empty");
    std::sort(v.begin(), v.end());
    const double pos = q * (static_cast<double>(v.size()) - 1.0);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return v[lo] * (1 - frac) + v[hi] * frac;
}

double excess_kurtosis(std::span<const double> v) {
    const auto ms = mean_stderr(v);
    if (ms.n < 4) return 0;
    double m2 = 0, m4 = 0;
    for (double x : v) {
        const double d = x - ms.mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    m2 /= static_cast<double>(ms.n);
    m4 /= static_cast<double>(ms.n);
    return m4 / (m2 * m2) - 3.0;
}

WilsonInterval wilson_interval(long successes, long trials, double z) {
    WilsonInterval w{};
    if (trials <= 0) return w;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    w.p_hat = p;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2 * n)) / denom;
    const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
    w.lo = std::max(0.0, center - half);
    w.hi = std::min(1.0, center + half);
    return w;
}

LineFit weighted_line_fit(std::span<const double> x, std::span<const double> y,
                          std::span<const double> w) {
    if (x.size() != y.size() || x.size() != w.size() || x.size() < 2)
        throw std::invalid_argument("weighted_line_fit: bad sizes");
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sw += w[i];
        sx += w[i] * x[i];
        sy += w[i] * y[i];
        sxx += w[i] * x[i] * x[i];
        sxy += w[i] * x[i] * y[i];
    }
    const double det = sw * sxx - sx * sx;
    LineFit f;
    f.slope = (sw * sxy - sx * sy) / det;
    f.intercept = (sxx * sy - sx * sxy) / det;
    f.slope_se = std::sqrt(sw / det);
    // plain (unweighted) R^2 of the fit, reported for diagnostics
    double ybar = 0;
    for (std::size_t i = 0; i < y.size(); ++i) ybar += y[i];
    ybar /= static_cast<double>(y.size());
    double ss_tot = 0, ss_res = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double fit = f.intercept + f.slope * x[i];
        ss_tot += (y[i] - ybar) * (y[i] - ybar);
        ss_res += (y[i] - fit) * (y[i] - fit);
    }
    f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

namespace {

// Lanczos log-gamma
double lgamma_pos(double x) { return std::lgamma(x); }

double gamma_p_series(double a, double x) {
    double sum = 1.0 / a, term = sum;
    for (int k = 1; k < 500; ++k) {
        term *= x / (a + k);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - lgamma_pos(a));
}

double gamma_q_cf(double a, double x) {
    // Lentz continued fraction for Q(a,x)
    const double tiny = 1e-300;
    double b = x + 1 - a, c = 1 / tiny, d = 1 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - lgamma_pos(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
    if (x < 0 || a <= 0) throw std::invalid_argument("gamma_q: domain");
    if (x == 0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi2_pvalue(double stat, int dof) { return gamma_q(0.5 * dof, 0.5 * stat); }

namespace {
double ks_impl(std::vector<std::pair<double, double>> a, std::vector<std::pair<double, double>> b) {
    auto norm = [](std::vector<std::pair<double, double>>& v) {
        double tot = 0;
        for (auto& [x, w] : v) tot += w;
        for (auto& [x, w] : v) w /= tot;
        std::sort(v.begin(), v.end());
    };
    norm(a);
    norm(b);
    double d = 0, ca = 0, cb = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first <= b[j].first)
            ca += a[i++].second;
        else
            cb += b[j++].second;
        d = std::max(d, std::fabs(ca - cb));
    }
    return d;
}
}  // namespace

double ks_distance(std::vector<double> a, std::vector<double> b) {
    std::vector<double> wa(a.size(), 1.0), wb(b.size(), 1.0);
    return ks_distance_weighted(std::move(a), std::move(wa), std::move(b), std::move(wb));
}

double ks_distance_weighted(std::vector<double> a, std::vector<double> wa, std::vector<double> b,
                            std::vector<double> wb) {
    if (a.size() != wa.size() || b.size() != wb.size() || a.empty() || b.empty())
        throw std::invalid_argument("ks_distance: bad sizes");
    std::vector<std::pair<double, double>> pa(a.size()), pb(b.size());
    for (std::size_t i = 0; i < a.size(); ++i) pa[i] = {a[i], wa[i]};
    for (std::size_t i = 0; i < b.size(); ++i) pb[i] = {b[i], wb[i]};
    return ks_impl(std::move(pa), std::move(pb));
}

}  // namespace mrsle
