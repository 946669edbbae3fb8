#include "burgers/stats.hpp"

#include "burgers/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace burgers {

namespace {

double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 10000; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz's algorithm for the upper-tail continued fraction Q(a, x).
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double gamma_p(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw OutOfRange("gamma_p: a > 0 and x >= 0 required");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double chi2_cdf(double x, double dof) {
    if (x <= 0.0) return 0.0;
    return gamma_p(dof / 2.0, x / 2.0);
}

double chi2_sf(double x, double dof) {
    if (x <= 0.0) return 1.0;
    if (x / 2.0 >= dof / 2.0 + 1.0) return gamma_q_cf(dof / 2.0, x / 2.0);
    return 1.0 - gamma_p_series(dof / 2.0, x / 2.0);
}

double chi2_quantile(double prob, double dof) {
    if (prob < 0.0 || prob >= 1.0) throw OutOfRange("chi2_quantile: prob in [0, 1) required");
    if (prob == 0.0) return 0.0;
    double lo = 0.0;
    double hi = dof;
    while (chi2_cdf(hi, dof) < prob) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (chi2_cdf(mid, dof) < prob) lo = mid;
        else hi = mid;
        if (hi - lo < 1e-12 * (1.0 + hi)) break;
    }
    return 0.5 * (lo + hi);
}

double chi_square_stat(const std::vector<std::int64_t>& observed,
                       const std::vector<double>& expected) {
    if (observed.size() != expected.size())
        throw OutOfRange("chi_square_stat: length mismatch");
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] <= 0.0) throw OutOfRange("chi_square_stat: expected[i] > 0 required");
        double diff = static_cast<double>(observed[i]) - expected[i];
        stat += diff * diff / expected[i];
    }
    return stat;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw OutOfRange("ks_statistic: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        double fa = static_cast<double>(i) / static_cast<double>(a.size());
        double fb = static_cast<double>(j) / static_cast<double>(b.size());
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

double ks_statistic_weighted(std::vector<Weighted> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw OutOfRange("ks_statistic_weighted: empty sample");
    std::sort(a.begin(), a.end(),
              [](const Weighted& u, const Weighted& v) { return u.value < v.value; });
    std::sort(b.begin(), b.end());
    double total = 0.0;
    for (const auto& w : a) {
        if (w.weight < 0.0) throw OutOfRange("ks_statistic_weighted: negative weight");
        total += w.weight;
    }
    if (total <= 0.0) throw OutOfRange("ks_statistic_weighted: zero total weight");
    std::size_t i = 0, j = 0;
    double acc = 0.0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i].value, b[j]);
        while (i < a.size() && a[i].value <= x) acc += a[i++].weight;
        while (j < b.size() && b[j] <= x) ++j;
        double fa = acc / total;
        double fb = static_cast<double>(j) / static_cast<double>(b.size());
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

double effective_sample_size(const std::vector<double>& weights) {
    double s1 = 0.0, s2 = 0.0;
    for (double w : weights) {
        s1 += w;
        s2 += w * w;
    }
    if (s2 <= 0.0) return 0.0;
    return s1 * s1 / s2;
}

double ks_pvalue(double d, double n_eff) {
    double sn = std::sqrt(n_eff);
    double lambda = (sn + 0.12 + 0.11 / sn) * d;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        double term = 2.0 * ((k % 2 == 1) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-12) break;
    }
    return std::min(1.0, std::max(0.0, sum));
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw OutOfRange("fit_line: need at least two points");
    std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0.0) throw OutOfRange("fit_line: degenerate x values");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = y[i] - (fit.intercept + fit.slope * x[i]);
        rss += r * r;
    }
    fit.slope_se = (n > 2) ? std::sqrt(rss / (static_cast<double>(n - 2) * sxx)) : 0.0;
    return fit;
}

LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 0.0 || y[i] <= 0.0)
            throw OutOfRange("fit_loglog: positive data required");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    return fit_line(lx, ly);
}

} // namespace burgers
