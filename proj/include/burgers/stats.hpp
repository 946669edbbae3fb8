#pragma once

#include <cstdint>
#include <vector>

namespace burgers {

// Regularized lower incomplete gamma P(a, x); series for x < a+1, continued
// fraction otherwise.
double gamma_p(double a, double x);

double chi2_cdf(double x, double dof);
double chi2_sf(double x, double dof);
double chi2_quantile(double prob, double dof);

// Pearson statistic; expected[i] > 0 required.
double chi_square_stat(const std::vector<std::int64_t>& observed,
                       const std::vector<double>& expected);

// Two-sample Kolmogorov-Smirnov distance. Weighted variant compares a
// self-normalized weighted ECDF against an unweighted one.
double ks_statistic(std::vector<double> a, std::vector<double> b);
struct Weighted {
    double value;
    double weight;
};
double ks_statistic_weighted(std::vector<Weighted> a, std::vector<double> b);

// Effective sample size of importance weights: (sum w)^2 / sum w^2.
double effective_sample_size(const std::vector<double>& weights);

// Kolmogorov asymptotic tail Q(d * (sqrt(n_eff) + 0.12 + 0.11/sqrt(n_eff))).
double ks_pvalue(double d, double n_eff);

// OLS on (x, y) with standard error of the slope.
struct LineFit {
    double slope;
    double intercept;
    double slope_se;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);
LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

} // namespace burgers
