#pragma once

#include <functional>
#include <span>
#include <vector>

namespace mgcq {

struct StationaryPmf {
    std::vector<double> pi;  // pi[k], truncated where the tail mass < 1e-12
    double mean_customers = 0.0;
};

// Closed-form M/M/c stationary distribution of the customer count.
// Computed in log space; throws std::invalid_argument if rho >= c.
StationaryPmf mmc_stationary(double lambda, double mu, int c);

struct ChiSquaredResult {
    double statistic = 0.0;
    int df = 0;
    double p_value = 1.0;
    // pooled table, for reporting
    std::vector<double> observed;
    std::vector<double> expected;
};

// Pearson goodness of fit; adjacent bins are pooled until every expected
// count is >= 5.  Throws std::invalid_argument if fewer than two bins
// survive pooling.
ChiSquaredResult chi_squared_gof(std::span<const long> observed_by_k,
                                 const StationaryPmf& expected);

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

// One-sample Kolmogorov-Smirnov against a CDF (asymptotic p-value).
KsResult ks_one_sample(std::vector<double> samples,
                       const std::function<double(double)>& cdf);

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// E[B_e] >= ((1 - rho/c)^{-c} - 2) / lambda, clamped at zero.
double alg1_runtime_lower_bound(double lambda, int c, double rho);

// E[T_couple] <= (1/lambda) (c rho / (c - rho)) E[X_0].
double alg2_runtime_heuristic(double lambda, int c, double rho, double mean_customers);

}  // namespace mgcq
