#include "mgcq/analysis.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mgcq {

StationaryPmf mmc_stationary(double lambda, double mu, int c) {
    if (lambda <= 0.0 || mu <= 0.0 || c < 1)
        throw std::invalid_argument("mmc_stationary: bad parameters");
    const double rho = lambda / mu;
    if (!(rho < c)) throw std::invalid_argument("mmc_stationary: unstable (rho >= c)");

    // unnormalised log weights via log pi_{k+1} = log pi_k + log(lambda / (mu min(k+1, c)))
    std::vector<double> logw{0.0};
    double total = 1.0;
    const double r = rho / c;  // tail ratio once k >= c
    while (true) {
        int k = static_cast<int>(logw.size()) - 1;
        double step = std::log(lambda) - std::log(mu * std::min(k + 1, c));
        logw.push_back(logw.back() + step);
        double w = std::exp(logw.back());
        total += w;
        if (k + 1 >= c && w * r / (1.0 - r) < 1e-12 * total) break;
    }

    StationaryPmf out;
    out.pi.reserve(logw.size());
    double mean = 0.0;
    for (std::size_t k = 0; k < logw.size(); ++k) {
        double p = std::exp(logw[k]) / total;
        out.pi.push_back(p);
        mean += static_cast<double>(k) * p;
    }
    out.mean_customers = mean;
    return out;
}

ChiSquaredResult chi_squared_gof(std::span<const long> observed_by_k,
                                 const StationaryPmf& expected) {
    long n = 0;
    for (long o : observed_by_k) n += o;
    if (n <= 0) throw std::invalid_argument("chi_squared_gof: no observations");

    const std::size_t kmax = std::max(observed_by_k.size(), expected.pi.size());
    ChiSquaredResult res;
    double obs_acc = 0.0, exp_acc = 0.0;
    for (std::size_t k = 0; k < kmax; ++k) {
        obs_acc += k < observed_by_k.size() ? static_cast<double>(observed_by_k[k]) : 0.0;
        exp_acc += (k < expected.pi.size() ? expected.pi[k] : 0.0) * static_cast<double>(n);
        if (exp_acc >= 5.0) {
            res.observed.push_back(obs_acc);
            res.expected.push_back(exp_acc);
            obs_acc = exp_acc = 0.0;
        }
    }
    if (obs_acc > 0.0 || exp_acc > 0.0) {
        if (res.observed.empty()) {
            res.observed.push_back(obs_acc);
            res.expected.push_back(exp_acc);
        } else {
            res.observed.back() += obs_acc;
            res.expected.back() += exp_acc;
        }
    }
    if (res.observed.size() < 2)
        throw std::invalid_argument("chi_squared_gof: fewer than two bins after pooling");

    double stat = 0.0;
    for (std::size_t i = 0; i < res.observed.size(); ++i) {
        double d = res.observed[i] - res.expected[i];
        stat += d * d / res.expected[i];
    }
    res.statistic = stat;
    res.df = static_cast<int>(res.observed.size()) - 1;
    res.p_value = boost::math::gamma_q(res.df / 2.0, stat / 2.0);
    return res;
}

namespace {

// tail of the Kolmogorov distribution, Q(x) = 2 sum (-1)^{k-1} exp(-2 k^2 x^2)
double kolmogorov_tail(double x) {
    if (x <= 0.0) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        double term = 2.0 * std::exp(-2.0 * k * k * x * x);
        sum += (k % 2 == 1) ? term : -term;
        if (term < 1e-16) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

}  // namespace

KsResult ks_one_sample(std::vector<double> samples,
                       const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double f = cdf(samples[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return {d, kolmogorov_tail(std::sqrt(n) * d)};
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    double n_eff = na * nb / (na + nb);
    return {d, kolmogorov_tail(std::sqrt(n_eff) * d)};
}

double alg1_runtime_lower_bound(double lambda, int c, double rho) {
    if (!(rho < c)) throw std::invalid_argument("alg1_runtime_lower_bound: rho >= c");
    double bound = (std::pow(1.0 - rho / c, -static_cast<double>(c)) - 2.0) / lambda;
    return std::max(0.0, bound);
}

double alg2_runtime_heuristic(double lambda, int c, double rho, double mean_customers) {
    if (!(rho < c)) throw std::invalid_argument("alg2_runtime_heuristic: rho >= c");
    return (1.0 / lambda) * (c * rho / (c - rho)) * mean_customers;
}

}  // namespace mgcq
