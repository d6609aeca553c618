#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "mgcq/rng.hpp"

namespace mgcq {

enum class DistKind { exponential, uniform, deterministic, erlang };

struct SpreadPair {
    double total;     // full service duration H, length-biased
    double residual;  // U * H, uniform fraction of the total
};

// Service-duration distribution G together with exact samplers for its
// equilibrium (residual-life) version G_e and its length-biased spread
// version G_s.  All samplers are analytic per kind; there is no numeric
// inversion anywhere.
class ServiceDistribution {
public:
    static ServiceDistribution exponential(double rate);
    static ServiceDistribution uniform(double a, double b);
    static ServiceDistribution deterministic(double d);
    static ServiceDistribution erlang(int shape, double rate);

    // CLI syntax: exp:2.0 | unif:0:1 | det:0.5 | erlang:2:4.0
    static ServiceDistribution parse(std::string_view spec);
    std::string spec_string() const;

    DistKind kind() const { return kind_; }
    double mean() const;
    double second_moment() const;

    double sample(RandomStream& rng) const;
    double sample_equilibrium(RandomStream& rng) const;
    double sample_spread(RandomStream& rng) const;
    // Correlated (total, residual) draw for building the stationary state
    // of a processor-sharing server: the customer in service brought H
    // units of work in total and still has U*H of them left.
    SpreadPair sample_spread_pair(RandomStream& rng) const;

    double cdf(double x) const;
    double equilibrium_cdf(double x) const;
    double spread_cdf(double x) const;

private:
    ServiceDistribution(DistKind k, double a, double b, int shape)
        : kind_(k), a_(a), b_(b), shape_(shape) {}

    DistKind kind_;
    double a_ = 0.0;  // rate (exponential/erlang), lower bound (uniform), value (deterministic)
    double b_ = 0.0;  // upper bound (uniform)
    int shape_ = 0;   // erlang shape
};

struct QueueParams {
    double lambda;  // arrival rate
    int servers;    // c
    ServiceDistribution service;

    double rho() const { return lambda * service.mean(); }

    // throws std::invalid_argument unless lambda > 0, c >= 1 and rho < c
    void validate() const;
};

}  // namespace mgcq
