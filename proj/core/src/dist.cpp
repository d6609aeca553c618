#include "mgcq/dist.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <charconv>
#include <vector>

namespace mgcq {

namespace {

double parse_number(std::string_view s, std::string_view whole) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument("bad service spec: " + std::string(whole));
    return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    while (true) {
        auto pos = s.find(sep);
        parts.push_back(s.substr(0, pos));
        if (pos == std::string_view::npos) break;
        s.remove_prefix(pos + 1);
    }
    return parts;
}

}  // namespace

ServiceDistribution ServiceDistribution::exponential(double rate) {
    if (rate <= 0.0) throw std::invalid_argument("exponential rate must be > 0");
    return {DistKind::exponential, rate, 0.0, 0};
}

ServiceDistribution ServiceDistribution::uniform(double a, double b) {
    if (a < 0.0 || b <= a) throw std::invalid_argument("uniform needs 0 <= a < b");
    return {DistKind::uniform, a, b, 0};
}

ServiceDistribution ServiceDistribution::deterministic(double d) {
    if (d <= 0.0) throw std::invalid_argument("deterministic duration must be > 0");
    return {DistKind::deterministic, d, 0.0, 0};
}

ServiceDistribution ServiceDistribution::erlang(int shape, double rate) {
    if (shape < 1 || rate <= 0.0) throw std::invalid_argument("erlang needs shape >= 1, rate > 0");
    return {DistKind::erlang, rate, 0.0, shape};
}

ServiceDistribution ServiceDistribution::parse(std::string_view spec) {
    auto parts = split(spec, ':');
    const auto& name = parts[0];
    if (name == "exp" && parts.size() == 2)
        return exponential(parse_number(parts[1], spec));
    if (name == "unif" && parts.size() == 3)
        return uniform(parse_number(parts[1], spec), parse_number(parts[2], spec));
    if (name == "det" && parts.size() == 2)
        return deterministic(parse_number(parts[1], spec));
    if (name == "erlang" && parts.size() == 3) {
        double k = parse_number(parts[1], spec);
        if (k != std::floor(k)) throw std::invalid_argument("erlang shape must be integer");
        return erlang(static_cast<int>(k), parse_number(parts[2], spec));
    }
    throw std::invalid_argument("unrecognised service spec: " + std::string(spec));
}

std::string ServiceDistribution::spec_string() const {
    auto num = [](double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", x);
        return std::string(buf);
    };
    switch (kind_) {
        case DistKind::exponential: return "exp:" + num(a_);
        case DistKind::uniform: return "unif:" + num(a_) + ":" + num(b_);
        case DistKind::deterministic: return "det:" + num(a_);
        case DistKind::erlang: return "erlang:" + std::to_string(shape_) + ":" + num(a_);
    }
    return {};
}

double ServiceDistribution::mean() const {
    switch (kind_) {
        case DistKind::exponential: return 1.0 / a_;
        case DistKind::uniform: return 0.5 * (a_ + b_);
        case DistKind::deterministic: return a_;
        case DistKind::erlang: return shape_ / a_;
    }
    return 0.0;
}

double ServiceDistribution::second_moment() const {
    switch (kind_) {
        case DistKind::exponential: return 2.0 / (a_ * a_);
        case DistKind::uniform: return (a_ * a_ + a_ * b_ + b_ * b_) / 3.0;
        case DistKind::deterministic: return a_ * a_;
        case DistKind::erlang: return shape_ * (shape_ + 1) / (a_ * a_);
    }
    return 0.0;
}

double ServiceDistribution::sample(RandomStream& rng) const {
    switch (kind_) {
        case DistKind::exponential:
            return rng.exponential(a_);
        case DistKind::uniform:
            return a_ + (b_ - a_) * rng.uniform();
        case DistKind::deterministic:
            return a_;
        case DistKind::erlang: {
            double s = 0.0;
            for (int i = 0; i < shape_; ++i) s += rng.exponential(a_);
            return s;
        }
    }
    return 0.0;
}

double ServiceDistribution::sample_spread(RandomStream& rng) const {
    switch (kind_) {
        case DistKind::exponential:
            // length-biased exponential is Gamma(2, rate)
            return rng.exponential(a_) + rng.exponential(a_);
        case DistKind::uniform: {
            // spread CDF (x^2 - a^2) / (b^2 - a^2); invert directly
            double u = rng.uniform();
            return std::sqrt(a_ * a_ + u * (b_ * b_ - a_ * a_));
        }
        case DistKind::deterministic:
            return a_;
        case DistKind::erlang: {
            // length-biased Erlang(k) is Erlang(k+1)
            double s = 0.0;
            for (int i = 0; i < shape_ + 1; ++i) s += rng.exponential(a_);
            return s;
        }
    }
    return 0.0;
}

SpreadPair ServiceDistribution::sample_spread_pair(RandomStream& rng) const {
    double total = sample_spread(rng);
    return {total, rng.uniform() * total};
}

double ServiceDistribution::sample_equilibrium(RandomStream& rng) const {
    // A uniform fraction of a spread draw has exactly the equilibrium
    // (residual-life) distribution.
    return sample_spread_pair(rng).residual;
}

double ServiceDistribution::cdf(double x) const {
    if (x < 0.0) return 0.0;
    switch (kind_) {
        case DistKind::exponential:
            return 1.0 - std::exp(-a_ * x);
        case DistKind::uniform:
            if (x <= a_) return 0.0;
            if (x >= b_) return 1.0;
            return (x - a_) / (b_ - a_);
        case DistKind::deterministic:
            return x >= a_ ? 1.0 : 0.0;
        case DistKind::erlang:
            return boost::math::gamma_p(static_cast<double>(shape_), a_ * x);
    }
    return 0.0;
}

double ServiceDistribution::equilibrium_cdf(double x) const {
    if (x <= 0.0) return 0.0;
    const double inv_mean = 1.0 / mean();
    switch (kind_) {
        case DistKind::exponential:
            return 1.0 - std::exp(-a_ * x);  // G_e = G for the exponential
        case DistKind::uniform: {
            if (x >= b_) return 1.0;
            double integral;  // of the survival function over [0, x]
            if (x <= a_) {
                integral = x;
            } else {
                double y = x - a_;
                integral = a_ + y - y * y / (2.0 * (b_ - a_));
            }
            return inv_mean * integral;
        }
        case DistKind::deterministic:
            return x >= a_ ? 1.0 : x / a_;
        case DistKind::erlang: {
            // mixture (1/k) * sum_{i=1..k} Erlang(i, rate)
            double s = 0.0;
            for (int i = 1; i <= shape_; ++i)
                s += boost::math::gamma_p(static_cast<double>(i), a_ * x);
            return s / shape_;
        }
    }
    return 0.0;
}

double ServiceDistribution::spread_cdf(double x) const {
    if (x <= 0.0) return 0.0;
    switch (kind_) {
        case DistKind::exponential:
            return 1.0 - std::exp(-a_ * x) * (1.0 + a_ * x);  // Gamma(2, rate)
        case DistKind::uniform:
            if (x <= a_) return 0.0;
            if (x >= b_) return 1.0;
            return (x * x - a_ * a_) / (b_ * b_ - a_ * a_);
        case DistKind::deterministic:
            return x >= a_ ? 1.0 : 0.0;
        case DistKind::erlang:
            return boost::math::gamma_p(static_cast<double>(shape_ + 1), a_ * x);
    }
    return 0.0;
}

void QueueParams::validate() const {
    if (lambda <= 0.0) throw std::invalid_argument("arrival rate must be > 0");
    if (servers < 1) throw std::invalid_argument("need at least one server");
    if (!(rho() < servers))
        throw std::invalid_argument("unstable queue: rho = " + std::to_string(rho()) +
                                    " >= c = " + std::to_string(servers));
}

}  // namespace mgcq
