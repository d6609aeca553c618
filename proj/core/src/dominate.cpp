#include "mgcq/dominate.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>

namespace mgcq {

PSServerState make_ps_state(std::span<const double> totals, std::span<const double> fractions) {
    assert(totals.size() == fractions.size());
    PSServerState s;
    s.customers.reserve(totals.size());
    for (std::size_t i = 0; i < totals.size(); ++i) {
        assert(fractions[i] >= 0.0 && fractions[i] <= 1.0);
        s.customers.push_back({fractions[i] * totals[i], totals[i]});
    }
    return s;
}

PSServerState make_equilibrium_server(const QueueParams& p, RandomStream& rng) {
    const double q = p.rho() / p.servers;
    long count = rng.geometric(q);
    std::vector<double> totals(static_cast<std::size_t>(count));
    std::vector<double> fractions(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        SpreadPair sp = p.service.sample_spread_pair(rng);
        totals[static_cast<std::size_t>(i)] = sp.total;
        fractions[static_cast<std::size_t>(i)] = sp.residual / sp.total;
    }
    return make_ps_state(totals, fractions);
}

PSEvent next_event(PSServerState& s, double arrival_rate, const ServiceDistribution& dist,
                   RandomStream& rng) {
    if (s.empty()) {
        double gap = rng.exponential(arrival_rate);
        double duration = dist.sample(rng);
        s.clock += gap;
        s.customers.push_back({duration, duration});
        return {PSEvent::arrival, gap, duration};
    }

    const std::size_t q = s.customers.size();
    std::size_t min_i = 0;
    for (std::size_t i = 1; i < q; ++i)
        if (s.customers[i].residual < s.customers[min_i].residual) min_i = i;
    const double drain = s.customers[min_i].residual;  // per-customer work to completion
    const double completion_gap = drain * static_cast<double>(q);
    const double arrival_gap = rng.exponential(arrival_rate);

    if (completion_gap <= arrival_gap) {
        // subtract the drain itself so the departer hits exactly 0.0
        for (auto& c : s.customers) c.residual -= drain;
        s.customers[min_i].residual = 0.0;
#ifndef NDEBUG
        for (auto& c : s.customers) assert(c.residual >= 0.0);
#endif
        double full = s.customers[min_i].total;
        s.customers.erase(s.customers.begin() + static_cast<std::ptrdiff_t>(min_i));
        s.clock += completion_gap;
        return {PSEvent::departure, completion_gap, full};
    }

    const double per_customer = arrival_gap / static_cast<double>(q);
    for (auto& c : s.customers) c.residual -= per_customer;
    double duration = dist.sample(rng);
    s.customers.push_back({duration, duration});
    s.clock += arrival_gap;
    return {PSEvent::arrival, arrival_gap, duration};
}

DominatingPath::DominatingPath(QueueParams p, std::uint64_t root_seed, std::uint64_t event_budget)
    : params_(std::move(p)), budget_(event_budget) {
    params_.validate();
    servers_.reserve(static_cast<std::size_t>(params_.servers));
    for (int j = 0; j < params_.servers; ++j) {
        auto eq_rng = make_stream(root_seed, static_cast<std::uint64_t>(j),
                                  StreamPurpose::equilibrium_draw);
        Server s(make_stream(root_seed, static_cast<std::uint64_t>(j),
                             StreamPurpose::reversed_events),
                 make_stream(root_seed, static_cast<std::uint64_t>(j),
                             StreamPurpose::forward_extension));
        s.initial = make_equilibrium_server(params_, eq_rng);
        s.state = s.initial;
        if (s.state.empty()) {
            s.idle_open = true;
            s.idle_open_since = 0.0;
        }
        servers_.push_back(std::move(s));
    }
}

void DominatingPath::step(int j) {
    if (++events_ > budget_) throw budget_exceeded(budget_);
    Server& s = servers_[static_cast<std::size_t>(j)];
    const bool was_empty = s.state.empty();
    PSEvent e = next_event(s.state, params_.lambda / params_.servers, params_.service,
                           s.events_rng);
    // simultaneous events have probability zero; the log must stay strict
    assert(s.log.empty() || s.state.clock > s.log.back().t_hat);
    s.log.push_back({s.state.clock, e.kind, e.duration});
    if (e.kind == PSEvent::arrival && was_empty) {
        s.idle.push_back({s.idle_open_since, s.state.clock});
        s.idle_open = false;
    } else if (e.kind == PSEvent::departure && s.state.empty()) {
        s.idle_open = true;
        s.idle_open_since = s.state.clock;
    }
}

double DominatingPath::first_idle_at_or_after(int j, double t) {
    Server& s = servers_[static_cast<std::size_t>(j)];
    while (true) {
        auto it = std::lower_bound(s.idle.begin(), s.idle.end(), t,
                                   [](const IdleInterval& iv, double x) { return iv.end <= x; });
        if (it != s.idle.end()) return std::max(it->begin, t);
        // the open spell starts at or after t: idle at its start, no need to
        // know when it ends
        if (s.idle_open && t <= s.idle_open_since) return s.idle_open_since;
        step(j);  // either closes the open idle spell or works toward one
    }
}

double DominatingPath::extend_until_empty_at(int j, double t_hat_min) {
    return first_idle_at_or_after(j, t_hat_min);
}

double DominatingPath::next_emptying_after(int j, double t_hat) {
    Server& s = servers_[static_cast<std::size_t>(j)];
    while (true) {
        auto it = std::lower_bound(
            s.idle.begin(), s.idle.end(), t_hat,
            [](const IdleInterval& iv, double x) { return iv.begin <= x; });
        if (it != s.idle.end()) return it->begin;
        if (s.idle_open && s.idle_open_since > t_hat) return s.idle_open_since;
        step(j);
    }
}

double DominatingPath::first_all_empty() {
    double t = 0.0;
    while (true) {
        double next = t;
        for (int j = 0; j < params_.servers; ++j)
            next = std::max(next, first_idle_at_or_after(j, t));
        if (next == t) return t;
        t = next;
    }
}

std::vector<ForwardArrival> DominatingPath::forward_arrivals(int j, double tau_hat_j) const {
    const Server& s = servers_[static_cast<std::size_t>(j)];
    std::vector<ForwardArrival> out;
    for (const auto& e : s.log) {
        if (e.t_hat > tau_hat_j) break;
        if (e.kind == PSEvent::departure) out.push_back({-e.t_hat, e.duration});
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::span<const ForwardArrival> DominatingPath::extend_forward(int j, double horizon) {
    Server& s = servers_[static_cast<std::size_t>(j)];
    while (s.forward_cache.empty() || s.forward_cache.back().t <= horizon) {
        if (++events_ > budget_) throw budget_exceeded(budget_);
        s.forward_clock += s.forward_rng.exponential(params_.lambda / params_.servers);
        s.forward_cache.push_back({s.forward_clock, params_.service.sample(s.forward_rng)});
    }
    auto end = std::upper_bound(s.forward_cache.begin(), s.forward_cache.end(), horizon,
                                [](double h, const ForwardArrival& a) { return h < a.t; });
    return {s.forward_cache.data(),
            static_cast<std::size_t>(end - s.forward_cache.begin())};
}

void DominatingPath::dump_events(std::ostream& os) const {
    // merged by (t_hat, server); per-server logs are already time-sorted
    std::vector<std::size_t> pos(servers_.size(), 0);
    char buf[160];
    while (true) {
        int best = -1;
        for (std::size_t j = 0; j < servers_.size(); ++j) {
            if (pos[j] >= servers_[j].log.size()) continue;
            if (best < 0 ||
                servers_[j].log[pos[j]].t_hat <
                    servers_[static_cast<std::size_t>(best)].log[pos[static_cast<std::size_t>(best)]].t_hat)
                best = static_cast<int>(j);
        }
        if (best < 0) break;
        const auto& e = servers_[static_cast<std::size_t>(best)].log[pos[static_cast<std::size_t>(best)]++];
        std::snprintf(buf, sizeof buf,
                      "{\"t_hat\":%.17g,\"server\":%d,\"kind\":\"%s\",\"duration\":%.17g}\n",
                      e.t_hat, best, e.kind == PSEvent::arrival ? "arrival" : "departure",
                      e.duration);
        os << buf;
    }
}

}  // namespace mgcq
