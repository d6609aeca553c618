#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "mgcq/dist.hpp"
#include "mgcq/rng.hpp"

namespace mgcq {

class budget_exceeded : public std::runtime_error {
public:
    explicit budget_exceeded(std::uint64_t budget)
        : std::runtime_error("event budget exceeded (" + std::to_string(budget) +
                             " events); check queue parameters") {}
};

struct PSCustomer {
    double residual;  // work remaining, in reversed time
    double total;     // full service duration
};

// One server of the reversed-time [M/G/1 PS]^c process.
struct PSServerState {
    std::vector<PSCustomer> customers;
    double clock = 0.0;  // reversed time t-hat

    bool empty() const { return customers.empty(); }
};

struct PSEvent {
    enum Kind { arrival, departure };
    Kind kind;
    double elapsed;   // reversed time since the previous event
    double duration;  // new draw from G (arrival) or full S of the departer
};

// Stationary state of one processor-sharing server: geometric customer
// count, spread totals, uniform residual fractions.
PSServerState make_equilibrium_server(const QueueParams& p, RandomStream& rng);

// Deterministic variant used by tests and by make_equilibrium_server itself.
PSServerState make_ps_state(std::span<const double> totals, std::span<const double> fractions);

// Advance one PS server by a single event.  All customers drain at rate
// 1/Q; the minimum residual completes after (min residual) * Q time units,
// competing against an Exponential(arrival_rate) arrival clock.
PSEvent next_event(PSServerState& s, double arrival_rate, const ServiceDistribution& dist,
                   RandomStream& rng);

struct ReversedEvent {
    double t_hat;
    PSEvent::Kind kind;
    double duration;
};

struct ForwardArrival {
    double t;
    double duration;
};

// Append-only reversed-time event log of the dominating [M/G/1 PS]^c
// process, one substream per (server, direction).  Extending any horizon
// never alters previously generated events, which is what keeps sandwich
// lists consistent across back-off rounds.
class DominatingPath {
public:
    static constexpr std::uint64_t kDefaultEventBudget = 100'000'000;

    DominatingPath(QueueParams p, std::uint64_t root_seed,
                   std::uint64_t event_budget = kDefaultEventBudget);

    int servers() const { return params_.servers; }
    const QueueParams& params() const { return params_; }
    std::uint64_t events_simulated() const { return events_; }

    // state drawn at reversed time zero, before any simulation
    const PSServerState& initial_state(int j) const { return servers_[j].initial; }

    const std::vector<ReversedEvent>& log(int j) const { return servers_[j].log; }

    // first reversed time >= t_hat_min at which server j is empty
    double extend_until_empty_at(int j, double t_hat_min);

    // first emptying *event* of server j strictly after t_hat (used by the
    // stopping-time back-off schedule)
    double next_emptying_after(int j, double t_hat);

    // first reversed time at which all servers are simultaneously empty
    double first_all_empty();

    // reversed departures in (0, tau_hat_j] become forward arrivals on
    // [-tau_hat_j, 0], full durations attached, sorted by forward time
    std::vector<ForwardArrival> forward_arrivals(int j, double tau_hat_j) const;

    // fresh Poisson(lambda/c) arrivals with G durations on (0, horizon],
    // drawn from a cached substream: growing horizons agree on prefixes
    std::span<const ForwardArrival> extend_forward(int j, double horizon);

    // debug log as JSON lines {t_hat, server, kind, duration}
    void dump_events(std::ostream& os) const;

private:
    struct IdleInterval {
        double begin;
        double end;  // reversed time of the arrival that ended the idle spell
    };

    struct Server {
        PSServerState initial;
        PSServerState state;
        std::vector<ReversedEvent> log;
        std::vector<IdleInterval> idle;  // closed intervals only
        bool idle_open = false;
        double idle_open_since = 0.0;
        RandomStream events_rng;
        RandomStream forward_rng;
        std::vector<ForwardArrival> forward_cache;
        double forward_clock = 0.0;

        Server(RandomStream ev, RandomStream fwd)
            : events_rng(ev), forward_rng(fwd) {}
    };

    void step(int j);
    // first point >= t at which server j is known idle, extending as needed
    double first_idle_at_or_after(int j, double t);

    QueueParams params_;
    std::vector<Server> servers_;
    std::uint64_t events_ = 0;
    std::uint64_t budget_;
};

}  // namespace mgcq
