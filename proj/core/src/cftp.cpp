#include "mgcq/cftp.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>

namespace mgcq {

namespace {

double elapsed_us(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0)
        .count();
}

bool initiation_order(const ServiceEntry& a, const ServiceEntry& b) {
    if (a.J != b.J) return a.J < b.J;
    if (a.t != b.t) return a.t < b.t;
    return a.server < b.server;
}

bool arrival_order(const ServiceEntry& a, const ServiceEntry& b) {
    if (a.t != b.t) return a.t < b.t;
    if (a.J != b.J) return a.J < b.J;
    return a.server < b.server;
}

}  // namespace

std::vector<ServiceEntry> collect_entries(DominatingPath& path,
                                          std::span<const double> tau_hats) {
    const int c = path.servers();
    assert(static_cast<int>(tau_hats.size()) == c);

    std::vector<ServiceEntry> entries;
    std::vector<double> last_departure(static_cast<std::size_t>(c),
                                       -std::numeric_limits<double>::infinity());
    double t_plus = 0.0;
    for (int j = 0; j < c; ++j) {
        auto arrivals = path.forward_arrivals(j, tau_hats[j]);
        auto sched = replay_mg1_fcfs(arrivals);
        for (const auto& s : sched) entries.push_back({s.t, s.J, s.S, j});
        if (!sched.empty()) {
            last_departure[static_cast<std::size_t>(j)] = sched.back().D;
            // per-server initiations are non-decreasing, so the last one is
            // the latest; it bounds when every customer present at zero has
            // started service
            t_plus = std::max(t_plus, sched.back().J);
        }
    }
    if (t_plus > 0.0) {
        for (int j = 0; j < c; ++j) {
            auto ext = path.extend_forward(j, t_plus);
            auto sched = replay_mg1_fcfs(ext, last_departure[static_cast<std::size_t>(j)]);
            for (const auto& s : sched) entries.push_back({s.t, s.J, s.S, j});
        }
    }
    return entries;
}

SandwichLists split_and_transform(std::vector<ServiceEntry> entries, double T) {
    // pair the k-th earliest arrival time with the k-th (J,S) pair in
    // initiation order; the pairing is by rank, not by customer, which is
    // what keeps envelopes started at different look-back depths nested
    std::vector<double> ts;
    ts.reserve(entries.size());
    for (const auto& e : entries) ts.push_back(e.t);
    std::sort(ts.begin(), ts.end());
    std::stable_sort(entries.begin(), entries.end(), initiation_order);

    SandwichLists out;
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const auto& e = entries[k];
        if (ts[k] <= T) {
            double residual = std::max(e.J + e.S, T) - std::max(e.J, T);
            out.l_star.push_back({T, std::max(e.J, T), residual, e.server});
        } else {
            out.l_post.push_back({ts[k], e.J, e.S, e.server});
        }
    }
    return out;
}

SandwichLists build_lists(DominatingPath& path, std::span<const double> tau_hats, double T) {
    for (double tau : tau_hats) assert(tau >= -T);
    return split_and_transform(collect_entries(path, tau_hats), T);
}

EnvelopePair run_envelopes(const SandwichLists& lists, int c, double T) {
    // both lists already carry rank-paired durations in feed order: the
    // l_star block sits at T, the rest follow in (sorted) arrival order
    std::vector<FedArrival> upper_feed, lower_feed;
    upper_feed.reserve(lists.l_star.size() + lists.l_post.size());
    lower_feed.reserve(lists.l_star.size() + lists.l_post.size());
    for (const auto& e : lists.l_star) {
        upper_feed.push_back({T, e.S});
        lower_feed.push_back({T, 0.0});
    }
    for (const auto& e : lists.l_post) {
        upper_feed.push_back({e.t, e.S});
        lower_feed.push_back({e.t, e.S});
    }

    FcfsTrace upper = run_mgc_fcfs(c, upper_feed, WorkloadVector(c), T, 0.0);
    FcfsTrace lower = run_mgc_fcfs(c, lower_feed, WorkloadVector(c), T, 0.0);
    WorkloadVector u = upper.final_vector;
    WorkloadVector l = lower.final_vector;
    return {std::move(u), std::move(l), std::move(upper), std::move(lower)};
}

bool coalesced(const WorkloadVector& u, const WorkloadVector& l) {
    return u == l;
}

EquilibriumSample algorithm1(const QueueParams& p, std::uint64_t seed,
                             std::uint64_t event_budget, Algorithm1Debug* debug,
                             std::ostream* event_dump) {
    const auto t_start = std::chrono::steady_clock::now();
    DominatingPath path(p, seed, event_budget);
    const int c = p.servers;

    double tau_hat = path.first_all_empty();
    EquilibriumSample sample{WorkloadVector(c), 0, {}};
    if (tau_hat > 0.0) {
        std::vector<double> taus(static_cast<std::size_t>(c), tau_hat);
        auto entries = collect_entries(path, taus);

        std::vector<ServiceEntry> originals;
        for (const auto& e : entries)
            if (e.t <= 0.0) originals.push_back(e);
        std::sort(originals.begin(), originals.end(), arrival_order);
        std::vector<double> durations = reorder_by_initiation(entries);

        std::vector<FedArrival> feed;
        feed.reserve(originals.size());
        for (std::size_t m = 0; m < originals.size(); ++m)
            feed.push_back({originals[m].t, durations[m]});

        FcfsTrace trace = run_mgc_fcfs(c, feed, WorkloadVector(c), -tau_hat, 0.0);
        sample.workload = trace.final_vector;
        sample.count = trace.count_at(0.0);
        if (debug) {
            debug->entries = entries;
            debug->target_trace = std::move(trace);
        }
    }
    if (debug) debug->tau_hat = tau_hat;
    if (event_dump) path.dump_events(*event_dump);

    sample.diag = {1, tau_hat, 0, path.events_simulated(), elapsed_us(t_start)};
    return sample;
}

EquilibriumSample algorithm2(const QueueParams& p, std::uint64_t seed,
                             BackoffStrategy backoff, std::uint64_t event_budget,
                             double initial_backoff, const Algorithm2Observer& observer,
                             std::ostream* event_dump) {
    const auto t_start = std::chrono::steady_clock::now();
    DominatingPath path(p, seed, event_budget);
    const int c = p.servers;

    std::vector<double> taus(static_cast<std::size_t>(c), 0.0);
    double t_hat = initial_backoff;
    if (backoff == BackoffStrategy::stopping_time) {
        for (int j = 0; j < c; ++j)
            taus[static_cast<std::size_t>(j)] = path.extend_until_empty_at(j, 0.0);
        t_hat = *std::min_element(taus.begin(), taus.end());
    }

    int rounds = 0;
    while (true) {
        if (backoff == BackoffStrategy::binary)
            for (int j = 0; j < c; ++j)
                taus[static_cast<std::size_t>(j)] = path.extend_until_empty_at(j, t_hat);

        const double T = -t_hat;
        auto entries = collect_entries(path, taus);
        SandwichLists lists = split_and_transform(entries, T);
        EnvelopePair env = run_envelopes(lists, c, T);
        ++rounds;
        if (observer) observer({T, entries, lists, env});

        if (coalesced(env.upper, env.lower)) {
            int count = env.upper_trace.count_at(0.0);
            if (event_dump) path.dump_events(*event_dump);
            return {env.upper, count,
                    {2, t_hat, rounds, path.events_simulated(), elapsed_us(t_start)}};
        }

        if (backoff == BackoffStrategy::binary) {
            t_hat *= 2.0;
        } else {
            auto min_it = std::min_element(taus.begin(), taus.end());
            *min_it = path.next_emptying_after(
                static_cast<int>(min_it - taus.begin()), t_hat);
            t_hat = *std::min_element(taus.begin(), taus.end());
        }
    }
}

}  // namespace mgcq
