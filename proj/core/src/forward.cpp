#include "mgcq/forward.hpp"

#include <algorithm>
#include <cassert>

namespace mgcq {

std::vector<CustomerSchedule> replay_mg1_fcfs(std::span<const ForwardArrival> arrivals,
                                              double d_prev) {
    std::vector<CustomerSchedule> out;
    out.reserve(arrivals.size());
    for (const auto& a : arrivals) {
        double j = std::max(a.t, d_prev);
        d_prev = j + a.duration;
        out.push_back({a.t, j, d_prev, a.duration});
    }
    return out;
}

int FcfsTrace::count_at(double t) const {
    auto arrived = std::upper_bound(arrivals.begin(), arrivals.end(), t) - arrivals.begin();
    auto departed = std::upper_bound(sorted_departures.begin(), sorted_departures.end(), t) -
                    sorted_departures.begin();
    return static_cast<int>(arrived - departed);
}

WorkloadVector FcfsTrace::vector_at(double t) const {
    assert(t >= start_time && t <= end_time);
    auto idx = std::upper_bound(arrivals.begin(), arrivals.end(), t) - arrivals.begin();
    if (idx == 0) return kw_decay(initial, t - start_time);
    const auto& base = after[static_cast<std::size_t>(idx - 1)];
    return kw_decay(base, t - arrivals[static_cast<std::size_t>(idx - 1)]);
}

FcfsTrace run_mgc_fcfs(int c, std::span<const FedArrival> feed, WorkloadVector start,
                       double t0, double t1) {
    assert(start.servers() == c);
    FcfsTrace trace(c);
    trace.start_time = t0;
    trace.end_time = t1;
    trace.initial = start;

    WorkloadVector v = std::move(start);
    double t_last = t0;
    for (const auto& a : feed) {
        if (a.t > t1) break;
        assert(a.t >= t_last);
        v = kw_decay(std::move(v), a.t - t_last);
        t_last = a.t;
        double j = a.t + v[0];  // wait of the arriving customer
        trace.arrivals.push_back(a.t);
        trace.initiations.push_back(j);
        trace.departures.push_back(j + a.S);
        v = kw_update(std::move(v), a.S, 0.0);
        trace.after.push_back(v);
    }
    trace.final_vector = kw_decay(std::move(v), t1 - t_last);
    trace.sorted_departures = trace.departures;
    std::sort(trace.sorted_departures.begin(), trace.sorted_departures.end());
    return trace;
}

std::vector<double> reorder_by_initiation(std::vector<ServiceEntry> entries) {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const ServiceEntry& a, const ServiceEntry& b) {
                         if (a.J != b.J) return a.J < b.J;
                         if (a.t != b.t) return a.t < b.t;
                         return a.server < b.server;
                     });
    std::vector<double> durations;
    durations.reserve(entries.size());
    for (const auto& e : entries) durations.push_back(e.S);
    return durations;
}

}  // namespace mgcq
