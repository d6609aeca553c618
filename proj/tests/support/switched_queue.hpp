#pragma once

// c-server queue that runs Random Assignment until a switch time and central
// FCFS afterwards, with service durations consumed from a rank list in
// global order of initiation (ties by arrival time, then input index).
// Switch time +inf gives pure RA, -inf pure FCFS.

#include <algorithm>
#include <limits>
#include <vector>

#include "mgcq/kw.hpp"

namespace mgcq::testing {

struct SwitchedInput {
    int c = 1;
    std::vector<double> t;      // sorted arrival times
    std::vector<int> assign;    // RA server per arrival
    std::vector<double> sigma;  // durations by initiation rank
};

struct ScheduledCustomer {
    double t;
    double J;
    double D;
    int server;
};

inline std::vector<ScheduledCustomer> run_switched(const SwitchedInput& in, double switch_time) {
    const auto n = in.t.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<ScheduledCustomer> out(n);

    std::vector<std::vector<std::size_t>> q(static_cast<std::size_t>(in.c));
    for (std::size_t i = 0; i < n; ++i)
        q[static_cast<std::size_t>(in.assign[i])].push_back(i);
    std::vector<std::size_t> head(static_cast<std::size_t>(in.c), 0);
    std::vector<double> free_at(static_cast<std::size_t>(in.c), -inf);
    std::size_t rank = 0;

    // RA phase: commit per-server FIFO initiations strictly before the switch
    while (true) {
        std::size_t best = n;
        int best_j = -1;
        double best_time = inf;
        for (int j = 0; j < in.c; ++j) {
            auto ji = static_cast<std::size_t>(j);
            if (head[ji] >= q[ji].size()) continue;
            std::size_t i = q[ji][head[ji]];
            double cand = std::max(free_at[ji], in.t[i]);
            if (cand >= switch_time) continue;
            if (best == n || cand < best_time ||
                (cand == best_time &&
                 (in.t[i] < in.t[best] || (in.t[i] == in.t[best] && i < best)))) {
                best = i;
                best_j = j;
                best_time = cand;
            }
        }
        if (best_j < 0) break;
        double s = in.sigma[rank++];
        out[best] = {in.t[best], best_time, best_time + s, best_j};
        auto ji = static_cast<std::size_t>(best_j);
        free_at[ji] = best_time + s;
        ++head[ji];
    }

    // FCFS phase: leftovers merge into one queue ordered by arrival
    std::vector<std::size_t> rest;
    for (int j = 0; j < in.c; ++j) {
        auto ji = static_cast<std::size_t>(j);
        for (auto k = head[ji]; k < q[ji].size(); ++k) rest.push_back(q[ji][k]);
        free_at[ji] = std::max(free_at[ji], switch_time);
    }
    std::sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
        return in.t[a] != in.t[b] ? in.t[a] < in.t[b] : a < b;
    });
    for (std::size_t i : rest) {
        auto j = static_cast<std::size_t>(
            std::min_element(free_at.begin(), free_at.end()) - free_at.begin());
        double J = std::max(in.t[i], free_at[j]);
        double s = in.sigma[rank++];
        out[i] = {in.t[i], J, J + s, static_cast<int>(j)};
        free_at[j] = J + s;
    }
    return out;
}

// sorted per-server residual work at time t; equals the Kiefer-Wolfowitz
// vector once the system is FCFS (waiting work is pre-allocated to the
// server that will run it)
inline WorkloadVector switched_workload_at(const std::vector<ScheduledCustomer>& sched, int c,
                                           double t) {
    std::vector<double> w(static_cast<std::size_t>(c), 0.0);
    for (const auto& s : sched)
        if (s.t <= t)
            w[static_cast<std::size_t>(s.server)] += std::max(0.0, s.D - std::max(s.J, t));
    std::sort(w.begin(), w.end());
    return WorkloadVector::from_sorted(std::move(w));
}

}  // namespace mgcq::testing
