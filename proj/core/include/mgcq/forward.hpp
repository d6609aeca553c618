#pragma once

#include <limits>
#include <span>
#include <vector>

#include "mgcq/dominate.hpp"
#include "mgcq/kw.hpp"

namespace mgcq {

// (arrival, initiation, duration) triple as carried by the sandwich lists
struct ServiceEntry {
    double t;
    double J;
    double S;
    int server = 0;
};

struct CustomerSchedule {
    double t;
    double J;
    double D;
    double S;
};

// Single-server FCFS replay: J_i = max(t_i, D_{i-1}), D_i = J_i + S_i.
// d_prev continues a previous replay of the same server.
std::vector<CustomerSchedule> replay_mg1_fcfs(
    std::span<const ForwardArrival> arrivals,
    double d_prev = -std::numeric_limits<double>::infinity());

struct FedArrival {
    double t;
    double S;
};

// Event-time record of an M/G/c FCFS run; the workload trajectory is
// piecewise linear between arrivals, so the vector at any time is exact.
struct FcfsTrace {
    std::vector<double> arrivals;            // t_m, non-decreasing
    std::vector<double> initiations;         // J_m per arrival
    std::vector<double> departures;          // D_m per arrival
    std::vector<WorkloadVector> after;       // V(t_m+), one per arrival
    std::vector<double> sorted_departures;   // departures, ascending
    WorkloadVector initial;                  // V(t0)
    WorkloadVector final_vector;
    double start_time;
    double end_time;

    explicit FcfsTrace(int c) : initial(c), final_vector(c), start_time(0), end_time(0) {}

    int count_at(double t) const;            // customers in system at time t
    WorkloadVector vector_at(double t) const;
};

// Evolve the Kiefer-Wolfowitz vector over [t0, t1] from `start`, feeding
// arrivals with attached durations.  The feed must be sorted by arrival
// time; simultaneous arrivals are served in list order, so attaching the
// m-th duration to the m-th arrival realises assignment by order of
// initiation of service.  Feed entries beyond t1 are ignored.
FcfsTrace run_mgc_fcfs(int c, std::span<const FedArrival> feed, WorkloadVector start,
                       double t0, double t1);

// Durations listed by initiation time, ties broken by arrival time then
// server index; the sort is stable.
std::vector<double> reorder_by_initiation(std::vector<ServiceEntry> entries);

}  // namespace mgcq
