#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mgcq/dominate.hpp"
#include "mgcq/forward.hpp"
#include "mgcq/kw.hpp"

namespace mgcq {

struct Diagnostics {
    int algorithm = 0;
    double horizon = 0.0;  // tau-hat (algorithm 1) or final T-hat (algorithm 2)
    int backoff_rounds = 0;
    std::uint64_t events = 0;
    double wall_us = 0.0;
};

struct EquilibriumSample {
    WorkloadVector workload;
    int count = 0;
    Diagnostics diag;
};

enum class BackoffStrategy { binary, stopping_time };

// All (t, J, S) triples seen by the forward dominating process: per-server
// replays of the reversed departures over [-tau_hat_j, 0] plus fresh
// arrivals on (0, t_plus], where t_plus is the time by which every customer
// present at zero has initiated service.
std::vector<ServiceEntry> collect_entries(DominatingPath& path,
                                          std::span<const double> tau_hats);

struct SandwichLists {
    std::vector<ServiceEntry> l_star;  // t <= T, transformed to (T, J v T, residual)
    std::vector<ServiceEntry> l_post;  // t > T, untouched
};

// Split entries at T and apply the residual transform to the early part;
// both halves come out ordered by initiation time.
SandwichLists split_and_transform(std::vector<ServiceEntry> entries, double T);

// Full list construction from a dominating path: replays, t_plus extension,
// split at T.  Requires tau_hats[j] >= -T for every server.
SandwichLists build_lists(DominatingPath& path, std::span<const double> tau_hats, double T);

struct EnvelopePair {
    WorkloadVector upper;
    WorkloadVector lower;
    FcfsTrace upper_trace;
    FcfsTrace lower_trace;
};

// Both envelopes run M/G/c FCFS from empty at T over the same feed; the
// lower one zeroes every duration that originated in l_star.
EnvelopePair run_envelopes(const SandwichLists& lists, int c, double T);

// exact coordinate-wise floating-point equality; no tolerance by design
bool coalesced(const WorkloadVector& u, const WorkloadVector& l);

struct Algorithm1Debug {
    double tau_hat = 0.0;
    std::vector<ServiceEntry> entries;
    std::optional<FcfsTrace> target_trace;
};

EquilibriumSample algorithm1(const QueueParams& p, std::uint64_t seed,
                             std::uint64_t event_budget = DominatingPath::kDefaultEventBudget,
                             Algorithm1Debug* debug = nullptr,
                             std::ostream* event_dump = nullptr);

struct Algorithm2Round {
    double T = 0.0;
    std::vector<ServiceEntry> entries;
    SandwichLists lists;
    EnvelopePair envelopes;
};

using Algorithm2Observer = std::function<void(const Algorithm2Round&)>;

EquilibriumSample algorithm2(const QueueParams& p, std::uint64_t seed,
                             BackoffStrategy backoff = BackoffStrategy::binary,
                             std::uint64_t event_budget = DominatingPath::kDefaultEventBudget,
                             double initial_backoff = 1.0,
                             const Algorithm2Observer& observer = {},
                             std::ostream* event_dump = nullptr);

}  // namespace mgcq
