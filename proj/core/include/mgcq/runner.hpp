#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mgcq/cftp.hpp"
#include "mgcq/dist.hpp"

namespace mgcq {

struct RunConfig {
    QueueParams params;
    int algorithm = 2;  // 1 or 2
    BackoffStrategy backoff = BackoffStrategy::binary;
    std::uint64_t base_seed = 0;
    int replications = 1;
    int threads = 1;
    std::uint64_t event_budget = DominatingPath::kDefaultEventBudget;
};

struct ReplicationResult {
    std::uint64_t seed = 0;  // derived per-replication root seed
    std::optional<EquilibriumSample> sample;
    std::string error;  // non-empty when the replication failed
};

// Runs `replications` independent draws on a worker pool.  Results are
// stored by replication index, so the output does not depend on thread
// count or completion order.
std::vector<ReplicationResult> run_replications(const RunConfig& cfg);

}  // namespace mgcq
