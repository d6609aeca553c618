#include "mgcq/runner.hpp"

#include <atomic>
#include <thread>

namespace mgcq {

std::vector<ReplicationResult> run_replications(const RunConfig& cfg) {
    cfg.params.validate();
    std::vector<ReplicationResult> results(static_cast<std::size_t>(cfg.replications));

    auto work_one = [&](int i) {
        auto& r = results[static_cast<std::size_t>(i)];
        r.seed = substream_seed(cfg.base_seed, static_cast<std::uint64_t>(i),
                                StreamPurpose::replication);
        try {
            if (cfg.algorithm == 1)
                r.sample = algorithm1(cfg.params, r.seed, cfg.event_budget);
            else
                r.sample = algorithm2(cfg.params, r.seed, cfg.backoff, cfg.event_budget);
        } catch (const std::exception& e) {
            r.error = e.what();
        }
    };

    int workers = std::max(1, std::min(cfg.threads, cfg.replications));
    if (workers == 1) {
        for (int i = 0; i < cfg.replications; ++i) work_one(i);
        return results;
    }

    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            while (true) {
                int i = next.fetch_add(1);
                if (i >= cfg.replications) break;
                work_one(i);
            }
        });
    for (auto& t : pool) t.join();
    return results;
}

}  // namespace mgcq
