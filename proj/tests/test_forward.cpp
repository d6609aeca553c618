#include <doctest.h>

#include <vector>

#include "mgcq/forward.hpp"
#include "support/properties.hpp"

using namespace mgcq;
using namespace mgcq::testing;

TEST_CASE("single-server replay") {
    std::vector<ForwardArrival> a{{0.0, 1.0}, {0.5, 1.0}};
    auto sched = replay_mg1_fcfs(a);
    REQUIRE(sched.size() == 2);
    CHECK(sched[0].J == 0.0);
    CHECK(sched[0].D == 1.0);
    CHECK(sched[1].J == 1.0);
    CHECK(sched[1].D == 2.0);

    std::vector<ForwardArrival> single{{0.0, 3.0}};
    auto s1 = replay_mg1_fcfs(single);
    CHECK(s1[0].J == 0.0);
    CHECK(s1[0].D == 3.0);

    std::vector<ForwardArrival> zeros{{0.2, 0.0}, {0.9, 0.0}, {1.4, 0.0}};
    for (const auto& s : replay_mg1_fcfs(zeros)) {
        CHECK(s.J == s.t);
        CHECK(s.D == s.t);
    }
}

TEST_CASE("multi-server run, worked examples") {
    std::vector<FedArrival> feed{{0.0, 2.0}, {0.5, 2.0}};
    auto tr = run_mgc_fcfs(2, feed, WorkloadVector(2), 0.0, 3.0);
    auto at1 = tr.vector_at(1.0);
    CHECK(at1[0] == 1.0);
    CHECK(at1[1] == 1.5);
    REQUIRE(tr.sorted_departures.size() == 2);
    CHECK(tr.sorted_departures[0] == 2.0);
    CHECK(tr.sorted_departures[1] == 2.5);
    CHECK(tr.count_at(0.7) == 2);
    CHECK(tr.count_at(2.2) == 1);
    CHECK(tr.count_at(2.6) == 0);

    std::vector<FedArrival> serial{{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}};
    auto tr1 = run_mgc_fcfs(1, serial, WorkloadVector(1), 0.0, 5.0);
    for (int m = 0; m < 3; ++m) {
        CHECK(tr1.initiations[static_cast<std::size_t>(m)] == m);
        CHECK(tr1.departures[static_cast<std::size_t>(m)] == m + 1);
    }

    auto start = WorkloadVector::from_sorted({0.5, 2.0});
    auto empty_tr = run_mgc_fcfs(2, {}, start, 1.0, 2.2);
    CHECK(empty_tr.final_vector == kw_decay(start, 2.2 - 1.0));
    CHECK(empty_tr.arrivals.empty());
}

TEST_CASE("reordering durations by initiation") {
    std::vector<ServiceEntry> es{{0.0, 3.0, 10.0, 0}, {0.1, 1.0, 11.0, 0}, {0.2, 2.0, 12.0, 0}};
    auto d = reorder_by_initiation(es);
    CHECK(d == std::vector<double>{11.0, 12.0, 10.0});

    std::vector<ServiceEntry> sorted{{0.0, 0.5, 1.0, 0}, {0.1, 0.7, 2.0, 0}};
    CHECK(reorder_by_initiation(sorted) == std::vector<double>{1.0, 2.0});

    // equal initiations keep arrival order (stable tie-break)
    std::vector<ServiceEntry> tied{{0.2, 1.0, 5.0, 1}, {0.1, 1.0, 6.0, 0}};
    CHECK(reorder_by_initiation(tied) == std::vector<double>{6.0, 5.0});
}

TEST_CASE("longer durations delay every initiation and departure") {
    CHECK(duration_monotonicity_violations(101, 1000) == 0);
}

TEST_CASE("delayed schedules never lower the customer count") {
    CHECK(count_domination_violations(102, 1000) == 0);
}

TEST_CASE("earlier switch to FCFS dominates, four cases") {
    CHECK(switch_domination_violations(103, 1000) == 0);
}
