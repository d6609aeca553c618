#include <doctest.h>

#include <cmath>
#include <vector>

#include "mgcq/dominate.hpp"

using namespace mgcq;

namespace {
const QueueParams kHalf{10.0, 10, ServiceDistribution::exponential(2.0)};  // rho/c = 1/2
}

TEST_CASE("equilibrium state construction") {
    // forced draws, by hand
    double totals[] = {1.0, 2.0};
    double fractions[] = {0.5, 0.25};
    auto s = make_ps_state(totals, fractions);
    REQUIRE(s.customers.size() == 2);
    CHECK(s.customers[0].residual == 0.5);
    CHECK(s.customers[0].total == 1.0);
    CHECK(s.customers[1].residual == 0.5);
    CHECK(s.customers[1].total == 2.0);

    auto empty = make_ps_state({}, {});
    CHECK(empty.empty());

    // geometric pmf at zero is 1 - rho/c
    RandomStream rng(7);
    int empties = 0;
    const int n = 100'000;
    for (int i = 0; i < n; ++i)
        if (make_equilibrium_server(kHalf, rng).empty()) ++empties;
    CHECK(std::abs(static_cast<double>(empties) / n - 0.5) < 0.005);
}

TEST_CASE("processor-sharing event stepping") {
    auto dist = ServiceDistribution::exponential(1.0);
    RandomStream rng(1);

    // single customer, arrivals suppressed: unit-rate service
    double t1[] = {1.0};
    double f1[] = {1.0};
    auto s = make_ps_state(t1, f1);
    auto e = next_event(s, 0.0, dist, rng);
    CHECK(e.kind == PSEvent::departure);
    CHECK(e.elapsed == 1.0);
    CHECK(e.duration == 1.0);
    CHECK(s.empty());

    // two customers share the server: drain at rate 1/2 each
    double t2[] = {1.0, 2.0};
    double f2[] = {1.0, 1.0};
    s = make_ps_state(t2, f2);
    e = next_event(s, 0.0, dist, rng);
    CHECK(e.kind == PSEvent::departure);
    CHECK(e.elapsed == 2.0);
    CHECK(e.duration == 1.0);
    e = next_event(s, 0.0, dist, rng);
    CHECK(e.elapsed == 1.0);
    CHECK(e.duration == 2.0);

    // empty server: next event is an arrival
    s = make_ps_state({}, {});
    e = next_event(s, 5.0, dist, rng);
    CHECK(e.kind == PSEvent::arrival);
    CHECK(e.elapsed > 0.0);
    CHECK(std::isfinite(e.elapsed));
}

TEST_CASE("path log is append-only and strictly ordered") {
    DominatingPath a(kHalf, 99);
    DominatingPath b(kHalf, 99);
    for (int j = 0; j < kHalf.servers; ++j) {
        a.extend_until_empty_at(j, 2.0);
        b.extend_until_empty_at(j, 4.0);
    }
    for (int j = 0; j < kHalf.servers; ++j) {
        const auto& la = a.log(j);
        const auto& lb = b.log(j);
        REQUIRE(lb.size() >= la.size());
        for (std::size_t i = 0; i < la.size(); ++i) {
            CHECK(la[i].t_hat == lb[i].t_hat);
            CHECK(la[i].kind == lb[i].kind);
            CHECK(la[i].duration == lb[i].duration);
            if (i) CHECK(la[i].t_hat > la[i - 1].t_hat);
        }
    }
}

TEST_CASE("servers use disjoint substreams") {
    DominatingPath a(kHalf, 123);
    DominatingPath b(kHalf, 123);
    a.extend_until_empty_at(0, 1.0);
    b.extend_until_empty_at(0, 1.0);
    b.extend_until_empty_at(5, 50.0);  // stretch another server far out
    a.extend_until_empty_at(0, 3.0);
    b.extend_until_empty_at(0, 3.0);
    const auto& la = a.log(0);
    const auto& lb = b.log(0);
    REQUIRE(la.size() == lb.size());
    for (std::size_t i = 0; i < la.size(); ++i) CHECK(la[i].t_hat == lb[i].t_hat);
}

TEST_CASE("emptying queries") {
    DominatingPath p(kHalf, 5);
    for (int j = 0; j < kHalf.servers; ++j) {
        double tau = p.extend_until_empty_at(j, 1.5);
        CHECK(tau >= 1.5);
        double next = p.next_emptying_after(j, tau);
        CHECK(next > tau);
    }
    double all = p.first_all_empty();
    CHECK(all >= 0.0);
    // at the returned instant every server must have an emptying at or before
    for (int j = 0; j < kHalf.servers; ++j)
        CHECK(p.extend_until_empty_at(j, all) == all);
}

TEST_CASE("initially empty path reports immediate emptiness without events") {
    // hunt for a seed whose equilibrium draw is empty on both servers
    QueueParams tiny{0.01, 2, ServiceDistribution::exponential(1.0)};
    for (std::uint64_t seed = 0;; ++seed) {
        DominatingPath p(tiny, seed);
        if (!p.initial_state(0).empty() || !p.initial_state(1).empty()) continue;
        CHECK(p.first_all_empty() == 0.0);
        CHECK(p.events_simulated() == 0);
        break;
    }
}

TEST_CASE("reversal flips departures into sorted forward arrivals") {
    DominatingPath p(kHalf, 31);
    double tau = p.extend_until_empty_at(3, 5.0);
    auto fwd = p.forward_arrivals(3, tau);

    std::vector<ReversedEvent> deps;
    for (const auto& e : p.log(3))
        if (e.kind == PSEvent::departure && e.t_hat <= tau) deps.push_back(e);
    REQUIRE(fwd.size() == deps.size());
    for (std::size_t i = 0; i < fwd.size(); ++i) {
        // round trip: i-th forward arrival is the i-th-from-last departure
        const auto& d = deps[deps.size() - 1 - i];
        CHECK(fwd[i].t == -d.t_hat);
        CHECK(fwd[i].duration == d.duration);
        if (i) CHECK(fwd[i].t > fwd[i - 1].t);
    }

    CHECK(p.forward_arrivals(3, 0.0).empty());

    // departures carry full durations: every one matches an arrival draw or
    // an initial customer's total
    std::vector<double> sources;
    for (const auto& c : p.initial_state(3).customers) sources.push_back(c.total);
    for (const auto& e : p.log(3))
        if (e.kind == PSEvent::arrival) sources.push_back(e.duration);
    for (const auto& d : deps) {
        bool found = false;
        for (double s : sources) found = found || s == d.duration;
        CHECK(found);
    }
}

TEST_CASE("forward extension caches prefixes") {
    DominatingPath p(kHalf, 77);
    CHECK(p.extend_forward(2, 0.0).empty());
    auto first = p.extend_forward(2, 5.0);
    std::vector<ForwardArrival> copy(first.begin(), first.end());
    auto second = p.extend_forward(2, 10.0);
    REQUIRE(second.size() >= copy.size());
    for (std::size_t i = 0; i < copy.size(); ++i) {
        CHECK(second[i].t == copy[i].t);
        CHECK(second[i].duration == copy[i].duration);
    }
    for (const auto& a : second) {
        CHECK(a.t > 0.0);
        CHECK(a.t <= 10.0);
    }

    // Poisson(1) count over a long horizon
    QueueParams unit{1.0, 1, ServiceDistribution::exponential(4.0)};
    DominatingPath q(unit, 3);
    auto many = q.extend_forward(0, 10'000.0);
    CHECK(std::abs(static_cast<double>(many.size()) - 10'000.0) < 3.0 * 100.0);
}

TEST_CASE("event budget converts runaway simulations into errors") {
    DominatingPath p(kHalf, 11, 25);
    CHECK_THROWS_AS(
        [&] {
            for (int j = 0; j < kHalf.servers; ++j) p.extend_until_empty_at(j, 100.0);
        }(),
        budget_exceeded);
}
