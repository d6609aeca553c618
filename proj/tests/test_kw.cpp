#include <doctest.h>

#include "mgcq/kw.hpp"
#include "mgcq/rng.hpp"

using namespace mgcq;

namespace {

WorkloadVector wv(std::vector<double> v) { return WorkloadVector::from_sorted(std::move(v)); }

WorkloadVector random_vector(RandomStream& rng, int c) {
    std::vector<double> v;
    for (int i = 0; i < c; ++i) v.push_back(rng.uniform() < 0.2 ? 0.0 : 3.0 * rng.uniform());
    std::sort(v.begin(), v.end());
    return WorkloadVector::from_sorted(std::move(v));
}

}  // namespace

TEST_CASE("arrival recursion, worked examples") {
    CHECK(kw_update(wv({1, 3}), 2.0, 1.5) == wv({1.5, 1.5}));
    CHECK(kw_update(wv({0, 0}), 0.0, 7.0) == wv({0, 0}));
    CHECK(kw_update(wv({2, 5}), 1.0, 4.0) == wv({0, 1}));
}

TEST_CASE("decay, worked examples") {
    CHECK(kw_decay(wv({1, 2.5}), 1.0) == wv({0, 1.5}));
    CHECK(kw_decay(wv({0.25, 2, 9}), 0.0) == wv({0.25, 2, 9}));
    CHECK(kw_decay(wv({3, 4}), 10.0) == wv({0, 0}));
}

TEST_CASE("update is monotone in state and duration") {
    RandomStream rng(42);
    for (int i = 0; i < 10'000; ++i) {
        int c = 1 + static_cast<int>(rng.uniform() * 6.0);
        WorkloadVector lo = random_vector(rng, c);
        std::vector<double> hi_coords;
        for (int k = 0; k < c; ++k) hi_coords.push_back(lo[k] + rng.uniform());
        std::sort(hi_coords.begin(), hi_coords.end());
        WorkloadVector hi = wv(std::move(hi_coords));
        double s = 2.0 * rng.uniform();
        double s2 = s + rng.uniform();
        double gap = 2.0 * rng.uniform();
        CHECK(dominated_by(kw_update(lo, s, gap), kw_update(hi, s2, gap)));
    }
}

TEST_CASE("decay composes additively") {
    // dyadic inputs keep every subtraction exact, so this really is equality
    RandomStream rng(43);
    auto dyadic = [&] { return std::floor(rng.uniform() * 64.0) / 64.0; };
    for (int i = 0; i < 10'000; ++i) {
        int c = 1 + static_cast<int>(rng.uniform() * 6.0);
        std::vector<double> coords;
        for (int k = 0; k < c; ++k) coords.push_back(4.0 * dyadic());
        std::sort(coords.begin(), coords.end());
        WorkloadVector w = wv(std::move(coords));
        double a = dyadic(), b = dyadic();
        auto two_step = kw_decay(kw_decay(w, a), b);
        auto one_step = kw_decay(w, a + b);
        // equality asserted as domination both ways
        CHECK(dominated_by(two_step, one_step));
        CHECK(dominated_by(one_step, two_step));
    }
}

TEST_CASE("outputs stay sorted and non-negative under fuzzing") {
    RandomStream rng(44);
    for (int i = 0; i < 2000; ++i) {
        int c = 1 + static_cast<int>(rng.uniform() * 8.0);
        WorkloadVector w(c);
        for (int step = 0; step < 50; ++step) {
            if (rng.uniform() < 0.5)
                w = kw_update(std::move(w), 3.0 * rng.uniform(), rng.uniform());
            else
                w = kw_decay(std::move(w), 2.0 * rng.uniform());
            for (int k = 0; k < c; ++k) {
                CHECK(w[k] >= 0.0);
                if (k) CHECK(w[k - 1] <= w[k]);
            }
        }
    }
}
