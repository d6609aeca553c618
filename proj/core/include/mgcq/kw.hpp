#pragma once

#include <algorithm>
#include <cassert>
#include <numeric>
#include <span>
#include <vector>

namespace mgcq {

// Sorted c-vector of residual server workloads.  Entries are plain doubles;
// clamping produces exact 0.0, which is what makes coalescence detectable
// by bit-exact comparison.
class WorkloadVector {
public:
    explicit WorkloadVector(int c) : v_(static_cast<std::size_t>(c), 0.0) { assert(c >= 1); }

    static WorkloadVector from_sorted(std::vector<double> v) {
        assert(!v.empty());
        assert(std::is_sorted(v.begin(), v.end()));
        assert(v.front() >= 0.0);
        WorkloadVector w(static_cast<int>(v.size()));
        w.v_ = std::move(v);
        return w;
    }

    int servers() const { return static_cast<int>(v_.size()); }
    double operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }
    std::span<const double> coords() const { return v_; }

    double total() const { return std::accumulate(v_.begin(), v_.end(), 0.0); }
    int busy_servers() const {
        return static_cast<int>(std::count_if(v_.begin(), v_.end(),
                                              [](double x) { return x > 0.0; }));
    }
    bool all_idle() const { return v_.back() == 0.0; }

    friend bool operator==(const WorkloadVector&, const WorkloadVector&) = default;

    friend WorkloadVector kw_update(WorkloadVector w, double s, double t_gap);
    friend WorkloadVector kw_decay(WorkloadVector w, double dt);

private:
    std::vector<double> v_;
};

// One step of the arrival recursion: add s to the smallest coordinate,
// subtract t_gap from all, re-sort, clamp at zero.  Only the modified first
// coordinate can move, so re-sorting is a single insertion pass.
inline WorkloadVector kw_update(WorkloadVector w, double s, double t_gap) {
    assert(s >= 0.0 && t_gap >= 0.0);
    auto& v = w.v_;
    double x = v[0] + s;
    std::size_t i = 0;
    while (i + 1 < v.size() && v[i + 1] < x) {
        v[i] = v[i + 1];
        ++i;
    }
    v[i] = x;
    for (auto& e : v) e = std::max(0.0, e - t_gap);
    return w;
}

// Continuous decay between arrivals; ordering is preserved automatically.
inline WorkloadVector kw_decay(WorkloadVector w, double dt) {
    assert(dt >= 0.0);
    for (auto& e : w.v_) e = std::max(0.0, e - dt);
    return w;
}

// coordinate-wise lo <= hi
inline bool dominated_by(const WorkloadVector& lo, const WorkloadVector& hi) {
    assert(lo.servers() == hi.servers());
    for (int i = 0; i < lo.servers(); ++i)
        if (lo[i] > hi[i]) return false;
    return true;
}

}  // namespace mgcq
