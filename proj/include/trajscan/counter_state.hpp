#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "trajscan/discrepancy.hpp"

namespace trajscan {

/// Per-trajectory counts of points inside the swept shape over a prepared
/// full-model sample. r and b hold the summed weights of trajectories with a
/// nonzero count and change only on 0 <-> nonzero transitions.
struct CounterState {
    const PreparedSample* sample = nullptr;
    std::vector<std::uint32_t> counts;
    double r = 0.0;
    double b = 0.0;

    explicit CounterState(const PreparedSample& s) : sample(&s), counts(s.trajectory_count(), 0) {}

    void add(std::uint32_t point) {
        const std::uint32_t t = sample->traj[point];
        if (counts[t]++ == 0) {
            r += sample->traj_r[t];
            b += sample->traj_b[t];
        }
    }
    void remove(std::uint32_t point) {
        const std::uint32_t t = sample->traj[point];
        if (--counts[t] == 0) {
            r -= sample->traj_r[t];
            b -= sample->traj_b[t];
        }
    }
    void reset() {
        std::fill(counts.begin(), counts.end(), 0u);
        r = b = 0.0;
    }
};

}  // namespace trajscan
