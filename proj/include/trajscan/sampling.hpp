#pragma once

#include <cstdint>
#include <vector>

#include "trajscan/coreset.hpp"

namespace trajscan {

struct SamplingParams {
    double eps = 0.1;
    double delta = 0.1;
    std::size_t k_bound = 1;
    double c_net = 1.0;
    double c_sample = 0.25;
    std::uint64_t seed = 0;
    std::size_t net_override = 0;     // nonzero: use this n instead of the formula
    std::size_t sample_override = 0;  // nonzero: use this s instead of the formula

    /// Throws std::invalid_argument unless eps, delta in (0,1), k >= 1, constants > 0.
    void validate() const;
};

/// ceil(c_net * max(1, ln k)/eps * ln(max(e, ln(k)/(eps*delta)))), or net_override.
std::size_t net_size(const SamplingParams& params);

/// ceil(c_sample / eps^2 * (ln(k+1) + ln(1/delta))), or sample_override.
std::size_t sample_size(const SamplingParams& params);

struct TwoLevelSample {
    std::vector<std::size_t> net;     // dataset indices
    std::vector<std::size_t> sample;
    LabeledPointSet net_points;
    LabeledPointSet sample_points;
    std::size_t k_bound = 1;          // max realized coreset size

    [[nodiscard]] std::size_t n() const { return net.size(); }
    [[nodiscard]] std::size_t s() const { return sample.size(); }
};

/// Uniform draws without replacement for N and S (independent streams), with
/// coresets applied per trajectory. Sizes are recomputed until k_bound covers
/// the largest realized coreset; sizes >= |T| select the whole dataset.
TwoLevelSample draw_two_level(const TrajectoryDataset& dataset, const SamplingParams& params,
                              const CoresetMethod& method);

/// Seeded permutation of 0..n-1 (Fisher-Yates).
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

}  // namespace trajscan
