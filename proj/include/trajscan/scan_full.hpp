#pragma once

#include <limits>
#include <optional>

#include "trajscan/counter_state.hpp"
#include "trajscan/sampling.hpp"
#include "trajscan/scan_point.hpp"

namespace trajscan {

/// Full-model halfplane scan: exact over closed halfplanes with a net point on
/// the boundary, each trajectory counted once.
ScanResult max_halfplane_full(const LabeledPointSet& net, const LabeledPointSet& sample, const DiscrepancyFn& fn);

/// Full-model disk scan over all net pivots (disks through two or three net
/// points, radius in window). Baseline for the multiscale scanner.
ScanResult max_disk_full(const LabeledPointSet& net, const LabeledPointSet& sample, const DiscrepancyFn& fn,
                         RadiusWindow window = {}, bool hull_trick = false);

struct RectGridParams {
    double alpha = 0.01;        // minimum spacing of grid lines
    double max_side = std::numeric_limits<double>::infinity();
    double mass_cap = 0.0;      // minimum baseline mass of a closed row/column
};

/// Full-model rectangle scan on the spatially approximated grid. Lines sit on
/// net coordinates; a new line is placed once the gap reaches alpha and the
/// column behind it carries at least mass_cap baseline mass.
ScanResult max_rect_full(const LabeledPointSet& net, const LabeledPointSet& sample, const DiscrepancyFn& fn,
                         const RectGridParams& params);

struct MultiScaleParams {
    double r_min = 1.0 / 6000.0;
    double r_max = 1.0 / 300.0;
    double alpha = 0.01;
    bool use_hull_trick = false;
    bool exact_eval = false;                 // 9x9 cell blocks instead of 5x5
    std::optional<CoresetTag> coreset;       // default: GridKernel(alpha, r) per subrange
    int levels = 0;                          // 0: derive z from r_max / r_min = 2^z

    /// Number of subranges. Without `levels`, throws unless r_max / r_min is a
    /// power of two >= 2.
    [[nodiscard]] int z() const;
    /// Radius ratio of one subrange [r, ratio * r]; 2 unless `levels` splits
    /// another window.
    [[nodiscard]] double ratio() const;
    void validate() const;
};

/// Multiscale disk scan on fixed trajectory subsets (dataset indices).
ScanResult max_disk_multiscale(const TrajectoryDataset& dataset, std::span<const std::size_t> net,
                               std::span<const std::size_t> sample, const MultiScaleParams& params,
                               const DiscrepancyFn& fn);

/// Draws N and S (coreset sizes from GridKernel at r_min), then scans.
ScanResult max_disk_multiscale(const TrajectoryDataset& dataset, const MultiScaleParams& params,
                               const SamplingParams& sampling, const DiscrepancyFn& fn);

}  // namespace trajscan
