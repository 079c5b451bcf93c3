#pragma once

#include <cstdint>
#include <limits>

#include "trajscan/coreset.hpp"
#include "trajscan/scan_result.hpp"

namespace trajscan {

/// Begin point (+r, -b) and end point (-r, +b) for every trajectory.
LabeledPointSet flux_reduce(const TrajectoryDataset& dataset);

struct PartialPoints {
    LabeledPointSet net;
    LabeledPointSet sample;
};

/// Arclength-uniform points over all trajectories; `method` is Even (chained
/// placement) or RandomSample (i.i.d. by arclength). Weights are r(t), b(t);
/// the scanners normalize by total mass.
PartialPoints partial_reduce(const TrajectoryDataset& dataset, std::size_t n_target, std::size_t s_target,
                             CoresetTag method, std::uint64_t seed);

struct RadiusWindow {
    double r_min = 0.0;
    double r_max = std::numeric_limits<double>::infinity();
    [[nodiscard]] bool admits(double r) const { return r >= r_min && r <= r_max; }
};

/// Exact maximum over closed halfplanes with a net point on the boundary.
ScanResult max_halfplane_points(const LabeledPointSet& net, const LabeledPointSet& sample, const DiscrepancyFn& fn);

/// Exact maximum over disks through two or three net points (radius in window).
ScanResult max_disk_points(const LabeledPointSet& net, const LabeledPointSet& sample, const DiscrepancyFn& fn,
                           RadiusWindow window = {});

/// Exact maximum over rectangles with sides on net coordinates. Sides longer
/// than max_side (when finite) are skipped.
ScanResult max_rect_points(const LabeledPointSet& net, const LabeledPointSet& sample, const DiscrepancyFn& fn,
                           double max_side = std::numeric_limits<double>::infinity());

}  // namespace trajscan
