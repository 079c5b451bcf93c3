#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "trajscan/trajectory.hpp"

namespace trajscan {

enum class CoresetTag {
    AllWaypoints,
    RandomSample,
    Even,
    DouglasPeucker,
    ConvexHull,
    ApproxHull,
    LiftedHull,
    GridKernel,
    Gridding,
};

std::string to_string(CoresetTag tag);
CoresetTag parse_coreset_tag(const std::string& name);

struct CoresetMethod {
    CoresetTag tag = CoresetTag::AllWaypoints;
    double alpha = 0.01;
    double r = 0.0;            // GridKernel only
    double random_c = 1.0;     // RandomSample size constant
    std::uint64_t seed = 0;    // RandomSample only

    /// Throws std::invalid_argument on a bad parameter combination.
    void validate() const;
};

struct GridKernelParams {
    double gamma = 0.0;
    double kernel_err = 0.0;
};

/// Cell edge and per-cell kernel tolerance for disks of radius >= r.
GridKernelParams grid_kernel_params(double alpha, double r);

/// Points at arclength offset, offset + spacing, ... strictly before L (at least
/// one point when the trajectory has zero length).
std::vector<Point> even_points(std::span<const Point> waypoints, double spacing, double offset = 0.0);

std::vector<Point> douglas_peucker(std::span<const Point> waypoints, double tolerance);

std::vector<Point> random_sample_points(std::span<const Point> waypoints, double alpha, double c,
                                        std::uint64_t seed);

std::vector<Point> gridding_points(std::span<const Point> waypoints, double alpha);

std::vector<Point> simplify_grid_kernel(std::span<const Point> waypoints, double alpha, double r);

/// P'_t for one trajectory.
std::vector<Point> simplify(const Trajectory& t, const CoresetMethod& method);

/// Even placement with the arclength residual carried across trajectories in
/// dataset order. Weights are r(t), b(t).
LabeledPointSet chain_even(const TrajectoryDataset& dataset, double alpha);

/// Coresets for every trajectory in `subset` (indices into the dataset).
LabeledPointSet coreset_points(const TrajectoryDataset& dataset, std::span<const std::size_t> subset,
                               const CoresetMethod& method);

/// Visits the pieces of segment a-b cut by an ell-edge grid, in order along the
/// segment: fn(cell_x, cell_y, piece_start, piece_end).
void for_each_cell_piece(Point a, Point b, double ell,
                         const std::function<void(std::int64_t, std::int64_t, Point, Point)>& fn);

/// Number of distinct ell-cells the polyline enters.
std::size_t grid_cells_visited(std::span<const Point> waypoints, double ell);

}  // namespace trajscan
