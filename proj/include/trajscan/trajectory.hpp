#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "trajscan/geom.hpp"

namespace trajscan {

using TrajId = std::int64_t;

struct Trajectory {
    TrajId id = 0;
    std::vector<Point> waypoints;
    double recorded = 0.0;  // r(t), 0 or 1
    double baseline = 1.0;  // b(t)
};

double arclength(const Trajectory& t);
double arclength(std::span<const Point> waypoints);

/// Point at arclength `s` along the polyline (clamped to [0, L]).
Point point_at_arclength(std::span<const Point> waypoints, double s);

/// Uniform scale + translation from original to normalized coordinates.
struct AffineTransform {
    double scale = 1.0;
    Point translate{0.0, 0.0};

    [[nodiscard]] Point forward(Point p) const { return scale * p + translate; }
    [[nodiscard]] Point inverse(Point p) const { return (1.0 / scale) * (p - translate); }
    [[nodiscard]] Shape forward(const Shape& s) const;
    [[nodiscard]] Shape inverse(const Shape& s) const;
    [[nodiscard]] bool is_identity() const { return scale == 1.0 && translate == Point{0.0, 0.0}; }
};

struct TrajectoryDataset {
    std::vector<Trajectory> trajectories;
    AffineTransform transform;

    [[nodiscard]] std::size_t size() const { return trajectories.size(); }
    [[nodiscard]] std::size_t recorded_count() const;
    [[nodiscard]] double total_recorded() const;
    [[nodiscard]] double total_baseline() const;
    [[nodiscard]] std::size_t waypoint_count() const;
};

/// Rescales into [0,1]^2 with one uniform scale; composes with any existing transform.
/// Throws std::invalid_argument for an empty dataset or zero extent.
TrajectoryDataset normalize(const TrajectoryDataset& dataset);

/// Throws std::invalid_argument unless every trajectory has >= 1 finite waypoint.
void validate(const TrajectoryDataset& dataset);

struct LabeledPoint {
    Point location;
    TrajId traj_id = 0;
    double r_weight = 0.0;
    double b_weight = 0.0;
};

struct LabeledPointSet {
    std::vector<LabeledPoint> points;
    std::map<TrajId, std::size_t> per_traj_k;

    void add(const LabeledPoint& p) {
        points.push_back(p);
        ++per_traj_k[p.traj_id];
    }
    [[nodiscard]] std::size_t size() const { return points.size(); }
    [[nodiscard]] bool empty() const { return points.empty(); }
    [[nodiscard]] std::size_t max_k() const;
};

}  // namespace trajscan
