#include "trajscan/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace trajscan {

double arclength(std::span<const Point> waypoints) {
    double total = 0.0;
    for (std::size_t i = 1; i < waypoints.size(); ++i) total += distance(waypoints[i - 1], waypoints[i]);
    return total;
}

double arclength(const Trajectory& t) { return arclength(t.waypoints); }

Point point_at_arclength(std::span<const Point> waypoints, double s) {
    if (waypoints.size() == 1 || s <= 0.0) return waypoints.front();
    for (std::size_t i = 1; i < waypoints.size(); ++i) {
        const double seg = distance(waypoints[i - 1], waypoints[i]);
        if (s <= seg) {
            if (seg == 0.0) return waypoints[i];
            return waypoints[i - 1] + (s / seg) * (waypoints[i] - waypoints[i - 1]);
        }
        s -= seg;
    }
    return waypoints.back();
}

Shape AffineTransform::forward(const Shape& s) const {
    if (const auto* h = std::get_if<Halfplane>(&s)) {
        // n.p <= c  <=>  n.q <= scale c + n.t  for q = scale p + t
        return Halfplane{h->normal, scale * h->offset + dot(h->normal, translate)};
    }
    if (const auto* d = std::get_if<Disk>(&s)) return Disk{forward(d->center), scale * d->radius};
    const auto& r = std::get<Rect>(s);
    const Point lo = forward(Point{r.x_lo, r.y_lo});
    const Point hi = forward(Point{r.x_hi, r.y_hi});
    return Rect{lo.x, hi.x, lo.y, hi.y};
}

Shape AffineTransform::inverse(const Shape& s) const {
    if (const auto* h = std::get_if<Halfplane>(&s)) {
        return Halfplane{h->normal, (h->offset - dot(h->normal, translate)) / scale};
    }
    if (const auto* d = std::get_if<Disk>(&s)) return Disk{inverse(d->center), d->radius / scale};
    const auto& r = std::get<Rect>(s);
    const Point lo = inverse(Point{r.x_lo, r.y_lo});
    const Point hi = inverse(Point{r.x_hi, r.y_hi});
    return Rect{lo.x, hi.x, lo.y, hi.y};
}

std::size_t TrajectoryDataset::recorded_count() const {
    return static_cast<std::size_t>(
        std::count_if(trajectories.begin(), trajectories.end(), [](const Trajectory& t) { return t.recorded > 0.0; }));
}

double TrajectoryDataset::total_recorded() const {
    double s = 0.0;
    for (const auto& t : trajectories) s += t.recorded;
    return s;
}

double TrajectoryDataset::total_baseline() const {
    double s = 0.0;
    for (const auto& t : trajectories) s += t.baseline;
    return s;
}

std::size_t TrajectoryDataset::waypoint_count() const {
    std::size_t n = 0;
    for (const auto& t : trajectories) n += t.waypoints.size();
    return n;
}

void validate(const TrajectoryDataset& dataset) {
    for (const auto& t : dataset.trajectories) {
        if (t.waypoints.empty())
            throw std::invalid_argument("trajectory " + std::to_string(t.id) + " has no waypoints");
        for (const Point& p : t.waypoints) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y))
                throw std::invalid_argument("trajectory " + std::to_string(t.id) + " has a non-finite waypoint");
        }
    }
}

TrajectoryDataset normalize(const TrajectoryDataset& dataset) {
    if (dataset.trajectories.empty()) throw std::invalid_argument("normalize: empty dataset");
    validate(dataset);
    constexpr double inf = std::numeric_limits<double>::infinity();
    Point lo{inf, inf};
    Point hi{-inf, -inf};
    for (const auto& t : dataset.trajectories) {
        for (const Point& p : t.waypoints) {
            lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
            hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
        }
    }
    const double extent = std::max(hi.x - lo.x, hi.y - lo.y);
    if (!(extent > 0.0)) throw std::invalid_argument("normalize: zero extent (all waypoints identical)");

    AffineTransform step;
    step.scale = 1.0 / extent;
    step.translate = Point{-lo.x * step.scale, -lo.y * step.scale};

    TrajectoryDataset out = dataset;
    for (auto& t : out.trajectories) {
        for (Point& p : t.waypoints) {
            p = step.forward(p);
            p = {std::clamp(p.x, 0.0, 1.0), std::clamp(p.y, 0.0, 1.0)};
        }
    }
    out.transform.scale = dataset.transform.scale * step.scale;
    out.transform.translate = step.scale * dataset.transform.translate + step.translate;
    return out;
}

std::size_t LabeledPointSet::max_k() const {
    std::size_t k = 0;
    for (const auto& [id, count] : per_traj_k) k = std::max(k, count);
    return k;
}

}  // namespace trajscan
