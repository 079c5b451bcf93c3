#include "trajscan/coreset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <random>
#include <stdexcept>
#include <utility>

#include "trajscan/rng.hpp"

namespace trajscan {

std::string to_string(CoresetTag tag) {
    switch (tag) {
        case CoresetTag::AllWaypoints: return "all";
        case CoresetTag::RandomSample: return "random";
        case CoresetTag::Even: return "even";
        case CoresetTag::DouglasPeucker: return "dp";
        case CoresetTag::ConvexHull: return "hull";
        case CoresetTag::ApproxHull: return "approx-hull";
        case CoresetTag::LiftedHull: return "lifted-hull";
        case CoresetTag::GridKernel: return "grid-kernel";
        case CoresetTag::Gridding: return "gridding";
    }
    return "unknown";
}

CoresetTag parse_coreset_tag(const std::string& name) {
    static const std::map<std::string, CoresetTag> names{
        {"all", CoresetTag::AllWaypoints},       {"random", CoresetTag::RandomSample},
        {"even", CoresetTag::Even},              {"dp", CoresetTag::DouglasPeucker},
        {"hull", CoresetTag::ConvexHull},        {"approx-hull", CoresetTag::ApproxHull},
        {"lifted-hull", CoresetTag::LiftedHull}, {"grid-kernel", CoresetTag::GridKernel},
        {"gridding", CoresetTag::Gridding},
        // long spellings
        {"all_waypoints", CoresetTag::AllWaypoints}, {"random_sample", CoresetTag::RandomSample},
        {"douglas_peucker", CoresetTag::DouglasPeucker}, {"convex_hull", CoresetTag::ConvexHull},
        {"approx_hull", CoresetTag::ApproxHull},     {"lifted_hull", CoresetTag::LiftedHull},
        {"grid_kernel", CoresetTag::GridKernel},
    };
    const auto it = names.find(name);
    if (it == names.end()) throw std::invalid_argument("unknown coreset method: " + name);
    return it->second;
}

void CoresetMethod::validate() const {
    const bool uses_alpha = tag != CoresetTag::AllWaypoints && tag != CoresetTag::ConvexHull &&
                            tag != CoresetTag::LiftedHull;
    if (uses_alpha && !(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("coreset alpha must lie in (0, 1)");
    if (tag == CoresetTag::GridKernel) {
        if (!(r > 0.0)) throw std::invalid_argument("grid kernel requires r > 0");
        if (!(2.0 * alpha * r - alpha * alpha / 2.0 > 0.0))
            throw std::invalid_argument("grid kernel requires 2 alpha r - alpha^2/2 > 0");
    }
    if (tag == CoresetTag::RandomSample && !(random_c > 0.0))
        throw std::invalid_argument("random sample constant must be positive");
}

GridKernelParams grid_kernel_params(double alpha, double r) {
    const double disc = 2.0 * alpha * r - alpha * alpha / 2.0;
    if (!(alpha > 0.0) || !(r > 0.0) || !(disc > 0.0))
        throw std::invalid_argument("grid kernel parameters out of domain");
    const double gamma = std::sqrt(disc);
    return {gamma, alpha / (2.0 * std::sqrt(2.0) * gamma)};
}

std::vector<Point> even_points(std::span<const Point> waypoints, double spacing, double offset) {
    const double len = arclength(waypoints);
    if (len == 0.0) return {waypoints.front()};
    std::vector<Point> out;
    // Walk segments once instead of re-locating every position.
    std::size_t seg = 1;
    double seg_start = 0.0;
    for (std::size_t i = 0;; ++i) {
        const double s = offset + static_cast<double>(i) * spacing;
        if (s >= len) break;
        while (seg + 1 < waypoints.size() && seg_start + distance(waypoints[seg - 1], waypoints[seg]) < s) {
            seg_start += distance(waypoints[seg - 1], waypoints[seg]);
            ++seg;
        }
        const Point a = waypoints[seg - 1];
        const Point b = waypoints[seg];
        const double sl = distance(a, b);
        const double u = sl > 0.0 ? std::clamp((s - seg_start) / sl, 0.0, 1.0) : 0.0;
        out.push_back(a + u * (b - a));
    }
    if (out.empty()) out.push_back(point_at_arclength(waypoints, offset));
    return out;
}

namespace {

double point_segment_distance(Point p, Point a, Point b) {
    const Point d = b - a;
    const double len2 = dot(d, d);
    if (len2 == 0.0) return distance(p, a);
    const double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
    return distance(p, a + t * d);
}

}  // namespace

std::vector<Point> douglas_peucker(std::span<const Point> waypoints, double tolerance) {
    const std::size_t m = waypoints.size();
    if (m <= 2) return {waypoints.begin(), waypoints.end()};
    std::vector<char> keep(m, 0);
    keep.front() = keep.back() = 1;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{0, m - 1}};
    while (!stack.empty()) {
        const auto [lo, hi] = stack.back();
        stack.pop_back();
        double worst = -1.0;
        std::size_t at = lo;
        for (std::size_t i = lo + 1; i < hi; ++i) {
            const double d = point_segment_distance(waypoints[i], waypoints[lo], waypoints[hi]);
            if (d > worst) {
                worst = d;
                at = i;
            }
        }
        if (worst > tolerance) {
            keep[at] = 1;
            stack.emplace_back(lo, at);
            stack.emplace_back(at, hi);
        }
    }
    std::vector<Point> out;
    for (std::size_t i = 0; i < m; ++i) {
        if (keep[i]) out.push_back(waypoints[i]);
    }
    return out;
}

std::vector<Point> random_sample_points(std::span<const Point> waypoints, double alpha, double c,
                                        std::uint64_t seed) {
    const double len = arclength(waypoints);
    if (len == 0.0) return {waypoints.front()};
    const double ratio = len / alpha;
    const auto k = static_cast<std::size_t>(std::max(1.0, std::ceil(c * ratio * std::log(ratio + 2.0))));
    Rng rng(seed);
    std::vector<double> pos(k);
    for (double& s : pos) s = rng.uniform() * len;
    std::sort(pos.begin(), pos.end());
    std::vector<Point> out;
    out.reserve(k);
    for (double s : pos) out.push_back(point_at_arclength(waypoints, s));
    return out;
}

std::vector<Point> gridding_points(std::span<const Point> waypoints, double alpha) {
    const double ell = alpha / std::sqrt(8.0);
    std::vector<Point> out;
    for (const Point& p : even_points(waypoints, alpha / 2.0)) {
        const Point snapped{(std::floor(p.x / ell) + 0.5) * ell, (std::floor(p.y / ell) + 0.5) * ell};
        if (out.empty() || !(out.back() == snapped)) out.push_back(snapped);
    }
    return out;
}

void for_each_cell_piece(Point a, Point b, double ell,
                         const std::function<void(std::int64_t, std::int64_t, Point, Point)>& fn) {
    const Point d = b - a;
    std::vector<double> cuts{0.0, 1.0};
    auto add_axis = [&](double from, double delta) {
        if (delta == 0.0) return;
        const double lo = std::min(from, from + delta);
        const double hi = std::max(from, from + delta);
        for (double k = std::floor(lo / ell) + 1.0; k * ell < hi; k += 1.0) cuts.push_back((k * ell - from) / delta);
    };
    add_axis(a.x, d.x);
    add_axis(a.y, d.y);
    std::sort(cuts.begin(), cuts.end());
    if (d.x == 0.0 && d.y == 0.0) {
        fn(static_cast<std::int64_t>(std::floor(a.x / ell)), static_cast<std::int64_t>(std::floor(a.y / ell)), a, a);
        return;
    }
    for (std::size_t i = 1; i < cuts.size(); ++i) {
        const double t0 = std::clamp(cuts[i - 1], 0.0, 1.0);
        const double t1 = std::clamp(cuts[i], 0.0, 1.0);
        if (t1 < t0) continue;
        const Point mid = a + (0.5 * (t0 + t1)) * d;
        fn(static_cast<std::int64_t>(std::floor(mid.x / ell)), static_cast<std::int64_t>(std::floor(mid.y / ell)),
           a + t0 * d, a + t1 * d);
    }
}

std::size_t grid_cells_visited(std::span<const Point> waypoints, double ell) {
    std::vector<std::pair<std::int64_t, std::int64_t>> cells;
    auto visit = [&](std::int64_t cx, std::int64_t cy, Point, Point) { cells.emplace_back(cx, cy); };
    if (waypoints.size() == 1) {
        for_each_cell_piece(waypoints[0], waypoints[0], ell, visit);
    }
    for (std::size_t i = 1; i < waypoints.size(); ++i) for_each_cell_piece(waypoints[i - 1], waypoints[i], ell, visit);
    std::sort(cells.begin(), cells.end());
    return static_cast<std::size_t>(std::unique(cells.begin(), cells.end()) - cells.begin());
}

std::vector<Point> simplify_grid_kernel(std::span<const Point> waypoints, double alpha, double r) {
    const GridKernelParams gk = grid_kernel_params(alpha, r);
    if (waypoints.size() == 1) return {waypoints.front()};

    // Per cell, the hull of the curve inside it is the hull of the clipped
    // piece endpoints; cells keep first-visit order.
    std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> slot;
    std::vector<std::vector<Point>> per_cell;
    auto visit = [&](std::int64_t cx, std::int64_t cy, Point p0, Point p1) {
        auto [it, inserted] = slot.try_emplace({cx, cy}, per_cell.size());
        if (inserted) per_cell.emplace_back();
        auto& bucket = per_cell[it->second];
        bucket.push_back(p0);
        bucket.push_back(p1);
    };
    for (std::size_t i = 1; i < waypoints.size(); ++i) for_each_cell_piece(waypoints[i - 1], waypoints[i], gk.gamma, visit);

    // Neighboring cells share the crossing point; keep it once.
    std::vector<Point> out;
    std::set<std::pair<double, double>> seen;
    for (const auto& bucket : per_cell) {
        for (Point p : alpha_kernel(bucket, gk.kernel_err))
            if (seen.insert({p.x, p.y}).second) out.push_back(p);
    }
    return out;
}

std::vector<Point> simplify(const Trajectory& t, const CoresetMethod& method) {
    method.validate();
    const std::span<const Point> wp = t.waypoints;
    if (wp.empty()) throw std::invalid_argument("simplify: trajectory without waypoints");
    if (wp.size() == 1) return {wp.front()};
    switch (method.tag) {
        case CoresetTag::AllWaypoints: return {wp.begin(), wp.end()};
        case CoresetTag::RandomSample:
            return random_sample_points(wp, method.alpha, method.random_c,
                                        mix_seed(method.seed, static_cast<std::uint64_t>(t.id)));
        case CoresetTag::Even: return even_points(wp, method.alpha);
        case CoresetTag::DouglasPeucker: return douglas_peucker(wp, method.alpha);
        case CoresetTag::ConvexHull: return convex_hull(wp);
        case CoresetTag::ApproxHull: return alpha_kernel(wp, method.alpha);
        case CoresetTag::LiftedHull: {
            std::vector<Point> out;
            for (std::size_t i : lifted_hull_indices(wp)) out.push_back(wp[i]);
            return out;
        }
        case CoresetTag::GridKernel: return simplify_grid_kernel(wp, method.alpha, method.r);
        case CoresetTag::Gridding: return gridding_points(wp, method.alpha);
    }
    throw std::logic_error("unhandled coreset method");
}

LabeledPointSet chain_even(const TrajectoryDataset& dataset, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("chain_even: alpha must be positive");
    LabeledPointSet out;
    // Sequential prefix pass: the first position on each trajectory continues
    // the global spacing from the previous one.
    double next = 0.0;  // chain position of the next point
    double start = 0.0;
    for (const auto& t : dataset.trajectories) {
        const double len = arclength(t);
        if (len > 0.0) {
            for (const Point& p : even_points(t.waypoints, alpha, next - start)) {
                if (next - start >= len) break;
                out.add(LabeledPoint{p, t.id, t.recorded, t.baseline});
                next += alpha;
            }
        }
        start += len;
        while (next < start) next += alpha;
    }
    return out;
}

LabeledPointSet coreset_points(const TrajectoryDataset& dataset, std::span<const std::size_t> subset,
                               const CoresetMethod& method) {
    LabeledPointSet out;
    for (std::size_t idx : subset) {
        const Trajectory& t = dataset.trajectories.at(idx);
        for (const Point& p : simplify(t, method)) out.add(LabeledPoint{p, t.id, t.recorded, t.baseline});
    }
    return out;
}

}  // namespace trajscan
