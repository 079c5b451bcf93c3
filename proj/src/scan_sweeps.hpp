#pragma once

// Halfplane and pivot-disk sweeps shared by the point and full-model scanners.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "scan_core.hpp"
#include "trajscan/scan_point.hpp"

namespace trajscan::detail {

inline std::vector<Point> distinct_locations(const LabeledPointSet& set) {
    std::vector<Point> pts;
    pts.reserve(set.size());
    for (const auto& p : set.points) pts.push_back(p.location);
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

template <class Acc>
inline void consider(ScanResult& best, const Shape& shape, const Acc& acc, const DiscrepancyFn& fn) {
    const double phi = fn(acc.r, acc.b);
    if (best.found && phi < best.stats.phi) {
        ++best.candidates;
        return;
    }
    ScanResult c;
    c.shape = shape;
    c.stats = {acc.r, acc.b, phi};
    c.found = true;
    c.candidates = 1;
    merge_into(best, c);
}

/// Rotating-halfplane scan about every pivot.
template <class Acc>
ScanResult halfplane_scan(const std::vector<Point>& pivots, const PreparedSample& prep, const DiscrepancyFn& fn) {
    std::vector<SweepItem> items(prep.size());
    for (std::uint32_t i = 0; i < prep.size(); ++i) items[i] = {prep.location[i], i};

    const unsigned slots = std::max(1u, thread_count());
    std::vector<ScanResult> best(slots);
    std::vector<std::optional<Acc>> accs(slots);
    std::vector<SweepScratch> scratch(slots);

    parallel_for(pivots.size(), [&](std::size_t t, unsigned w) {
        if (!accs[w]) accs[w].emplace(prep);
        Acc& acc = *accs[w];
        acc.r = acc.b = 0.0;  // drop rounding residue so results do not depend on scheduling
        const Point q = pivots[t];
        angular_sweep(q, std::span<const SweepItem>(items), acc, scratch[w], [&](double angle, bool) {
            const Point n = sweep_normal(angle);
            consider(best[w], Halfplane{n, dot(n, q)}, acc, fn);
        });
    });
    ScanResult out;
    for (const auto& b : best) merge_into(out, b);
    return out;
}

/// Point of the pivot-disk enumeration: location plus trajectory key (used by
/// the hull trick).
struct KeyedPoint {
    Point p;
    std::int64_t key = 0;
};

struct PivotScratch {
    SweepScratch sweep;
    std::vector<SweepItem> items;
    struct PairEvent {
        double t;
        std::uint32_t idx;
        std::uint8_t kind;  // 0 enter, 1 leave, 2 diametral mark
    };
    std::vector<PairEvent> events;
    std::vector<std::uint32_t> always;
    std::vector<Point> param;
    std::vector<std::uint32_t> fixed;
    std::vector<KeyedPoint> centers;
};

inline Point invert_about(Point q, Point p) {
    const Point u = p - q;
    const double d2 = dot(u, u);
    return (1.0 / d2) * u;
}

/// Keeps only points that are convex hull vertices of their group's image
/// under `image`. Groups are given by `key`.
template <class Image>
std::vector<std::uint32_t> hull_filter(std::size_t count, const std::vector<std::int64_t>& key, Image&& image) {
    std::map<std::int64_t, std::vector<std::uint32_t>> groups;
    for (std::uint32_t i = 0; i < count; ++i) groups[key[i]].push_back(i);
    std::vector<Point> pts(count);
    for (std::uint32_t i = 0; i < count; ++i) pts[i] = image(i);
    std::vector<std::uint32_t> keep;
    for (auto& [k, members] : groups) {
        auto h = hull_indices(pts, members);
        keep.insert(keep.end(), h.begin(), h.end());
    }
    std::sort(keep.begin(), keep.end());
    return keep;
}

/// All disks with pivot q on the boundary: diametral disks (q, c) and the
/// disks through q, c and a sample point, for every center c. Sample points
/// (indices into prep) are the only ones whose membership is tracked.
template <class Acc>
void disk_pivot_scan(Point q, std::span<const KeyedPoint> centers, const PreparedSample& prep,
                     std::span<const std::uint32_t> sample_idx, RadiusWindow window, bool hull_trick,
                     const DiscrepancyFn& fn, Acc& acc, PivotScratch& scratch, ScanResult& best) {
    auto& items = scratch.items;
    auto& fixed = scratch.fixed;
    acc.r = acc.b = 0.0;  // empty on entry; drop rounding residue
    items.clear();
    fixed.clear();
    // Nothing farther than a diameter from q fits in an admissible disk.
    const double reach = 2.0 * window.r_max * (1.0 + 1e-9);

    if (hull_trick) {
        // Trajectories touching q are always inside; the rest keep only their
        // parameter-space hull vertices.
        std::vector<char> at_q(prep.trajectory_count(), 0);
        for (std::uint32_t i : sample_idx)
            if (prep.location[i] == q) at_q[prep.traj[i]] = 1;
        std::vector<std::uint32_t> rest;
        for (std::uint32_t i : sample_idx) {
            if (distance(prep.location[i], q) > reach) continue;
            if (prep.location[i] == q) {
                if (at_q[prep.traj[i]] == 1) {
                    fixed.push_back(i);
                    at_q[prep.traj[i]] = 2;
                }
            } else if (!at_q[prep.traj[i]]) {
                rest.push_back(i);
            }
        }
        std::vector<std::int64_t> key(rest.size());
        for (std::size_t k = 0; k < rest.size(); ++k) key[k] = prep.traj[rest[k]];
        for (std::uint32_t k : hull_filter(rest.size(), key, [&](std::uint32_t k) {
                 return invert_about(q, prep.location[rest[k]]);
             }))
            items.push_back({invert_about(q, prep.location[rest[k]]), rest[k]});
    } else {
        for (std::uint32_t i : sample_idx) {
            if (distance(prep.location[i], q) > reach) continue;
            if (prep.location[i] == q) fixed.push_back(i);
            else items.push_back({invert_about(q, prep.location[i]), i});
        }
    }

    auto& cs = scratch.centers;
    cs.clear();
    for (const auto& c : centers) {
        if (c.p == q) continue;
        // Without the hull filter the pair (q, c) is also met from pivot c.
        if (!hull_trick && (c.p.x < q.x || (c.p.x == q.x && c.p.y < q.y))) continue;
        if (0.5 * distance(c.p, q) > window.r_max) continue;
        cs.push_back(c);
    }
    if (hull_trick && !cs.empty()) {
        std::vector<std::int64_t> key(cs.size());
        for (std::size_t k = 0; k < cs.size(); ++k) key[k] = cs[k].key;
        std::vector<KeyedPoint> kept;
        for (std::uint32_t k : hull_filter(cs.size(), key, [&](std::uint32_t k) { return invert_about(q, cs[k].p); }))
            kept.push_back(cs[k]);
        cs.swap(kept);
    }

    for (std::uint32_t i : fixed) acc.add(i);
    // For a center c, disks through q and c have centers mid + t n and
    // radius hypot(d/2, t). A sample point is inside for a half-line of t, so
    // one sort over the points whose threshold falls in the window suffices.
    auto& events = scratch.events;
    auto& always = scratch.always;
    for (const auto& c : cs) {
        const Point u = c.p - q;
        const double d = norm(u);
        const double half = 0.5 * d;
        const Point mid = q + 0.5 * u;
        const Point n{-u.y / d, u.x / d};
        const double t_hi = std::isfinite(window.r_max)
                                ? std::sqrt(std::max(0.0, window.r_max * window.r_max - half * half))
                                : std::numeric_limits<double>::infinity();
        events.clear();
        always.clear();
        events.push_back({0.0, 0, 2});
        for (const auto& it : items) {
            const Point loc = prep.location[it.idx];
            if (loc == c.p) {
                always.push_back(it.idx);
                continue;
            }
            const Point v = loc - mid;
            const double a = dot(v, n);
            const double w = dot(v, v) - half * half;
            if (a == 0.0) {
                if (w <= 0.0) always.push_back(it.idx);
                continue;
            }
            const double t = w / (2.0 * a);
            if (a > 0.0) {  // inside for t >= threshold
                if (t < -t_hi) always.push_back(it.idx);
                else if (t <= t_hi) events.push_back({t, it.idx, 0});
            } else {  // inside for t <= threshold
                if (t > t_hi) always.push_back(it.idx);
                else if (t >= -t_hi) {
                    acc.add(it.idx);
                    events.push_back({t, it.idx, 1});
                }
            }
        }
        for (std::uint32_t i : always) acc.add(i);
        std::sort(events.begin(), events.end(), [](const auto& x, const auto& y) { return x.t < y.t; });
        for (std::size_t g = 0; g < events.size();) {
            const double t = events[g].t;
            std::size_t e = g;
            for (; e < events.size() && events[e].t == t; ++e)
                if (events[e].kind == 0) acc.add(events[e].idx);
            const double radius = std::hypot(half, t);
            if (window.admits(radius)) consider(best, Disk{mid + t * n, radius}, acc, fn);
            for (std::size_t k = g; k < e; ++k)
                if (events[k].kind == 1) acc.remove(events[k].idx);
            g = e;
        }
        for (const auto& ev : events)
            if (ev.kind == 0) acc.remove(ev.idx);
        for (std::uint32_t i : always) acc.remove(i);
    }
    for (std::uint32_t i : fixed) acc.remove(i);
}

}  // namespace trajscan::detail
