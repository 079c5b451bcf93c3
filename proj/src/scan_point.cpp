#include "trajscan/scan_point.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scan_sweeps.hpp"
#include "trajscan/rng.hpp"

namespace trajscan {

LabeledPointSet flux_reduce(const TrajectoryDataset& dataset) {
    LabeledPointSet out;
    for (const auto& t : dataset.trajectories) {
        if (t.waypoints.empty()) throw std::invalid_argument("flux_reduce: trajectory without waypoints");
        out.add({t.waypoints.front(), t.id, t.recorded, -t.baseline});
        out.add({t.waypoints.back(), t.id, -t.recorded, t.baseline});
    }
    return out;
}

namespace {

LabeledPointSet random_by_arclength(const TrajectoryDataset& dataset, const std::vector<double>& cum,
                                    std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> pos(count);
    for (auto& s : pos) s = rng.uniform(0.0, cum.back());
    std::sort(pos.begin(), pos.end());
    LabeledPointSet out;
    std::size_t t = 0;
    for (double s : pos) {
        while (t + 1 < cum.size() - 1 && s >= cum[t + 1]) ++t;
        const auto& tr = dataset.trajectories[t];
        out.add({point_at_arclength(tr.waypoints, s - cum[t]), tr.id, tr.recorded, tr.baseline});
    }
    return out;
}

}  // namespace

PartialPoints partial_reduce(const TrajectoryDataset& dataset, std::size_t n_target, std::size_t s_target,
                             CoresetTag method, std::uint64_t seed) {
    if (n_target == 0 || s_target == 0) throw std::invalid_argument("partial_reduce: targets must be positive");
    if (method != CoresetTag::Even && method != CoresetTag::RandomSample)
        throw std::invalid_argument("partial_reduce: method must be even or random");
    std::vector<double> cum{0.0};
    for (const auto& t : dataset.trajectories) cum.push_back(cum.back() + arclength(t));
    const double total = cum.back();
    if (!(total > 0.0)) throw std::invalid_argument("partial_reduce: all trajectories have zero length");

    PartialPoints out;
    if (method == CoresetTag::Even) {
        out.net = chain_even(dataset, total / static_cast<double>(n_target));
        out.sample = chain_even(dataset, total / static_cast<double>(s_target));
    } else {
        out.net = random_by_arclength(dataset, cum, n_target, mix_seed(seed, 1));
        out.sample = random_by_arclength(dataset, cum, s_target, mix_seed(seed, 2));
    }
    return out;
}

ScanResult max_halfplane_points(const LabeledPointSet& net, const LabeledPointSet& sample, const DiscrepancyFn& fn) {
    if (net.empty()) throw std::invalid_argument("max_halfplane_points: empty net");
    const PreparedSample prep = prepare_sample(sample, Model::Partial);
    return detail::halfplane_scan<detail::PointAccumulator>(detail::distinct_locations(net), prep, fn);
}

ScanResult max_disk_points(const LabeledPointSet& net, const LabeledPointSet& sample, const DiscrepancyFn& fn,
                           RadiusWindow window) {
    const std::vector<Point> pivots = detail::distinct_locations(net);
    if (pivots.size() < 2) throw std::invalid_argument("max_disk_points: net needs two distinct points");
    const PreparedSample prep = prepare_sample(sample, Model::Partial);
    std::vector<detail::KeyedPoint> centers;
    for (std::size_t i = 0; i < pivots.size(); ++i) centers.push_back({pivots[i], static_cast<std::int64_t>(i)});
    std::vector<std::uint32_t> all(prep.size());
    for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;

    const unsigned slots = std::max(1u, thread_count());
    std::vector<ScanResult> best(slots);
    std::vector<std::optional<detail::PointAccumulator>> accs(slots);
    std::vector<detail::PivotScratch> scratch(slots);
    detail::parallel_for(pivots.size(), [&](std::size_t t, unsigned w) {
        if (!accs[w]) accs[w].emplace(prep);
        // Centers after the pivot only: each pair is visited once.
        detail::disk_pivot_scan(pivots[t], std::span<const detail::KeyedPoint>(centers).subspan(t + 1), prep, all,
                                window, false, fn, *accs[w], scratch[w], best[w]);
    });
    ScanResult out;
    for (const auto& b : best) merge_into(out, b);
    return out;
}

namespace {

/// Slot of a coordinate relative to sorted distinct grid lines: 2j for line
/// j, 2j+1 for the gap between lines j and j+1; -1 / 2g-1 outside.
int line_slot(const std::vector<double>& lines, double v) {
    const auto it = std::lower_bound(lines.begin(), lines.end(), v);
    const int j = static_cast<int>(it - lines.begin());
    if (it != lines.end() && *it == v) return 2 * j;
    return 2 * j - 1;
}

}  // namespace

ScanResult max_rect_points(const LabeledPointSet& net, const LabeledPointSet& sample, const DiscrepancyFn& fn,
                           double max_side) {
    if (net.empty()) throw std::invalid_argument("max_rect_points: empty net");
    const PreparedSample prep = prepare_sample(sample, Model::Partial);
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& p : net.points) {
        xs.push_back(p.location.x);
        ys.push_back(p.location.y);
    }
    for (auto* v : {&xs, &ys}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    const int gx = static_cast<int>(xs.size());
    const int gy = static_cast<int>(ys.size());
    const int sx = 2 * gx - 1;

    // Points bucketed by y slot; only those strictly inside the line span matter.
    std::vector<std::vector<std::pair<int, std::uint32_t>>> rows(2 * gy - 1);
    for (std::uint32_t i = 0; i < prep.size(); ++i) {
        const int cx = line_slot(xs, prep.location[i].x);
        const int cy = line_slot(ys, prep.location[i].y);
        if (cx < 0 || cx >= sx || cy < 0 || cy >= 2 * gy - 1) continue;
        rows[cy].push_back({cx, i});
    }
    const bool linear_fast = fn.kind == DiscrepancyKind::Linear && !std::isfinite(max_side);

    const unsigned slots = std::max(1u, thread_count());
    std::vector<ScanResult> best(slots);
    detail::parallel_for(static_cast<std::size_t>(gy), [&](std::size_t c, unsigned w) {
        std::vector<double> col_r(sx, 0.0);
        std::vector<double> col_b(sx, 0.0);
        std::vector<double> pre_r(sx + 1);
        std::vector<double> pre_b(sx + 1);
        ScanResult& out = best[w];
        for (int d = static_cast<int>(c); d < gy; ++d) {
            if (ys[d] - ys[c] > max_side) break;
            // Add rows from the gap before line d (when d > c) and line d itself.
            for (int slot = d == static_cast<int>(c) ? 2 * d : 2 * d - 1; slot <= 2 * d; ++slot) {
                for (auto [cx, i] : rows[slot]) {
                    col_r[cx] += prep.r[i];
                    col_b[cx] += prep.b[i];
                }
            }
            pre_r[0] = pre_b[0] = 0.0;
            for (int k = 0; k < sx; ++k) {
                pre_r[k + 1] = pre_r[k] + col_r[k];
                pre_b[k + 1] = pre_b[k] + col_b[k];
            }
            auto emit = [&](int a, int b) {
                ScanResult cand;
                const double r = pre_r[2 * b + 1] - pre_r[2 * a];
                const double bb = pre_b[2 * b + 1] - pre_b[2 * a];
                cand.shape = Rect{xs[a], xs[b], ys[c], ys[d]};
                cand.stats = {r, bb, fn(r, bb)};
                cand.found = true;
                cand.candidates = 1;
                merge_into(out, cand);
            };
            if (linear_fast) {
                // Best left line for each right line, for both signs of r - b.
                int amin = 0;
                int amax = 0;
                for (int b = 0; b < gx; ++b) {
                    const double vb = pre_r[2 * b] - pre_b[2 * b];
                    if (vb < pre_r[2 * amin] - pre_b[2 * amin]) amin = b;
                    if (vb > pre_r[2 * amax] - pre_b[2 * amax]) amax = b;
                    emit(amin, b);
                    emit(amax, b);
                }
            } else {
                for (int a = 0; a < gx; ++a)
                    for (int b = a; b < gx && xs[b] - xs[a] <= max_side; ++b) emit(a, b);
            }
        }
    });
    ScanResult out;
    for (const auto& b : best) merge_into(out, b);
    return out;
}

}  // namespace trajscan
