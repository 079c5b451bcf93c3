#pragma once

// Shared machinery for the scanners: running-sum accumulators, the rotating
// halfplane sweep about a center, and a small deterministic parallel loop.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <thread>
#include <vector>

#include "trajscan/counter_state.hpp"
#include "trajscan/discrepancy.hpp"
#include "trajscan/scan_result.hpp"

namespace trajscan::detail {

/// Running (r, b) sums for point models.
struct PointAccumulator {
    const PreparedSample* sample = nullptr;
    double r = 0.0;
    double b = 0.0;

    explicit PointAccumulator(const PreparedSample& s) : sample(&s) {}
    void add(std::uint32_t i) {
        r += sample->r[i];
        b += sample->b[i];
    }
    void remove(std::uint32_t i) {
        r -= sample->r[i];
        b -= sample->b[i];
    }
    void reset() { r = b = 0.0; }
};

using CounterAccumulator = CounterState;

struct SweepItem {
    Point p;
    std::uint32_t idx = 0;
};

struct SweepScratch {
    struct Event {
        double angle;
        std::uint32_t item;
        bool enter;
    };
    std::vector<Event> events;
    std::vector<double> in_angle;
    std::vector<double> out_angle;
    std::vector<std::uint32_t> fixed;
};

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double wrap_angle(double a) {
    a -= kTwoPi * std::floor(a / kTwoPi);
    return a >= kTwoPi ? 0.0 : a;
}

/// Normal of the sweep halfplane at `angle`; the halfplane is
/// {p : normal . (p - center) <= 0}.
inline Point sweep_normal(double angle) { return {std::cos(angle), std::sin(angle)}; }

/// Rotates the closed halfplane whose boundary passes through `center` a full
/// turn. `visit(angle, at_event)` is called with `acc` holding the contents:
/// at each event angle (closed set, entering points first) and once inside
/// every open interval between event angles. Items equal to the center are
/// always inside. `acc` is returned to its initial state.
template <class Acc, class Visit>
void angular_sweep(Point center, std::span<const SweepItem> items, Acc& acc, SweepScratch& scratch, Visit&& visit) {
    auto& events = scratch.events;
    auto& in_angle = scratch.in_angle;
    auto& out_angle = scratch.out_angle;
    auto& fixed = scratch.fixed;
    events.clear();
    fixed.clear();
    in_angle.assign(items.size(), 0.0);
    out_angle.assign(items.size(), 0.0);

    for (std::uint32_t k = 0; k < items.size(); ++k) {
        const Point d = items[k].p - center;
        if (d.x == 0.0 && d.y == 0.0) {
            fixed.push_back(k);
            acc.add(items[k].idx);
            continue;
        }
        const double phi = std::atan2(d.y, d.x);
        in_angle[k] = wrap_angle(phi + 0.5 * std::numbers::pi);
        out_angle[k] = wrap_angle(in_angle[k] + std::numbers::pi);
        events.push_back({in_angle[k], k, true});
        events.push_back({out_angle[k], k, false});
    }

    if (events.empty()) {
        visit(0.0, true);
        for (std::uint32_t k : fixed) acc.remove(items[k].idx);
        return;
    }

    std::sort(events.begin(), events.end(), [](const auto& a, const auto& b) {
        if (a.angle != b.angle) return a.angle < b.angle;
        return a.enter && !b.enter;
    });

    // Start in the middle of the widest angular gap.
    const std::size_t m = events.size();
    double widest = events.front().angle + kTwoPi - events.back().angle;
    std::size_t start = 0;
    for (std::size_t i = 1; i < m; ++i) {
        const double gap = events[i].angle - events[i - 1].angle;
        if (gap > widest) {
            widest = gap;
            start = i;
        }
    }
    const double prev = start == 0 ? events.back().angle - kTwoPi : events[start - 1].angle;
    const double theta0 = prev + 0.5 * widest;

    std::vector<std::uint32_t> initially_inside;
    for (std::uint32_t k = 0; k < items.size(); ++k) {
        const Point d = items[k].p - center;
        if (d.x == 0.0 && d.y == 0.0) continue;
        // Inside at theta0 iff the exit comes before the next entry.
        if (wrap_angle(out_angle[k] - theta0) < wrap_angle(in_angle[k] - theta0)) {
            acc.add(items[k].idx);
            initially_inside.push_back(k);
        }
    }

    std::size_t i = 0;
    while (i < m) {
        const std::size_t g0 = (start + i) % m;
        const double angle = events[g0].angle;
        std::size_t len = 0;
        while (i + len < m && events[(start + i + len) % m].angle == angle) ++len;
        for (std::size_t j = 0; j < len; ++j) {
            const auto& e = events[(start + i + j) % m];
            if (e.enter) acc.add(items[e.item].idx);
        }
        visit(angle, true);
        for (std::size_t j = 0; j < len; ++j) {
            const auto& e = events[(start + i + j) % m];
            if (!e.enter) acc.remove(items[e.item].idx);
        }
        i += len;
        double next = events[(start + i) % m].angle;
        if (next <= angle) next += kTwoPi;
        visit(0.5 * (angle + next), false);
    }

    for (std::uint32_t k : initially_inside) acc.remove(items[k].idx);
    for (std::uint32_t k : fixed) acc.remove(items[k].idx);
}

/// Runs body(task, worker) for task in [0, n) on thread_count() workers;
/// returns the number of workers used.
template <class Body>
unsigned parallel_for(std::size_t n, Body&& body) {
    const unsigned workers = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(thread_count(), n)));
    if (workers == 1) {
        for (std::size_t t = 0; t < n; ++t) body(t, 0u);
        return 1;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t t = next++; t < n; t = next++) body(t, w);
        });
    }
    for (auto& th : pool) th.join();
    return workers;
}

/// Indices of the convex hull vertices (collinear points dropped).
std::vector<std::uint32_t> hull_indices(std::span<const Point> pts, std::span<const std::uint32_t> subset);

}  // namespace trajscan::detail
