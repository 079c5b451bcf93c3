#include "trajscan/scan_result.hpp"

#include <atomic>
#include <thread>
#include <variant>

#include "scan_core.hpp"

namespace trajscan {

namespace {
std::atomic<unsigned> g_threads{1};
}

std::array<double, 4> shape_key(const Shape& shape) {
    return std::visit(
        [](const auto& s) -> std::array<double, 4> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Halfplane>) return {s.normal.x, s.normal.y, s.offset, 0.0};
            else if constexpr (std::is_same_v<T, Disk>) return {s.center.x, s.center.y, s.radius, 0.0};
            else return {s.x_lo, s.x_hi, s.y_lo, s.y_hi};
        },
        shape);
}

bool better(const ScanResult& a, const ScanResult& b) {
    if (!a.found) return false;
    if (!b.found) return true;
    if (a.stats.phi != b.stats.phi) return a.stats.phi > b.stats.phi;
    if (a.shape.index() != b.shape.index()) return a.shape.index() < b.shape.index();
    return shape_key(a.shape) < shape_key(b.shape);
}

void merge_into(ScanResult& best, const ScanResult& candidate) {
    const std::size_t total = best.candidates + candidate.candidates;
    if (better(candidate, best)) {
        best.shape = candidate.shape;
        best.stats = candidate.stats;
        best.found = true;
    }
    best.candidates = total;
}

void set_thread_count(unsigned threads) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    g_threads = threads;
}

unsigned thread_count() { return g_threads; }

namespace detail {

std::vector<std::uint32_t> hull_indices(std::span<const Point> pts, std::span<const std::uint32_t> subset) {
    std::vector<std::uint32_t> idx(subset.begin(), subset.end());
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (pts[a].x != pts[b].x) return pts[a].x < pts[b].x;
        if (pts[a].y != pts[b].y) return pts[a].y < pts[b].y;
        return a < b;
    });
    idx.erase(std::unique(idx.begin(), idx.end(),
                          [&](std::uint32_t a, std::uint32_t b) { return pts[a].x == pts[b].x && pts[a].y == pts[b].y; }),
              idx.end());
    if (idx.size() <= 2) return idx;
    std::vector<std::uint32_t> h(2 * idx.size());
    std::size_t k = 0;
    auto turn = [&](std::uint32_t o, std::uint32_t a, std::uint32_t b) { return cross(pts[a] - pts[o], pts[b] - pts[o]); };
    for (std::uint32_t i : idx) {
        while (k >= 2 && turn(h[k - 2], h[k - 1], i) <= 0.0) --k;
        h[k++] = i;
    }
    for (std::size_t j = idx.size() - 1, lower = k + 1; j-- > 0;) {
        const std::uint32_t i = idx[j];
        while (k >= lower && turn(h[k - 2], h[k - 1], i) <= 0.0) --k;
        h[k++] = i;
    }
    h.resize(k - 1);
    return h;
}

}  // namespace detail

}  // namespace trajscan
