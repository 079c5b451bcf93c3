#include "trajscan/scan_full.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "scan_sweeps.hpp"

namespace trajscan {

ScanResult max_halfplane_full(const LabeledPointSet& net, const LabeledPointSet& sample, const DiscrepancyFn& fn) {
    if (net.empty()) throw std::invalid_argument("max_halfplane_full: empty net");
    const PreparedSample prep = prepare_sample(sample, Model::Full);
    return detail::halfplane_scan<CounterState>(detail::distinct_locations(net), prep, fn);
}

ScanResult max_disk_full(const LabeledPointSet& net, const LabeledPointSet& sample, const DiscrepancyFn& fn,
                         RadiusWindow window, bool hull_trick) {
    if (net.empty()) throw std::invalid_argument("max_disk_full: empty net");
    const PreparedSample prep = prepare_sample(sample, Model::Full);
    std::vector<detail::KeyedPoint> centers;
    for (const auto& p : net.points) centers.push_back({p.location, p.traj_id});
    std::sort(centers.begin(), centers.end(), [](const auto& a, const auto& b) {
        if (a.p.x != b.p.x) return a.p.x < b.p.x;
        if (a.p.y != b.p.y) return a.p.y < b.p.y;
        return a.key < b.key;
    });
    const std::vector<Point> pivots = detail::distinct_locations(net);
    std::vector<std::uint32_t> all(prep.size());
    for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;

    const unsigned slots = std::max(1u, thread_count());
    std::vector<ScanResult> best(slots);
    std::vector<std::optional<CounterState>> accs(slots);
    std::vector<detail::PivotScratch> scratch(slots);
    detail::parallel_for(pivots.size(), [&](std::size_t t, unsigned w) {
        if (!accs[w]) accs[w].emplace(prep);
        detail::disk_pivot_scan(pivots[t], std::span<const detail::KeyedPoint>(centers), prep, all, window,
                                hull_trick, fn, *accs[w], scratch[w], best[w]);
    });
    ScanResult out;
    for (const auto& b : best) merge_into(out, b);
    return out;
}

namespace {

struct Axis {
    std::vector<double> lines;   // column starts
    std::vector<double> top;     // largest sample coordinate per column (line value when empty)
    double upper = 0.0;          // last net coordinate
    [[nodiscard]] int column(double v) const {
        if (v < lines.front() || v > upper) return -1;
        return static_cast<int>(std::upper_bound(lines.begin(), lines.end(), v) - lines.begin()) - 1;
    }
};

Axis build_axis(std::vector<double> net_coords, const PreparedSample& prep, bool use_x, double alpha,
                double mass_cap) {
    std::sort(net_coords.begin(), net_coords.end());
    net_coords.erase(std::unique(net_coords.begin(), net_coords.end()), net_coords.end());
    std::vector<std::pair<double, std::uint32_t>> pts;
    for (std::uint32_t i = 0; i < prep.size(); ++i)
        pts.push_back({use_x ? prep.location[i].x : prep.location[i].y, prep.traj[i]});
    std::sort(pts.begin(), pts.end());

    Axis ax;
    ax.lines.push_back(net_coords.front());
    ax.upper = net_coords.back();
    std::vector<char> seen(prep.trajectory_count(), 0);
    std::vector<std::uint32_t> touched;
    double mass = 0.0;
    std::size_t p = static_cast<std::size_t>(std::lower_bound(pts.begin(), pts.end(), std::make_pair(ax.lines.front(), 0u)) - pts.begin());
    for (std::size_t j = 1; j < net_coords.size(); ++j) {
        const double v = net_coords[j];
        for (; p < pts.size() && pts[p].first < v; ++p) {
            if (!seen[pts[p].second]) {
                seen[pts[p].second] = 1;
                touched.push_back(pts[p].second);
                mass += prep.traj_b[pts[p].second];
            }
        }
        if (v - ax.lines.back() >= alpha && mass >= mass_cap) {
            ax.lines.push_back(v);
            for (std::uint32_t t : touched) seen[t] = 0;
            touched.clear();
            mass = 0.0;
        }
    }
    ax.top = ax.lines;
    for (const auto& [v, t] : pts) {
        const int c = ax.column(v);
        if (c >= 0) ax.top[c] = std::max(ax.top[c], v);
    }
    return ax;
}

}  // namespace

ScanResult max_rect_full(const LabeledPointSet& net, const LabeledPointSet& sample, const DiscrepancyFn& fn,
                         const RectGridParams& params) {
    if (!(params.alpha > 0.0)) throw std::invalid_argument("max_rect_full: alpha must be positive");
    if (!(params.max_side >= 0.0)) throw std::invalid_argument("max_rect_full: max_side must be nonnegative");
    if (net.empty()) throw std::invalid_argument("max_rect_full: empty net");
    const PreparedSample prep = prepare_sample(sample, Model::Full);
    std::vector<double> nx;
    std::vector<double> ny;
    for (const auto& p : net.points) {
        nx.push_back(p.location.x);
        ny.push_back(p.location.y);
    }
    const Axis ax = build_axis(nx, prep, true, params.alpha, params.mass_cap);
    const Axis ay = build_axis(ny, prep, false, params.alpha, params.mass_cap);
    const int gx = static_cast<int>(ax.lines.size());
    const int gy = static_cast<int>(ay.lines.size());

    // cells[row][col] -> sample indices
    std::vector<std::vector<std::vector<std::uint32_t>>> cells(gy, std::vector<std::vector<std::uint32_t>>(gx));
    for (std::uint32_t i = 0; i < prep.size(); ++i) {
        const int cx = ax.column(prep.location[i].x);
        const int cy = ay.column(prep.location[i].y);
        if (cx >= 0 && cy >= 0) cells[cy][cx].push_back(i);
    }

    const unsigned slots = std::max(1u, thread_count());
    std::vector<ScanResult> best(slots);
    std::vector<std::optional<CounterState>> accs(slots);
    detail::parallel_for(static_cast<std::size_t>(gy), [&](std::size_t c, unsigned w) {
        if (!accs[w]) accs[w].emplace(prep);
        CounterState& acc = *accs[w];
        std::vector<std::vector<std::uint32_t>> colpts(gx);
        for (int d = static_cast<int>(c); d < gy; ++d) {
            if (ay.top[d] - ay.lines[c] > params.max_side) break;
            for (int b = 0; b < gx; ++b) colpts[b].insert(colpts[b].end(), cells[d][b].begin(), cells[d][b].end());
            for (int a = 0; a < gx; ++a) {
                int b = a;
                for (; b < gx; ++b) {
                    if (ax.top[b] - ax.lines[a] > params.max_side) break;
                    for (std::uint32_t i : colpts[b]) acc.add(i);
                    detail::consider(best[w], Rect{ax.lines[a], ax.top[b], ay.lines[c], ay.top[d]}, acc, fn);
                }
                for (int k = a; k < b; ++k)
                    for (std::uint32_t i : colpts[k]) acc.remove(i);
                acc.r = acc.b = 0.0;
            }
        }
    });
    ScanResult out;
    for (const auto& b : best) merge_into(out, b);
    return out;
}

int MultiScaleParams::z() const {
    if (!(r_min > 0.0) || !(r_max > r_min)) throw std::invalid_argument("multiscale: need 0 < r_min < r_max");
    if (levels < 0) throw std::invalid_argument("multiscale: z must be >= 1");
    if (levels > 0) return levels;
    const double ratio = std::log2(r_max / r_min);
    const double z = std::round(ratio);
    if (z < 1.0 || std::abs(ratio - z) > 1e-9) throw std::invalid_argument("multiscale: r_max / r_min must be 2^z");
    return static_cast<int>(z);
}

double MultiScaleParams::ratio() const {
    const int n = z();
    return levels > 0 ? std::pow(r_max / r_min, 1.0 / n) : 2.0;
}

void MultiScaleParams::validate() const {
    (void)z();
    if (r_max > 1.0) throw std::invalid_argument("multiscale: r_max must be <= 1");
    if (!(alpha > 0.0)) throw std::invalid_argument("multiscale: alpha must be positive");
}

namespace {

using CellKey = std::pair<std::int64_t, std::int64_t>;

CellKey cell_of(Point p, double edge) {
    return {static_cast<std::int64_t>(std::floor(p.x / edge)), static_cast<std::int64_t>(std::floor(p.y / edge))};
}

}  // namespace

ScanResult max_disk_multiscale(const TrajectoryDataset& dataset, std::span<const std::size_t> net,
                               std::span<const std::size_t> sample, const MultiScaleParams& params,
                               const DiscrepancyFn& fn) {
    params.validate();
    const int z = params.z();
    const std::int64_t reach = params.exact_eval ? 4 : 2;
    ScanResult out;
    const double rho = params.ratio();
    for (int level = 0; level < z; ++level) {
        const double r = level == 0 ? params.r_min : params.r_min * std::pow(rho, level);
        const double r_hi = level + 1 == z ? params.r_max : params.r_min * std::pow(rho, level + 1);
        const double edge = 0.5 * r_hi;  // a pivot's disks stay within 2 cells of it
        CoresetMethod method;
        method.tag = params.coreset.value_or(CoresetTag::GridKernel);
        method.alpha = params.alpha;
        method.r = r;
        method.validate();
        const LabeledPointSet net_pts = coreset_points(dataset, net, method);
        const LabeledPointSet sample_pts = coreset_points(dataset, sample, method);
        if (net_pts.empty() || sample_pts.empty()) continue;
        const PreparedSample prep = prepare_sample(sample_pts, Model::Full);

        std::map<CellKey, std::vector<detail::KeyedPoint>> net_cells;
        for (const auto& p : net_pts.points) net_cells[cell_of(p.location, edge)].push_back({p.location, p.traj_id});
        std::map<CellKey, std::vector<std::uint32_t>> sample_cells;
        for (std::uint32_t i = 0; i < prep.size(); ++i) sample_cells[cell_of(prep.location[i], edge)].push_back(i);

        // Row-major task order.
        std::vector<CellKey> tasks;
        for (const auto& [key, pts] : net_cells) tasks.push_back(key);
        std::sort(tasks.begin(), tasks.end(),
                  [](const CellKey& a, const CellKey& b) { return a.second != b.second ? a.second < b.second : a.first < b.first; });

        const RadiusWindow window{r, r_hi};
        const unsigned slots = std::max(1u, thread_count());
        std::vector<ScanResult> best(slots);
        std::vector<std::optional<CounterState>> accs(slots);
        std::vector<detail::PivotScratch> scratch(slots);
        detail::parallel_for(tasks.size(), [&](std::size_t t, unsigned w) {
            if (!accs[w]) accs[w].emplace(prep);
            const auto [cx, cy] = tasks[t];
            std::vector<detail::KeyedPoint> centers;
            std::vector<std::uint32_t> local;
            for (std::int64_t dy = -reach; dy <= reach; ++dy) {
                for (std::int64_t dx = -reach; dx <= reach; ++dx) {
                    const CellKey key{cx + dx, cy + dy};
                    if (auto it = net_cells.find(key); it != net_cells.end())
                        centers.insert(centers.end(), it->second.begin(), it->second.end());
                    if (auto it = sample_cells.find(key); it != sample_cells.end())
                        local.insert(local.end(), it->second.begin(), it->second.end());
                }
            }
            std::vector<Point> pivots;
            for (const auto& kp : net_cells.at(tasks[t])) pivots.push_back(kp.p);
            std::sort(pivots.begin(), pivots.end(), [](Point a, Point b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
            pivots.erase(std::unique(pivots.begin(), pivots.end()), pivots.end());
            for (const Point q : pivots)
                detail::disk_pivot_scan(q, std::span<const detail::KeyedPoint>(centers), prep, local, window,
                                        params.use_hull_trick, fn, *accs[w], scratch[w], best[w]);
        });
        for (const auto& b : best) merge_into(out, b);
    }
    return out;
}

ScanResult max_disk_multiscale(const TrajectoryDataset& dataset, const MultiScaleParams& params,
                               const SamplingParams& sampling, const DiscrepancyFn& fn) {
    params.validate();
    CoresetMethod method;
    method.tag = params.coreset.value_or(CoresetTag::GridKernel);
    method.alpha = params.alpha;
    method.r = params.r_min;
    const TwoLevelSample draw = draw_two_level(dataset, sampling, method);
    return max_disk_multiscale(dataset, draw.net, draw.sample, params, fn);
}

}  // namespace trajscan
