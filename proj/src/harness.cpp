#include "trajscan/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "trajscan/rng.hpp"

namespace trajscan {

std::string to_string(Generator g) { return g == Generator::RandomWalk ? "random_walk" : "segment_bundle"; }

Generator parse_generator(const std::string& name) {
    if (name == "random_walk") return Generator::RandomWalk;
    if (name == "segment_bundle") return Generator::SegmentBundle;
    throw std::invalid_argument("unknown generator: " + name);
}

void SyntheticConfig::validate() const {
    if (n_traj < 1) throw std::invalid_argument("n_traj must be >= 1");
    if (wp_min < 1 || wp_max < wp_min) throw std::invalid_argument("need 1 <= wp_min <= wp_max");
    if (!(step_scale > 0.0 && step_scale < 0.5)) throw std::invalid_argument("step_scale must lie in (0, 0.5)");
}

namespace {

double reflect(double v) {
    if (v < 0.0) v = -v;
    if (v > 1.0) v = 2.0 - v;
    return std::clamp(v, 0.0, 1.0);
}

Point reflect(Point p) { return {reflect(p.x), reflect(p.y)}; }

}  // namespace

TrajectoryDataset generate_synthetic(const SyntheticConfig& cfg) {
    cfg.validate();
    Rng rng(mix_seed(cfg.seed, 0x5e));
    TrajectoryDataset ds;
    ds.trajectories.reserve(cfg.n_traj);

    struct Road {
        Point a, b;
    };
    std::vector<Road> roads;
    if (cfg.generator == Generator::SegmentBundle) {
        const std::size_t count = std::max<std::size_t>(3, std::min<std::size_t>(12, cfg.n_traj / 20 + 3));
        for (std::size_t i = 0; i < count; ++i) {
            Road r{{rng.uniform(), rng.uniform()}, {rng.uniform(), rng.uniform()}};
            if (distance(r.a, r.b) < 0.2) r.b = {1.0 - r.a.x, 1.0 - r.a.y};
            roads.push_back(r);
        }
    }

    for (std::size_t t = 0; t < cfg.n_traj; ++t) {
        Trajectory tr;
        tr.id = static_cast<TrajId>(t);
        const std::size_t m = cfg.wp_min + static_cast<std::size_t>(rng.below(cfg.wp_max - cfg.wp_min + 1));
        if (cfg.generator == Generator::RandomWalk) {
            Point p{rng.uniform(), rng.uniform()};
            double heading = rng.uniform(0.0, 2.0 * std::numbers::pi);
            tr.waypoints.push_back(p);
            for (std::size_t k = 1; k < m; ++k) {
                heading += 0.6 * rng.normal();
                const double step = cfg.step_scale * rng.uniform(0.5, 1.5);
                p = reflect(Point{p.x + step * std::cos(heading), p.y + step * std::sin(heading)});
                tr.waypoints.push_back(p);
            }
        } else {
            const Road& road = roads[rng.below(roads.size())];
            const Point dir = road.b - road.a;
            const double len = norm(dir);
            double u = rng.uniform();
            double sense = rng.bernoulli(0.5) ? 1.0 : -1.0;
            const Point lateral{-dir.y / len, dir.x / len};
            const double offset = 0.3 * cfg.step_scale * rng.normal();
            for (std::size_t k = 0; k < m; ++k) {
                const double jitter = offset + 0.1 * cfg.step_scale * rng.normal();
                tr.waypoints.push_back(reflect(road.a + u * dir + jitter * lateral));
                u += sense * cfg.step_scale * rng.uniform(0.5, 1.5) / len;
                if (u > 1.0) {
                    u = 2.0 - u;
                    sense = -sense;
                } else if (u < 0.0) {
                    u = -u;
                    sense = -sense;
                }
            }
        }
        ds.trajectories.push_back(std::move(tr));
    }
    return ds;
}

namespace {

bool waypoint_hit(const Trajectory& t, const Shape& shape) {
    for (const Point& p : t.waypoints)
        if (shape_contains(shape, p)) return true;
    return false;
}

double inside_length(const Trajectory& t, const Shape& shape) {
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < t.waypoints.size(); ++i)
        len += segment_clip_length(Segment{t.waypoints[i], t.waypoints[i + 1]}, shape);
    return len;
}

}  // namespace

RegionStats evaluate_dataset(const TrajectoryDataset& dataset, const Shape& shape, Model model,
                             const DiscrepancyFn& fn, Membership membership) {
    double r_in = 0.0;
    double b_in = 0.0;
    double r_tot = 0.0;
    double b_tot = 0.0;
    for (const auto& t : dataset.trajectories) {
        switch (model) {
            case Model::Full: {
                const bool hit = membership == Membership::Waypoints ? waypoint_hit(t, shape)
                                                                     : trajectory_intersects(t.waypoints, shape);
                r_tot += t.recorded;
                b_tot += t.baseline;
                if (hit) {
                    r_in += t.recorded;
                    b_in += t.baseline;
                }
                break;
            }
            case Model::Flux: {
                const bool begin = shape_contains(shape, t.waypoints.front());
                const bool end = shape_contains(shape, t.waypoints.back());
                r_tot += t.recorded;
                b_tot += t.baseline;
                r_in += (begin ? t.recorded : 0.0) - (end ? t.recorded : 0.0);
                b_in += (end ? t.baseline : 0.0) - (begin ? t.baseline : 0.0);
                break;
            }
            case Model::Partial: {
                const double len = arclength(t);
                if (len <= 0.0) break;
                const double in = inside_length(t, shape);
                r_tot += t.recorded * len;
                b_tot += t.baseline * len;
                r_in += t.recorded * in;
                b_in += t.baseline * in;
                break;
            }
        }
    }
    RegionStats st;
    st.r_frac = r_tot > 0.0 ? r_in / r_tot : 0.0;
    st.b_frac = b_tot > 0.0 ? b_in / b_tot : 0.0;
    st.phi = fn(st.r_frac, st.b_frac);
    return st;
}

double baseline_fraction(const TrajectoryDataset& dataset, const Shape& shape, Model model) {
    double in = 0.0;
    double tot = 0.0;
    for (const auto& t : dataset.trajectories) {
        switch (model) {
            case Model::Full:
                tot += t.baseline;
                if (trajectory_intersects(t.waypoints, shape)) in += t.baseline;
                break;
            case Model::Flux:
                tot += t.baseline;
                if (shape_contains(shape, t.waypoints.front()) && !shape_contains(shape, t.waypoints.back()))
                    in += t.baseline;
                break;
            case Model::Partial: {
                const double len = arclength(t);
                tot += t.baseline * len;
                if (len > 0.0) in += t.baseline * inside_length(t, shape);
                break;
            }
        }
    }
    return tot > 0.0 ? in / tot : 0.0;
}

void PlantConfig::validate() const {
    if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("p, q must lie in [0,1]");
    if (!(f > 0.0 && f < 1.0)) throw std::invalid_argument("f must lie in (0,1)");
}

namespace {

/// Shape of the family with size parameter s in [0, 1] around the anchor.
Shape sized_shape(ShapeFamily family, Point center, Point normal, double lo, double hi, double s) {
    switch (family) {
        case ShapeFamily::Disk: return Disk{center, s * std::numbers::sqrt2};
        case ShapeFamily::Rect: {
            const double h = s * 0.5 * std::numbers::sqrt2;
            return Rect{center.x - h, center.x + h, center.y - h, center.y + h};
        }
        case ShapeFamily::Halfplane: return Halfplane{normal, lo + s * (hi - lo)};
    }
    throw std::logic_error("unreachable");
}

}  // namespace

Planted plant(const TrajectoryDataset& dataset, const PlantConfig& cfg, const DiscrepancyFn& fn) {
    cfg.validate();
    if (dataset.size() == 0) throw std::invalid_argument("plant: empty dataset");
    Rng rng(mix_seed(cfg.seed, 0x91));
    const double lo_f = 0.9 * cfg.f;
    const double hi_f = 1.1 * cfg.f;

    std::optional<Shape> chosen;
    double realized = 0.0;
    for (int attempt = 0; attempt < 200 && !chosen; ++attempt) {
        const auto& anchor = dataset.trajectories[rng.below(dataset.size())];
        const Point center = anchor.waypoints[rng.below(anchor.waypoints.size())];
        const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const Point normal{std::cos(angle), std::sin(angle)};
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const auto& t : dataset.trajectories)
            for (const Point& p : t.waypoints) {
                lo = std::min(lo, dot(normal, p));
                hi = std::max(hi, dot(normal, p));
            }
        // Mass grows with s for halfplanes, disks and squares (flux only roughly).
        double a = 0.0;
        double b = 1.0;
        for (int it = 0; it < 20; ++it) {
            const double s = 0.5 * (a + b);
            const Shape shape = sized_shape(cfg.family, center, normal, lo, hi, s);
            const double mass = baseline_fraction(dataset, shape, cfg.model);
            if (mass >= lo_f && mass <= hi_f) {
                chosen = shape;
                realized = mass;
                break;
            }
            if (mass < cfg.f) a = s;
            else b = s;
        }
    }
    if (!chosen) throw std::runtime_error("plant: target fraction f unreachable for this family and dataset");

    Planted out;
    out.dataset = dataset;
    out.shape = *chosen;
    out.realized_f = realized;
    for (auto& t : out.dataset.trajectories) {
        double rate = cfg.p;
        switch (cfg.model) {
            case Model::Full:
                if (trajectory_intersects(t.waypoints, out.shape)) rate = cfg.q;
                break;
            case Model::Flux:
                if (shape_contains(out.shape, t.waypoints.front()) && !shape_contains(out.shape, t.waypoints.back()))
                    rate = cfg.q;
                break;
            case Model::Partial: {
                const double len = arclength(t);
                const double w = len > 0.0 ? inside_length(t, out.shape) / len
                                           : (shape_contains(out.shape, t.waypoints.front()) ? 1.0 : 0.0);
                rate = w * cfg.q + (1.0 - w) * cfg.p;
                break;
            }
        }
        t.recorded = rng.bernoulli(rate) ? 1.0 : 0.0;
    }
    out.stats = evaluate_dataset(out.dataset, out.shape, cfg.model, fn);
    return out;
}

namespace {

/// Point-level table for fast oracle evaluation when membership is decided by
/// points alone (flux endpoints, full model on waypoints).
struct PointTable {
    std::vector<Point> pts;
    std::vector<std::uint32_t> traj;
    std::vector<double> r;   // flux: signed, normalized
    std::vector<double> b;
    std::vector<double> traj_r;  // full: normalized per trajectory
    std::vector<double> traj_b;
    bool full = false;
    mutable std::vector<std::uint32_t> stamp;
    mutable std::uint32_t epoch = 0;
    std::vector<double> xs;  // flux: pts split by coordinate
    std::vector<double> ys;
    std::vector<double> sx;  // full: slot-major waypoints, see eval_sides
    std::vector<double> sy;
    std::size_t slots = 0;
    mutable std::vector<double> proj;

    template <class Inside>
    RegionStats eval(Inside&& inside, const DiscrepancyFn& fn) const {
        RegionStats st;
        if (full) {
            ++epoch;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const std::uint32_t t = traj[i];
                if (stamp[t] != epoch && inside(pts[i])) {
                    stamp[t] = epoch;
                    st.r_frac += traj_r[t];
                    st.b_frac += traj_b[t];
                }
            }
        } else {
            for (std::size_t i = 0; i < pts.size(); ++i) {
                if (inside(pts[i])) {
                    st.r_frac += r[i];
                    st.b_frac += b[i];
                }
            }
        }
        st.phi = fn(st.r_frac, st.b_frac);
        return st;
    }

    // Both closed halfplanes bounded by dot(n, p) = off, from one projection
    // pass (dot(-n, p) == -dot(n, p) exactly).
    std::pair<RegionStats, RegionStats> eval_sides(Point n, double off, const DiscrepancyFn& fn) const {
        const double lo_cut = off + kGeomTol;
        const double hi_cut = -off + kGeomTol;
        RegionStats lo;
        RegionStats hi;
        if (full) {
            // Slot-major copy: slot k of trajectory t at k * T + t, short
            // trajectories padded with their first waypoint.
            const std::size_t T = traj_r.size();
            double* mn = proj.data();
            double* mx = proj.data() + T;
            for (std::size_t t = 0; t < T; ++t) mn[t] = mx[t] = n.x * sx[t] + n.y * sy[t];
            for (std::size_t k = 1; k < slots; ++k) {
                const double* px = sx.data() + k * T;
                const double* py = sy.data() + k * T;
                for (std::size_t t = 0; t < T; ++t) {
                    const double d = n.x * px[t] + n.y * py[t];
                    mn[t] = std::min(mn[t], d);
                    mx[t] = std::max(mx[t], d);
                }
            }
            for (std::size_t t = 0; t < T; ++t) {
                if (mn[t] <= lo_cut) {
                    lo.r_frac += traj_r[t];
                    lo.b_frac += traj_b[t];
                }
                if (-mx[t] <= hi_cut) {
                    hi.r_frac += traj_r[t];
                    hi.b_frac += traj_b[t];
                }
            }
        } else {
            const std::size_t m = xs.size();
            for (std::size_t i = 0; i < m; ++i) proj[i] = n.x * xs[i] + n.y * ys[i];
            for (std::size_t i = 0; i < m; ++i) {
                if (proj[i] <= lo_cut) {
                    lo.r_frac += r[i];
                    lo.b_frac += b[i];
                }
                if (-proj[i] <= hi_cut) {
                    hi.r_frac += r[i];
                    hi.b_frac += b[i];
                }
            }
        }
        lo.phi = fn(lo.r_frac, lo.b_frac);
        hi.phi = fn(hi.r_frac, hi.b_frac);
        return {lo, hi};
    }
};

PointTable point_table(const TrajectoryDataset& ds, Model model) {
    PointTable tab;
    tab.full = model == Model::Full;
    double rt = 0.0;
    double bt = 0.0;
    for (const auto& t : ds.trajectories) {
        rt += t.recorded;
        bt += t.baseline;
    }
    const double rs = rt > 0.0 ? 1.0 / rt : 0.0;
    const double bs = bt > 0.0 ? 1.0 / bt : 0.0;
    for (std::uint32_t k = 0; k < ds.size(); ++k) {
        const auto& t = ds.trajectories[k];
        tab.traj_r.push_back(t.recorded * rs);
        tab.traj_b.push_back(t.baseline * bs);
        if (tab.full) {
            for (const Point& p : t.waypoints) {
                tab.pts.push_back(p);
                tab.traj.push_back(k);
            }
        } else {
            tab.pts.push_back(t.waypoints.front());
            tab.traj.push_back(k);
            tab.r.push_back(t.recorded * rs);
            tab.b.push_back(-t.baseline * bs);
            tab.pts.push_back(t.waypoints.back());
            tab.traj.push_back(k);
            tab.r.push_back(-t.recorded * rs);
            tab.b.push_back(t.baseline * bs);
        }
    }
    tab.stamp.assign(ds.size(), 0);
    if (tab.full) {
        const std::size_t T = ds.size();
        for (const auto& t : ds.trajectories) tab.slots = std::max(tab.slots, t.waypoints.size());
        tab.sx.resize(tab.slots * T);
        tab.sy.resize(tab.slots * T);
        for (std::size_t t = 0; t < T; ++t) {
            const auto& wp = ds.trajectories[t].waypoints;
            for (std::size_t k = 0; k < tab.slots; ++k) {
                const Point p = k < wp.size() ? wp[k] : wp.front();
                tab.sx[k * T + t] = p.x;
                tab.sy[k * T + t] = p.y;
            }
        }
        tab.proj.resize(2 * T);
    } else {
        for (const Point& p : tab.pts) {
            tab.xs.push_back(p.x);
            tab.ys.push_back(p.y);
        }
        tab.proj.resize(tab.pts.size());
    }
    return tab;
}

}  // namespace

ScanResult exact_scan(const TrajectoryDataset& dataset, ShapeFamily family, Model model, const DiscrepancyFn& fn,
                      const ExactOptions& options) {
    check_model_fn(model, fn);
    if (dataset.size() == 0) throw std::invalid_argument("exact_scan: empty dataset");
    if (options.enforce_guard &&
        (dataset.size() > options.max_trajectories || dataset.waypoint_count() > options.max_waypoints)) {
        throw std::invalid_argument("exact_scan: dataset exceeds the oracle size guard (" +
                                    std::to_string(options.max_trajectories) + " trajectories, " +
                                    std::to_string(options.max_waypoints) + " waypoints)");
    }

    std::vector<Point> pts;
    for (const auto& t : dataset.trajectories) {
        if (model == Model::Flux) {
            pts.push_back(t.waypoints.front());
            pts.push_back(t.waypoints.back());
        } else {
            pts.insert(pts.end(), t.waypoints.begin(), t.waypoints.end());
        }
    }
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    const bool by_points = model == Model::Flux || (model == Model::Full && options.membership == Membership::Waypoints);
    const PointTable table = by_points ? point_table(dataset, model) : PointTable{};

    ScanResult best;
    auto consider = [&](const auto& shape) {
        ScanResult c;
        c.shape = shape;
        c.found = true;
        c.candidates = 1;
        c.stats = by_points ? table.eval([&](Point p) { return contains(shape, p); }, fn)
                            : evaluate_dataset(dataset, shape, model, fn, options.membership);
        merge_into(best, c);
    };
    auto consider_sides = [&](Point nrm, double off) {
        if (!by_points) {
            consider(Halfplane{nrm, off});
            consider(Halfplane{-1.0 * nrm, -off});
            return;
        }
        const auto [lo, hi] = table.eval_sides(nrm, off, fn);
        for (const auto& [shape, st] : {std::pair{Halfplane{nrm, off}, lo}, std::pair{Halfplane{-1.0 * nrm, -off}, hi}}) {
            ScanResult c;
            c.shape = shape;
            c.stats = st;
            c.found = true;
            c.candidates = 1;
            merge_into(best, c);
        }
    };

    const std::size_t n = pts.size();
    switch (family) {
        case ShapeFamily::Halfplane: {
            constexpr double kTurn = 1e-7;
            const double cs = std::cos(kTurn);
            const double sn = std::sin(kTurn);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (i == j) continue;
                    const Point d = pts[j] - pts[i];
                    const double len = norm(d);
                    const Point nrm{-d.y / len, d.x / len};
                    if (i < j) consider_sides(nrm, dot(nrm, pts[i]));
                    // Boundary turned slightly about pts[i], both ways and both sides.
                    for (double sgn : {1.0, -1.0}) {
                        const Point m{cs * nrm.x - sgn * sn * nrm.y, sgn * sn * nrm.x + cs * nrm.y};
                        consider_sides(m, dot(m, pts[i]));
                    }
                }
            }
            break;
        }
        case ShapeFamily::Disk: {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    const double rad = 0.5 * distance(pts[i], pts[j]);
                    if (rad > options.window.r_max) continue;
                    if (options.window.admits(rad)) consider(Disk{0.5 * (pts[i] + pts[j]), rad});
                    for (std::size_t k = j + 1; k < n; ++k) {
                        Disk d;
                        if (!circumcircle(pts[i], pts[j], pts[k], d)) continue;
                        if (options.window.admits(d.radius)) consider(d);
                    }
                }
            }
            break;
        }
        case ShapeFamily::Rect: {
            std::vector<double> xs;
            std::vector<double> ys;
            for (const Point& p : pts) {
                xs.push_back(p.x);
                ys.push_back(p.y);
            }
            for (auto* v : {&xs, &ys}) {
                std::sort(v->begin(), v->end());
                v->erase(std::unique(v->begin(), v->end()), v->end());
            }
            for (std::size_t a = 0; a < xs.size(); ++a)
                for (std::size_t b = a; b < xs.size(); ++b)
                    for (std::size_t c = 0; c < ys.size(); ++c)
                        for (std::size_t d = c; d < ys.size(); ++d) consider(Rect{xs[a], xs[b], ys[c], ys[d]});
            break;
        }
    }
    return best;
}

void ScanSettings::validate() const {
    check_model_fn(model, fn);
    SamplingParams sp{eps, delta, 1, c_net, c_sample, seed, net_override, sample_override};
    sp.validate();
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    if (!(max_side >= 0.0)) throw std::invalid_argument("max_side must be nonnegative");
    if (model == Model::Partial && partial_method != CoresetTag::Even && partial_method != CoresetTag::RandomSample)
        throw std::invalid_argument("partial model needs the even or random placement");
    if (model == Model::Full && family == ShapeFamily::Disk && !naive_disk) {
        MultiScaleParams ms{r_min, r_max, alpha, hull_trick, exact_eval, coreset, z};
        ms.validate();
    }
}

namespace {

std::vector<std::size_t> first_n(const std::vector<std::size_t>& perm, std::size_t n) {
    std::vector<std::size_t> out(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(std::min(n, perm.size())));
    std::sort(out.begin(), out.end());
    return out;
}

TrajectoryDataset subset_of(const TrajectoryDataset& ds, const std::vector<std::size_t>& idx) {
    TrajectoryDataset out;
    out.transform = ds.transform;
    for (std::size_t i : idx) out.trajectories.push_back(ds.trajectories[i]);
    return out;
}

CoresetTag default_full_coreset(ShapeFamily family) {
    switch (family) {
        case ShapeFamily::Halfplane: return CoresetTag::ConvexHull;
        case ShapeFamily::Rect: return CoresetTag::Gridding;
        case ShapeFamily::Disk: return CoresetTag::GridKernel;
    }
    return CoresetTag::AllWaypoints;
}

}  // namespace

ScanRun run_scan(const TrajectoryDataset& dataset, const ScanSettings& st) {
    st.validate();
    validate(dataset);
    const auto t0 = std::chrono::steady_clock::now();
    ScanRun run;
    SamplingParams sp{st.eps, st.delta, 1, st.c_net, st.c_sample, st.seed, st.net_override, st.sample_override};
    RadiusWindow window{};
    if (st.family == ShapeFamily::Disk && st.model != Model::Full) window = {st.r_min, st.r_max};

    auto point_scan = [&](const LabeledPointSet& net, const LabeledPointSet& sample) {
        switch (st.family) {
            case ShapeFamily::Halfplane: return max_halfplane_points(net, sample, st.fn);
            case ShapeFamily::Disk: return max_disk_points(net, sample, st.fn, window);
            case ShapeFamily::Rect: return max_rect_points(net, sample, st.fn, st.max_side);
        }
        throw std::logic_error("unreachable");
    };

    switch (st.model) {
        case Model::Flux: {
            sp.k_bound = 2;
            const auto net = first_n(seeded_permutation(dataset.size(), mix_seed(st.seed, 11)), net_size(sp));
            const auto sample = first_n(seeded_permutation(dataset.size(), mix_seed(st.seed, 12)), sample_size(sp));
            const LabeledPointSet net_pts = flux_reduce(subset_of(dataset, net));
            const LabeledPointSet sample_pts = flux_reduce(subset_of(dataset, sample));
            run.result = point_scan(net_pts, sample_pts);
            run.n = net.size();
            run.s = sample.size();
            run.n_k = net_pts.size();
            run.s_k = sample_pts.size();
            break;
        }
        case Model::Partial: {
            const std::size_t n = net_size(sp);
            const std::size_t s = sample_size(sp);
            const PartialPoints pp = partial_reduce(dataset, n, s, st.partial_method, st.seed);
            run.result = point_scan(pp.net, pp.sample);
            run.n = pp.net.per_traj_k.size();
            run.s = pp.sample.per_traj_k.size();
            run.n_k = pp.net.size();
            run.s_k = pp.sample.size();
            break;
        }
        case Model::Full: {
            CoresetMethod method;
            method.tag = st.coreset.value_or(default_full_coreset(st.family));
            method.alpha = st.alpha;
            method.r = st.r_min;
            method.seed = st.seed;
            const TwoLevelSample draw = draw_two_level(dataset, sp, method);
            run.n = draw.n();
            run.s = draw.s();
            if (st.family == ShapeFamily::Disk && !st.naive_disk) {
                MultiScaleParams ms{st.r_min, st.r_max, st.alpha, st.hull_trick, st.exact_eval, st.coreset, st.z};
                run.result = max_disk_multiscale(dataset, draw.net, draw.sample, ms, st.fn);
                // Point counts reported at the finest level (largest coresets).
                run.n_k = draw.net_points.size();
                run.s_k = draw.sample_points.size();
            } else {
                run.n_k = draw.net_points.size();
                run.s_k = draw.sample_points.size();
                switch (st.family) {
                    case ShapeFamily::Halfplane:
                        run.result = max_halfplane_full(draw.net_points, draw.sample_points, st.fn);
                        break;
                    case ShapeFamily::Rect:
                        run.result = max_rect_full(draw.net_points, draw.sample_points, st.fn,
                                                   RectGridParams{st.alpha, st.max_side, st.mass_cap});
                        break;
                    case ShapeFamily::Disk:
                        run.result = max_disk_full(draw.net_points, draw.sample_points, st.fn, {}, st.hull_trick);
                        break;
                }
            }
            break;
        }
    }
    const auto t1 = std::chrono::steady_clock::now();
    run.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (run.result.found) run.full_stats = evaluate_dataset(dataset, run.result.shape, st.model, st.fn);
    return run;
}

std::string PowerReport::to_csv(bool with_timing) const {
    std::ostringstream os;
    os.precision(17);
    os << "seed,eps,alpha,planted_phi,found_phi,runtime_ms\n";
    for (const auto& t : trials) {
        os << t.seed << ',' << eps << ',' << alpha << ',' << t.planted_phi << ',' << t.found_phi << ','
           << (with_timing ? t.runtime_ms : 0.0) << '\n';
    }
    return os.str();
}

PowerReport power_experiment(const SyntheticConfig& data, const PlantConfig& plant_cfg, const ScanSettings& scan,
                             std::size_t trials, double threshold) {
    if (trials < 1) throw std::invalid_argument("power_experiment: trials must be >= 1");
    PowerReport rep;
    rep.threshold = threshold;
    rep.eps = scan.eps;
    rep.alpha = scan.alpha;
    std::size_t hits = 0;
    for (std::size_t k = 0; k < trials; ++k) {
        SyntheticConfig dc = data;
        dc.seed = mix_seed(data.seed, k);
        PlantConfig pc = plant_cfg;
        pc.seed = mix_seed(plant_cfg.seed, k);
        ScanSettings sc = scan;
        sc.seed = mix_seed(scan.seed, k);
        const Planted planted = plant(generate_synthetic(dc), pc, scan.fn);
        const ScanRun run = run_scan(planted.dataset, sc);
        TrialRecord rec;
        rec.seed = dc.seed;
        rec.planted_phi = planted.stats.phi;
        rec.found_phi = run.full_stats.phi;
        rec.found_shape = run.result.shape;
        rec.runtime_ms = run.runtime_ms;
        if (rec.found_phi >= threshold * rec.planted_phi) ++hits;
        rep.trials.push_back(rec);
    }
    rep.recovery_rate = static_cast<double>(hits) / static_cast<double>(trials);
    return rep;
}

}  // namespace trajscan
