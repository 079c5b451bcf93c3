// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance            run all criteria
//   acceptance 1 4 9      run a subset

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "trajscan/harness.hpp"
#include "trajscan/rng.hpp"

using namespace trajscan;

namespace {

const DiscrepancyFn kLinear{DiscrepancyKind::Linear};
const DiscrepancyFn kKull{DiscrepancyKind::Kulldorff};

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

LabeledPointSet waypoint_points(const TrajectoryDataset& ds) {
    LabeledPointSet s;
    for (const auto& t : ds.trajectories)
        for (const Point& p : t.waypoints) s.add({p, t.id, t.recorded, t.baseline});
    return s;
}

Point random_curve_point(Rng& rng, const std::vector<Point>& wp) {
    return point_at_arclength(wp, rng.uniform() * arclength(std::span<const Point>(wp)));
}

double curve_distance(const std::vector<Point>& wp, Point c) {
    double best = distance(c, wp.front());
    for (std::size_t i = 0; i + 1 < wp.size(); ++i) {
        const Point a = wp[i];
        const Point d = wp[i + 1] - a;
        const double len2 = dot(d, d);
        const double t = len2 > 0.0 ? std::clamp(dot(c - a, d) / len2, 0.0, 1.0) : 0.0;
        best = std::min(best, distance(c, a + t * d));
    }
    return best;
}

Point random_unit(Rng& rng) {
    const double a = rng.uniform(0.0, 6.283185307179586);
    return {std::cos(a), std::sin(a)};
}

// ---------------------------------------------------------------------------
// 1. Full-model scanners equal the exact oracle on their candidate families.

Outcome criterion1() {
    int checked = 0;
    int bad = 0;
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Rng rng(mix_seed(101, seed));
        // Up to 40 trajectories and 6 waypoints; total kept near 80 points so
        // the exhaustive rectangle oracle stays cheap.
        const std::size_t n_traj = 5 + rng.below(36);
        const std::size_t wp_max = std::clamp<std::size_t>(80 / n_traj, 1, 6);
        const SyntheticConfig dc{n_traj, 1, wp_max, 0.05, Generator::RandomWalk, seed};
        const auto& fn = seed % 2 ? kLinear : kKull;
        // f on a whole number of trajectories so the +-10% plant window is reachable.
        const double f = std::max(1.0, std::round(0.2 * static_cast<double>(n_traj))) / static_cast<double>(n_traj);
        const Planted pl = plant(generate_synthetic(dc), PlantConfig{ShapeFamily::Disk, Model::Full, 0.3, 0.9, f, seed}, fn);
        const TrajectoryDataset& ds = pl.dataset;
        const LabeledPointSet pts = waypoint_points(ds);
        ExactOptions ex;
        ex.membership = Membership::Waypoints;

        auto compare = [&](double got, double want) {
            const double d = std::abs(got - want);
            worst = std::max(worst, d);
            ++checked;
            if (d > 1e-9) ++bad;
        };
        compare(max_halfplane_full(pts, pts, fn).stats.phi, exact_scan(ds, ShapeFamily::Halfplane, Model::Full, fn, ex).stats.phi);
        compare(max_rect_full(pts, pts, fn, RectGridParams{1e-9}).stats.phi,
                exact_scan(ds, ShapeFamily::Rect, Model::Full, fn, ex).stats.phi);

        const double rp = std::get<Disk>(pl.shape).radius;
        MultiScaleParams ms{0.5 * rp, 2.0 * rp, 0.001, false, true, CoresetTag::AllWaypoints};
        const auto idx = all_indices(ds.size());
        ExactOptions exw = ex;
        exw.window = {ms.r_min, ms.r_max};
        compare(max_disk_multiscale(ds, idx, idx, ms, fn).stats.phi,
                exact_scan(ds, ShapeFamily::Disk, Model::Full, fn, exw).stats.phi);
    }
    return {bad == 0, fmt("%d/%d scanner runs equal exact_scan within 1e-9 (max |diff| %.3g)", checked - bad, checked, worst)};
}

// ---------------------------------------------------------------------------
// 2. Flux reduction: signed endpoint sums equal direct begin/end counting.

Outcome criterion2() {
    std::size_t shapes = 0;
    std::size_t mismatches = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(mix_seed(202, seed));
        const SyntheticConfig dc{10 + rng.below(21), 1, 8, 0.1, Generator::RandomWalk, seed};
        TrajectoryDataset ds = generate_synthetic(dc);
        for (auto& t : ds.trajectories) t.recorded = rng.bernoulli(0.4) ? 1.0 : 0.0;
        const LabeledPointSet flux = flux_reduce(ds);

        auto check = [&](const Shape& c) {
            double r_pts = 0.0;
            double b_pts = 0.0;
            for (const auto& p : flux.points) {
                if (shape_contains(c, p.location)) {
                    r_pts += p.r_weight;
                    b_pts += p.b_weight;
                }
            }
            long long r_dir = 0;
            long long b_dir = 0;
            for (const auto& t : ds.trajectories) {
                const bool bi = shape_contains(c, t.waypoints.front());
                const bool ei = shape_contains(c, t.waypoints.back());
                // Begins inside and ends outside: +r(t), -b(t); the reverse flips both.
                const int dir = (bi && !ei) ? 1 : (!bi && ei) ? -1 : 0;
                r_dir += dir * static_cast<long long>(t.recorded);
                b_dir -= dir * static_cast<long long>(t.baseline);
            }
            ++shapes;
            if (r_pts != static_cast<double>(r_dir) || b_pts != static_cast<double>(b_dir)) ++mismatches;
        };

        // Every candidate the point scanners visit has its boundary on flux
        // points: halfplanes through pairs, disks through pairs and triples,
        // rectangles on coordinate pairs.
        std::vector<Point> locs;
        for (const auto& p : flux.points) locs.push_back(p.location);
        for (std::size_t i = 0; i < locs.size(); ++i) {
            for (std::size_t j = i + 1; j < locs.size(); ++j) {
                if (locs[i] == locs[j]) continue;
                const Point d = locs[j] - locs[i];
                const Point n = (1.0 / norm(d)) * Point{-d.y, d.x};
                check(Halfplane{n, dot(n, locs[i])});
                check(Halfplane{-1.0 * n, -dot(n, locs[i])});
                check(Disk{0.5 * (locs[i] + locs[j]), 0.5 * norm(d)});
                Disk dk;
                if (circumcircle(locs[i], locs[j], locs[rng.below(locs.size())], dk)) check(dk);
                const Point k = locs[rng.below(locs.size())];
                check(Rect{std::min(locs[i].x, locs[j].x), std::max(locs[i].x, locs[j].x), std::min(locs[i].y, k.y),
                           std::max(locs[i].y, k.y)});
            }
        }
        // Scanner maxima agree with the direct computation on the same shapes.
        for (const ScanResult& res : {max_halfplane_points(flux, flux, kLinear), max_disk_points(flux, flux, kLinear),
                                      max_rect_points(flux, flux, kLinear)}) {
            check(res.shape);
            if (std::abs(res.stats.phi - evaluate_dataset(ds, res.shape, Model::Flux, kLinear).phi) > 1e-12) ++mismatches;
        }
    }
    return {mismatches == 0, fmt("%zu candidate shapes on 100 instances, %zu mismatches", shapes, mismatches)};
}

// ---------------------------------------------------------------------------
// 3. Partial estimator from s = 1/(2 eps)^2 arclength-uniform points.

Outcome criterion3() {
    const double eps = 0.05;
    const auto s = static_cast<std::size_t>(std::lround(1.0 / ((2 * eps) * (2 * eps))));
    const Planted pl = plant(generate_synthetic(SyntheticConfig{500, 5, 20, 0.02, Generator::RandomWalk, 3}),
                             PlantConfig{ShapeFamily::Disk, Model::Partial, 0.5, 0.8, 0.05, 3}, kLinear);
    // r(C) is a fraction of recorded arclength, so the sample is drawn from the
    // recorded trajectories.
    TrajectoryDataset rec;
    for (const auto& t : pl.dataset.trajectories)
        if (t.recorded > 0) rec.trajectories.push_back(t);
    Rng rng(303);
    int good = 0;
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
        const Disk c{{rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9)}, rng.uniform(0.05, 0.3)};
        const double exact = evaluate_dataset(pl.dataset, c, Model::Partial, kLinear).r_frac;
        const PartialPoints pp = partial_reduce(rec, 1, s, CoresetTag::RandomSample, mix_seed(304, k));
        double in = 0.0;
        double tot = 0.0;
        for (const auto& p : pp.sample.points) {
            tot += p.r_weight;
            if (contains(c, p.location)) in += p.r_weight;
        }
        const double err = std::abs(in / tot - exact);
        worst = std::max(worst, err);
        if (err <= 2 * eps) ++good;
    }
    return {good >= 190, fmt("s = %zu: %d/200 disks within 2 eps = %.2f (need 190; max error %.3f)", s, good, 2 * eps, worst)};
}

// ---------------------------------------------------------------------------
// 4. Alpha-approximation: no false positives, no missed deep intersections.

struct MethodCase {
    CoresetTag tag;
    std::vector<ShapeFamily> families;
};

Shape deep_shape(Rng& rng, ShapeFamily fam, Point p, double alpha, double r_floor) {
    switch (fam) {
        case ShapeFamily::Halfplane: {
            const Point n = random_unit(rng);
            return Halfplane{n, dot(n, p) + alpha + rng.uniform(0.0, alpha)};
        }
        case ShapeFamily::Disk: {
            const double rad = rng.uniform(std::max(r_floor, 1.5 * alpha), std::max(r_floor, 1.5 * alpha) + 0.2);
            return Disk{p + rng.uniform(0.0, rad - alpha) * random_unit(rng), rad};
        }
        case ShapeFamily::Rect: {
            const double hx = rng.uniform(alpha, alpha + 0.1);
            const double hy = rng.uniform(alpha, alpha + 0.1);
            const Point c{p.x + rng.uniform(-(hx - alpha), hx - alpha), p.y + rng.uniform(-(hy - alpha), hy - alpha)};
            return Rect{c.x - hx, c.x + hx, c.y - hy, c.y + hy};
        }
    }
    throw std::logic_error("unreachable");
}

// A shape that misses the trajectory but passes within about 3 alpha of it.
bool near_miss_shape(Rng& rng, ShapeFamily fam, const std::vector<Point>& wp, double alpha, double r_floor, Shape& out) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        const Point p = random_curve_point(rng, wp);
        switch (fam) {
            case ShapeFamily::Halfplane: {
                const Point n = random_unit(rng);
                double lo = dot(n, wp.front());
                for (const Point& q : wp) lo = std::min(lo, dot(n, q));
                out = Halfplane{n, lo - rng.uniform(1e-9, alpha)};
                break;
            }
            case ShapeFamily::Disk: {
                const double rad = rng.uniform(std::max(r_floor, alpha), std::max(r_floor, alpha) + 0.2);
                const Point c = p + (rad + rng.uniform(0.0, 3 * alpha)) * random_unit(rng);
                const double gap = curve_distance(wp, c);
                if (gap <= 1e-9) continue;
                out = Disk{c, std::min(rad, gap * (1.0 - 1e-9))};
                break;
            }
            case ShapeFamily::Rect: {
                const double hx = rng.uniform(0.0, 0.1);
                const double hy = rng.uniform(0.0, 0.1);
                const Point c = p + Point{rng.uniform(-1, 1) * (hx + 3 * alpha), rng.uniform(-1, 1) * (hy + 3 * alpha)};
                out = Rect{c.x - hx, c.x + hx, c.y - hy, c.y + hy};
                break;
            }
        }
        if (!trajectory_intersects(wp, out)) return true;
    }
    return false;
}

Outcome criterion4() {
    const double alpha = 0.01;
    const double r_kernel = 0.05;
    const std::vector<MethodCase> cases{
        {CoresetTag::Even, {ShapeFamily::Halfplane, ShapeFamily::Disk, ShapeFamily::Rect}},
        {CoresetTag::Gridding, {ShapeFamily::Halfplane, ShapeFamily::Disk, ShapeFamily::Rect}},
        {CoresetTag::RandomSample, {ShapeFamily::Halfplane, ShapeFamily::Disk, ShapeFamily::Rect}},
        {CoresetTag::DouglasPeucker, {ShapeFamily::Halfplane}},
        {CoresetTag::ConvexHull, {ShapeFamily::Halfplane}},
        {CoresetTag::ApproxHull, {ShapeFamily::Halfplane}},
        {CoresetTag::GridKernel, {ShapeFamily::Disk}},
    };
    std::ostringstream detail;
    bool ok = true;
    int pairs = 0;
    for (const auto& mc : cases) {
        for (ShapeFamily fam : mc.families) {
            CoresetMethod m;
            m.tag = mc.tag;
            m.alpha = alpha;
            m.r = r_kernel;
            int fp = 0;
            int fn = 0;
            int skipped = 0;
            Rng rng(mix_seed(404, static_cast<std::uint64_t>(mc.tag) * 8 + static_cast<std::uint64_t>(fam)));
            for (int trial = 0; trial < 1000; ++trial) {
                SyntheticConfig dc{1, 2, 10, 0.05, Generator::RandomWalk, rng.next()};
                Trajectory t = generate_synthetic(dc).trajectories.front();
                t.id = trial;
                m.seed = rng.next();
                const std::vector<Point> core = simplify(t, m);
                const double r_floor = mc.tag == CoresetTag::GridKernel ? r_kernel : 0.0;
                // Gridding snaps points up to alpha/4 off the curve: test it
                // against the shape shrunk by alpha/2.
                const double fp_shrink = mc.tag == CoresetTag::Gridding ? alpha / 2 : 0.0;

                Shape miss;
                if (near_miss_shape(rng, fam, t.waypoints, alpha, r_floor, miss)) {
                    Shape probe = miss;
                    if (fp_shrink == 0.0 || shrink_shape(miss, fp_shrink, probe)) {
                        for (const Point& q : core) {
                            if (shape_contains(probe, q)) {
                                ++fp;
                                break;
                            }
                        }
                    }
                } else {
                    ++skipped;
                }

                const Shape deep = deep_shape(rng, fam, random_curve_point(rng, t.waypoints), alpha, r_floor);
                Shape inner;
                if (!shrink_shape(deep, alpha, inner) || !trajectory_intersects(t.waypoints, inner)) {
                    ++skipped;
                    continue;
                }
                if (std::none_of(core.begin(), core.end(), [&](Point q) { return shape_contains(deep, q); })) ++fn;
            }
            ++pairs;
            if (fp || fn || skipped > 10) {
                ok = false;
                detail << to_string(mc.tag) << '/' << to_string(fam) << " fp=" << fp << " missed=" << fn
                       << " skipped=" << skipped << "; ";
            }
        }
    }

    // Halfplanes meet a trajectory exactly when they hold one of its waypoints.
    int hull_bad = 0;
    Rng rng(405);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto t = generate_synthetic(SyntheticConfig{1, 1, 10, 0.05, Generator::RandomWalk, rng.next()}).trajectories.front();
        const Point n = random_unit(rng);
        const Halfplane h{n, dot(n, random_curve_point(rng, t.waypoints)) + rng.uniform(-0.05, 0.05)};
        const bool any = std::any_of(t.waypoints.begin(), t.waypoints.end(), [&](Point q) { return contains(h, q); });
        if (trajectory_intersects(t.waypoints, h) != any) ++hull_bad;
    }
    if (hull_bad) ok = false;
    detail << pairs << " method/family pairs x 1000 trials" << (ok ? " clean" : "") << "; halfplane waypoint rule "
           << 1000 - hull_bad << "/1000";
    return {ok, detail.str()};
}

// ---------------------------------------------------------------------------
// 5. Coreset size bounds.

Outcome criterion5() {
    Rng rng(505);
    int even_bad = 0;
    int gk_bad = 0;
    int cells_bad = 0;
    for (int k = 0; k < 1000; ++k) {
        const auto t = generate_synthetic(SyntheticConfig{1, 2, 30, 0.05, Generator::RandomWalk, rng.next()}).trajectories.front();
        const double len = arclength(t);
        const double alpha = rng.uniform(0.001, 0.05);
        if (static_cast<double>(even_points(t.waypoints, alpha).size()) > std::ceil(len / alpha) + 1) ++even_bad;
        const double ell = rng.uniform(0.001, 0.1);
        if (static_cast<double>(grid_cells_visited(t.waypoints, ell)) > 9.0 * (len / ell + 1.0)) ++cells_bad;
        if (k < 100) {
            std::size_t prev = simplify_grid_kernel(t.waypoints, 0.001, 0.005).size();
            for (double r = 0.01; r <= 0.64; r *= 2) {
                const std::size_t cur = simplify_grid_kernel(t.waypoints, 0.001, r).size();
                if (cur > prev) ++gk_bad;
                prev = cur;
            }
        }
    }
    return {even_bad == 0 && gk_bad == 0 && cells_bad == 0,
            fmt("Even bound violations %d/1000, GridKernel increases %d (100 polylines, r = 0.005..0.64), "
                "cell bound violations %d/1000",
                even_bad, gk_bad, cells_bad)};
}

// ---------------------------------------------------------------------------
// 6. Sampling guarantee against the exact optimum.

Outcome criterion6() {
    int good = 0;
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        // Two-waypoint trajectories keep the cubic halfplane oracle near 5 s.
        const SyntheticConfig dc{500, 2, 2, 0.02, Generator::RandomWalk, mix_seed(606, seed)};
        const Planted pl = plant(generate_synthetic(dc), PlantConfig{ShapeFamily::Halfplane, Model::Full, 0.5, 0.8, 0.05, seed}, kLinear);
        ExactOptions ex;
        ex.membership = Membership::Waypoints;  // exact for halfplanes
        ex.enforce_guard = false;
        const double best = exact_scan(pl.dataset, ShapeFamily::Halfplane, Model::Full, kLinear, ex).stats.phi;
        ScanSettings st;
        st.model = Model::Full;
        st.family = ShapeFamily::Halfplane;
        st.fn = kLinear;
        st.eps = 0.1;
        st.seed = seed;
        const double got = run_scan(pl.dataset, st).full_stats.phi;
        const double err = std::abs(got - best);
        worst = std::max(worst, err);
        if (err <= st.eps) ++good;
    }
    return {good >= 45, fmt("%d/50 runs with |Phi(C^) - Phi(C*)| <= 0.1 (need 45; max %.4f)", good, worst)};
}

// ---------------------------------------------------------------------------
// 7. Scaled power reproduction.

Outcome criterion7() {
    // n = 1/eps; s from the default size formula, which at eps = 0.01 exceeds
    // the 5000 trajectories and so takes all of them. s = 1/(2 eps)^2 = 2500
    // leaves sampling noise comparable to the planted Phi at f = 0.005.
    auto settings = [](Model model, ShapeFamily fam, const DiscrepancyFn& fn) {
        ScanSettings st;
        st.model = model;
        st.family = fam;
        st.fn = fn;
        st.eps = 0.01;
        st.net_override = 100;
        st.alpha = 0.001;
        st.seed = 77;
        return st;
    };
    const SyntheticConfig data{5000, 5, 20, 0.02, Generator::RandomWalk, 707};
    std::ostringstream detail;
    bool ok = true;
    for (ShapeFamily fam : {ShapeFamily::Rect, ShapeFamily::Halfplane}) {
        const auto rep = power_experiment(data, PlantConfig{fam, Model::Flux, 0.5, 0.8, 0.05, 708},
                                          settings(Model::Flux, fam, kLinear), 10);
        ok = ok && rep.recovery_rate >= 0.8;
        detail << "flux " << to_string(fam) << " recovery " << rep.recovery_rate << "; ";
    }
    ScanSettings disk = settings(Model::Full, ShapeFamily::Disk, kKull);
    disk.r_min = 0.0075;
    disk.r_max = 0.03;
    disk.exact_eval = true;
    const auto rep = power_experiment(data, PlantConfig{ShapeFamily::Disk, Model::Full, 0.5, 0.8, 0.005, 709}, disk, 10);
    ok = ok && rep.recovery_rate >= 0.8;
    double planted = 0.0;
    for (const auto& t : rep.trials) planted += t.planted_phi;
    detail << "multiscale disk (f = 0.005) recovery " << rep.recovery_rate
           << fmt(", mean planted Phi %.6f", planted / static_cast<double>(rep.trials.size()));

    // Kulldorff planted Phi at f = 0.05 against the rate formula.
    const double rc = 0.8 * 0.05 / (0.8 * 0.05 + 0.5 * 0.95);
    double phi05 = 0.0;
    for (std::uint64_t k = 0; k < 10; ++k) {
        SyntheticConfig dc = data;
        dc.seed = mix_seed(data.seed, k);
        phi05 += plant(generate_synthetic(dc), PlantConfig{ShapeFamily::Disk, Model::Full, 0.5, 0.8, 0.05, k}, kKull).stats.phi;
    }
    phi05 /= 10.0;
    const bool phi_ok = std::abs(kKull(rc, 0.05) - 0.00696) <= 0.00005 && std::abs(phi05 - 0.00696) <= 0.15 * 0.00696;
    ok = ok && phi_ok;
    detail << fmt("; Kulldorff at f = 0.05: formula %.5f, planted mean %.5f (target 0.00696)", kKull(rc, 0.05), phi05);
    return {ok, detail.str()};
}

// ---------------------------------------------------------------------------
// 8. MultiScale vs the radius-unrestricted full disk scan.

Outcome criterion8() {
    const Planted pl = plant(generate_synthetic(SyntheticConfig{10000, 5, 20, 0.02, Generator::RandomWalk, 808}),
                             PlantConfig{ShapeFamily::Disk, Model::Full, 0.5, 0.8, 0.05, 808}, kKull);
    ScanSettings st;
    st.model = Model::Full;
    st.family = ShapeFamily::Disk;
    st.fn = kKull;
    st.eps = 0.2;
    st.net_override = 8;
    st.sample_override = 100;
    st.alpha = 0.001;
    st.r_min = 0.01;
    st.r_max = 0.16;
    st.exact_eval = true;
    st.seed = 8;
    const ScanRun ms = run_scan(pl.dataset, st);
    st.naive_disk = true;
    const ScanRun naive = run_scan(pl.dataset, st);
    const double speedup = naive.runtime_ms / std::max(ms.runtime_ms, 1e-3);
    const double gap = std::abs(ms.full_stats.phi - naive.full_stats.phi);
    return {speedup >= 5.0 && gap <= st.eps,
            fmt("n = %zu, s = %zu (%zu / %zu points): multiscale %.1f s, naive %.1f s, speedup %.1fx; "
                "Phi %.6f vs %.6f",
                ms.n, ms.s, ms.n_k, ms.s_k, ms.runtime_ms / 1000, naive.runtime_ms / 1000, speedup,
                ms.full_stats.phi, naive.full_stats.phi)};
}

// ---------------------------------------------------------------------------
// 9. CLI determinism.

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome criterion9() {
    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / "trajscan_acceptance";
    fs::remove_all(root);
    const std::string cli = TRAJSCAN_CLI;
    struct Cmd {
        std::string name;
        std::string args;             // {in}, {small} and {out} are substituted
        std::vector<std::string> files;
    };
    const std::vector<Cmd> cmds{
        {"plant", "plant --n-traj 400 --model full --family disk --fn kulldorff --seed 9 -o {out}/a.csv --region {out}/a.json",
         {"a.csv", "a.json"}},
        {"plant-small", "plant --n-traj 30 --wp-min 2 --wp-max 4 --model full --family disk --fn linear --f 0.2 --seed 9 -o {out}/b.csv "
                        "--region {out}/b.json",
         {"b.csv", "b.json"}},
        {"simplify", "simplify -i {in} --method grid_kernel --alpha 0.005 --r 0.02 -o {out}/core.csv", {"core.csv"}},
        {"scan-full-disk", "scan -i {in} --model full --family disk --fn kulldorff --eps 0.2 --alpha 0.005 --r-min 0.02 "
                           "--r-max 0.08 --no-timing --seed 3 -o {out}/s1.json",
         {"s1.json"}},
        {"scan-partial-rect", "scan -i {in} --model partial --family rect --eps 0.1 --no-timing --seed 3 -o {out}/s2.json",
         {"s2.json"}},
        {"scan-flux-halfplane", "scan -i {in} --model flux --family halfplane --fn linear --eps 0.05 --no-timing --seed 3 -o {out}/s3.json",
         {"s3.json"}},
        {"oracle", "oracle -i {small} --model flux --family rect --fn linear --no-timing -o {out}/o.json", {"o.json"}},
        {"power", "power --n-traj 300 --trials 2 --model full --family halfplane --eps 0.1 --no-timing --seed 4 "
                  "--csv {out}/p.csv -o {out}/p.json",
         {"p.csv", "p.json"}},
    };
    auto expand = [](std::string s, const std::string& key, const std::string& val) {
        for (std::size_t pos; (pos = s.find(key)) != std::string::npos;) s.replace(pos, key.size(), val);
        return s;
    };
    std::vector<std::string> differ;
    std::vector<std::string> failed;
    for (const char* run : {"run1", "run2"}) {
        const fs::path out = root / run;
        fs::create_directories(out);
        for (const auto& c : cmds) {
            std::string args = expand(c.args, "{out}", out.string());
            args = expand(args, "{in}", (out / "a.csv").string());
            args = expand(args, "{small}", (out / "b.csv").string());
            const std::string line = "\"" + cli + "\" " + args + " > \"" + (out / (c.name + ".stdout")).string() + "\"";
            if (std::system(line.c_str()) != 0) failed.push_back(c.name);
        }
    }
    for (const auto& c : cmds) {
        std::vector<std::string> files = c.files;
        files.push_back(c.name + ".stdout");
        for (const auto& f : files) {
            const std::string a = slurp(root / "run1" / f);
            const std::string b = slurp(root / "run2" / f);
            if (a.empty() && f.find(".stdout") == std::string::npos) differ.push_back(f + " (empty)");
            else if (a != b) differ.push_back(f);
        }
    }
    std::ostringstream detail;
    detail << cmds.size() << " invocations run twice";
    if (!failed.empty()) {
        detail << "; nonzero exit:";
        for (const auto& f : failed) detail << ' ' << f;
    }
    if (!differ.empty()) {
        detail << "; differing outputs:";
        for (const auto& f : differ) detail << ' ' << f;
    } else {
        detail << "; all outputs byte-identical";
    }
    if (failed.empty() && differ.empty()) fs::remove_all(root);
    return {failed.empty() && differ.empty(), detail.str()};
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;  // <= 0: no runtime bound
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, "oracle equivalence (full model)", 120, criterion1},
        {2, "flux reduction equivalence", 60, criterion2},
        {3, "partial estimator", 120, criterion3},
        {4, "alpha-approximation suite", 180, criterion4},
        {5, "coreset size bounds", 60, criterion5},
        {6, "sampling guarantee", 600, criterion6},
        {7, "scaled power reproduction", 1800, criterion7},
        {8, "multiscale vs naive disk scan", 1200, criterion8},
        {9, "CLI determinism", 0, criterion9},
    };
    std::set<int> pick;
    for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& c : all) {
        if (!pick.empty() && !pick.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = c.budget_s <= 0 || secs <= c.budget_s;
        const bool pass = o.pass && in_time;
        if (!pass) ++failures;
        std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail
                  << fmt(" [%.1f s", secs) << (c.budget_s > 0 ? fmt(" of %.0f s]", c.budget_s) : std::string("]"))
                  << (in_time ? "" : " over budget") << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
