#include "trajscan/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace trajscan {

double norm(Point a) { return std::hypot(a.x, a.y); }
double distance(Point a, Point b) { return norm(a - b); }
double length(const Segment& s) { return distance(s.a, s.b); }

std::string to_string(ShapeFamily family) {
    switch (family) {
        case ShapeFamily::Halfplane: return "halfplane";
        case ShapeFamily::Disk: return "disk";
        case ShapeFamily::Rect: return "rect";
    }
    return "unknown";
}

ShapeFamily parse_shape_family(const std::string& name) {
    if (name == "halfplane") return ShapeFamily::Halfplane;
    if (name == "disk") return ShapeFamily::Disk;
    if (name == "rect" || name == "rectangle") return ShapeFamily::Rect;
    throw std::invalid_argument("unknown shape family: " + name);
}

ShapeFamily family_of(const Shape& shape) {
    return static_cast<ShapeFamily>(shape.index());
}

void validate(const Shape& shape) {
    if (const auto* h = std::get_if<Halfplane>(&shape)) {
        if (std::abs(norm(h->normal) - 1.0) > 1e-12 || !std::isfinite(h->offset))
            throw std::invalid_argument("halfplane normal must be unit length");
    } else if (const auto* d = std::get_if<Disk>(&shape)) {
        if (!(d->radius > 0.0) || !std::isfinite(d->radius))
            throw std::invalid_argument("disk radius must be positive and finite");
    } else {
        const auto& r = std::get<Rect>(shape);
        if (!(r.x_lo <= r.x_hi) || !(r.y_lo <= r.y_hi))
            throw std::invalid_argument("rectangle bounds out of order");
    }
}

Halfplane halfplane_through(Point on_boundary, Point normal) {
    const double len = norm(normal);
    const Point n{normal.x / len, normal.y / len};
    return Halfplane{n, dot(n, on_boundary)};
}

bool contains(const Disk& d, Point p) { return distance(p, d.center) <= d.radius + kGeomTol; }

bool shape_contains(const Shape& shape, Point p) {
    return std::visit([p](const auto& s) { return contains(s, p); }, shape);
}

namespace {

ClipInterval clip(const Segment& seg, const Halfplane& h) {
    const double f0 = dot(h.normal, seg.a) - h.offset;
    const double f1 = dot(h.normal, seg.b) - h.offset;
    if (f0 <= 0.0 && f1 <= 0.0) return {0.0, 1.0};
    if (f0 > 0.0 && f1 > 0.0) return {};
    const double t = f0 / (f0 - f1);
    return f0 <= 0.0 ? ClipInterval{0.0, t} : ClipInterval{t, 1.0};
}

ClipInterval clip(const Segment& seg, const Disk& d) {
    const Point dir = seg.b - seg.a;
    const Point rel = seg.a - d.center;
    const double a = dot(dir, dir);
    const double c = dot(rel, rel) - d.radius * d.radius;
    if (a == 0.0) return c <= 0.0 ? ClipInterval{0.0, 1.0} : ClipInterval{};
    const double b = dot(dir, rel);
    const double disc = b * b - a * c;
    if (disc < 0.0) return {};
    const double sq = std::sqrt(disc);
    // Stable roots of a t^2 + 2 b t + c.
    double t0;
    double t1;
    if (b >= 0.0) {
        const double q = -(b + sq);
        t0 = q / a;
        t1 = q != 0.0 ? c / q : 0.0;
    } else {
        const double q = -b + sq;
        t1 = q / a;
        t0 = c / q;
    }
    if (t0 > t1) std::swap(t0, t1);
    return {std::max(t0, 0.0), std::min(t1, 1.0)};
}

ClipInterval clip(const Segment& seg, const Rect& r) {
    const Point dir = seg.b - seg.a;
    double t0 = 0.0;
    double t1 = 1.0;
    const double p[4] = {-dir.x, dir.x, -dir.y, dir.y};
    const double q[4] = {seg.a.x - r.x_lo, r.x_hi - seg.a.x, seg.a.y - r.y_lo, r.y_hi - seg.a.y};
    for (int i = 0; i < 4; ++i) {
        if (p[i] == 0.0) {
            if (q[i] < 0.0) return {};
            continue;
        }
        const double t = q[i] / p[i];
        if (p[i] < 0.0) {
            t0 = std::max(t0, t);
        } else {
            t1 = std::min(t1, t);
        }
    }
    return {t0, t1};
}

}  // namespace

ClipInterval clip_segment(const Segment& seg, const Shape& shape) {
    return std::visit([&seg](const auto& s) { return clip(seg, s); }, shape);
}

double segment_clip_length(const Segment& seg, const Shape& shape) {
    const ClipInterval iv = clip_segment(seg, shape);
    if (iv.empty()) return 0.0;
    return (iv.t1 - iv.t0) * length(seg);
}

bool trajectory_intersects(std::span<const Point> waypoints, const Shape& shape) {
    for (const Point& p : waypoints) {
        if (shape_contains(shape, p)) return true;
    }
    for (std::size_t i = 1; i < waypoints.size(); ++i) {
        if (!clip_segment(Segment{waypoints[i - 1], waypoints[i]}, shape).empty()) return true;
    }
    return false;
}

bool shrink_shape(const Shape& shape, double amount, Shape& out) {
    if (const auto* h = std::get_if<Halfplane>(&shape)) {
        out = Halfplane{h->normal, h->offset - amount};
        return true;
    }
    if (const auto* d = std::get_if<Disk>(&shape)) {
        if (d->radius - amount <= 0.0) return false;
        out = Disk{d->center, d->radius - amount};
        return true;
    }
    const auto& r = std::get<Rect>(shape);
    Rect s{r.x_lo + amount, r.x_hi - amount, r.y_lo + amount, r.y_hi - amount};
    if (s.x_lo > s.x_hi || s.y_lo > s.y_hi) return false;
    out = s;
    return true;
}

LiftedPoint veronese_lift(Point p) { return {p.x, p.y, p.x * p.x + p.y * p.y}; }

bool lifted_contains(const Disk& d, const LiftedPoint& lp) {
    const Point c = d.center;
    const double lhs = lp.z - 2.0 * c.x * lp.x - 2.0 * c.y * lp.y + dot(c, c);
    const double r = d.radius + kGeomTol;
    return lhs <= r * r;
}

std::vector<Point> convex_hull(std::span<const Point> points) {
    std::vector<Point> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(),
              [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;

    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (const Point& p : pts) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
        hull[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = pts.size() - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

std::vector<std::size_t> lifted_hull_indices(std::span<const Point> points) {
    // Every point of the paraboloid z = x^2 + y^2 is a vertex of the hull of any
    // lifted set containing it: the tangent plane at v(p) strictly separates
    // v(p) from every other lifted point. Only repeats are dropped.
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const Point pa = points[a];
        const Point pb = points[b];
        return pa.x < pb.x || (pa.x == pb.x && pa.y < pb.y);
    });
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i == 0 || !(points[order[i]] == points[order[i - 1]])) keep.push_back(order[i]);
    }
    std::sort(keep.begin(), keep.end());
    return keep;
}

double diameter(std::span<const Point> points) {
    const std::vector<Point> hull = convex_hull(points);
    double best = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        for (std::size_t j = i + 1; j < hull.size(); ++j) best = std::max(best, distance(hull[i], hull[j]));
    }
    return best;
}

namespace {

double point_segment_distance(Point p, Point a, Point b) {
    const Point d = b - a;
    const double len2 = dot(d, d);
    if (len2 == 0.0) return distance(p, a);
    const double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
    return distance(p, a + t * d);
}

// Distance from p to a CCW convex polygon (0 inside).
double distance_to_convex(Point p, const std::vector<Point>& poly) {
    if (poly.size() == 1) return distance(p, poly[0]);
    if (poly.size() == 2) return point_segment_distance(p, poly[0], poly[1]);
    bool inside = true;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point a = poly[i];
        const Point b = poly[(i + 1) % poly.size()];
        if (cross(b - a, p - a) < 0.0) inside = false;
        best = std::min(best, point_segment_distance(p, a, b));
    }
    return inside ? 0.0 : best;
}

}  // namespace

double directional_width_error(std::span<const Point> outer, std::span<const Point> inner) {
    // For convex K inside P the largest support-function gap equals the
    // Hausdorff distance, attained at a vertex of P.
    const std::vector<Point> hp = convex_hull(outer);
    const std::vector<Point> hk = convex_hull(inner);
    if (hk.empty()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (const Point& p : hp) worst = std::max(worst, distance_to_convex(p, hk));
    return worst;
}

std::vector<Point> alpha_kernel(std::span<const Point> points, double kappa) {
    if (points.empty()) throw std::invalid_argument("alpha_kernel: empty input");
    if (!(kappa > 0.0)) throw std::invalid_argument("alpha_kernel: kappa must be positive");
    const std::vector<Point> hull = convex_hull(points);
    const std::size_t h = hull.size();
    if (h <= 3) return hull;

    double diam = 0.0;
    for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t j = i + 1; j < h; ++j) diam = std::max(diam, distance(hull[i], hull[j]));
    }
    const double tol = kappa * diam;

    // Greedy chord walk around the hull: a dropped vertex lies outside the chord
    // that replaces it, so its distance to that chord is its distance to the
    // kernel's hull.
    auto chord_ok = [&](std::size_t from, std::size_t to) {
        for (std::size_t k = from + 1; k < to; ++k) {
            if (point_segment_distance(hull[k % h], hull[from % h], hull[to % h]) > tol) return false;
        }
        return true;
    };
    std::vector<Point> kernel{hull[0]};
    std::size_t from = 0;
    while (from < h) {
        std::size_t to = from + 1;
        while (to < h && chord_ok(from, to + 1)) ++to;
        if (to >= h) break;
        kernel.push_back(hull[to]);
        from = to;
    }
    return kernel;
}

bool circumcircle(Point a, Point b, Point c, Disk& out) {
    const Point ab = b - a;
    const Point ac = c - a;
    const double d = 2.0 * cross(ab, ac);
    if (std::abs(d) <= 1e-14 * norm(ab) * norm(ac)) return false;
    const double ab2 = dot(ab, ab);
    const double ac2 = dot(ac, ac);
    const Point rel{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
    out = Disk{a + rel, norm(rel)};
    return out.radius > 0.0;
}

}  // namespace trajscan
