#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace trajscan {

/// Boundary tolerance used by every containment predicate.
inline constexpr double kGeomTol = 1e-12;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double norm(Point a);
double distance(Point a, Point b);

struct Segment {
    Point a;
    Point b;
};

double length(const Segment& s);

/// Closed halfplane {p : normal . p <= offset} with a unit normal.
struct Halfplane {
    Point normal{0.0, 1.0};
    double offset = 0.0;
};

/// Closed disk.
struct Disk {
    Point center;
    double radius = 1.0;
};

/// Closed axis-aligned rectangle.
struct Rect {
    double x_lo = 0.0;
    double x_hi = 1.0;
    double y_lo = 0.0;
    double y_hi = 1.0;
};

using Shape = std::variant<Halfplane, Disk, Rect>;

enum class ShapeFamily { Halfplane, Disk, Rect };

std::string to_string(ShapeFamily family);
ShapeFamily parse_shape_family(const std::string& name);
ShapeFamily family_of(const Shape& shape);

/// Throws std::invalid_argument when the shape violates its invariants.
void validate(const Shape& shape);

/// Halfplane through `on_boundary` whose inward normal direction is `normal`
/// (normalized internally).
Halfplane halfplane_through(Point on_boundary, Point normal);

bool shape_contains(const Shape& shape, Point p);
inline bool contains(const Halfplane& h, Point p) { return dot(h.normal, p) <= h.offset + kGeomTol; }
bool contains(const Disk& d, Point p);
inline bool contains(const Rect& r, Point p) {
    return p.x >= r.x_lo - kGeomTol && p.x <= r.x_hi + kGeomTol && p.y >= r.y_lo - kGeomTol &&
           p.y <= r.y_hi + kGeomTol;
}

/// Parameter sub-interval [t0, t1] of a + t (b - a), t in [0, 1], inside the
/// shape. Empty when t0 > t1.
struct ClipInterval {
    double t0 = 1.0;
    double t1 = 0.0;
    [[nodiscard]] bool empty() const { return t0 > t1; }
};

ClipInterval clip_segment(const Segment& seg, const Shape& shape);

/// Exact length of seg intersected with shape.
double segment_clip_length(const Segment& seg, const Shape& shape);

/// True iff the polyline (or the single point when it has one vertex) meets the shape.
bool trajectory_intersects(std::span<const Point> waypoints, const Shape& shape);

/// Shape moved inward by `amount` (disk radius shrinks, rect sides move in,
/// halfplane offset drops). Returns false when nothing remains.
bool shrink_shape(const Shape& shape, double amount, Shape& out);

struct LiftedPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

LiftedPoint veronese_lift(Point p);

/// Membership of a lifted point in the halfspace image of a disk:
/// z - 2 c.x x - 2 c.y y <= r^2 - |c|^2.
bool lifted_contains(const Disk& d, const LiftedPoint& lp);

/// Counter-clockwise convex hull (Andrew's monotone chain), collinear points dropped.
std::vector<Point> convex_hull(std::span<const Point> points);

/// Indices (first occurrence) of the points whose lift is a vertex of the 3D
/// convex hull of the lifted set.
std::vector<std::size_t> lifted_hull_indices(std::span<const Point> points);

/// Subset K of the input with max_u (max_P u.p - max_K u.p) <= kappa * diam(P).
std::vector<Point> alpha_kernel(std::span<const Point> points, double kappa);

/// max over unit directions of (support of `outer` - support of `inner`),
/// computed exactly from the hulls. `inner` is assumed to be a subset.
double directional_width_error(std::span<const Point> outer, std::span<const Point> inner);

double diameter(std::span<const Point> points);

/// Smallest disk through three points; false for (near-)collinear input.
bool circumcircle(Point a, Point b, Point c, Disk& out);

}  // namespace trajscan
