#ifndef MER_GEOM_HPP
#define MER_GEOM_HPP

#include <array>
#include <cmath>

namespace mer {

struct Point {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point&) const = default;
};

// (x, then y) order; the tie-break order used everywhere a total order on
// points is needed.
inline bool lex_less(const Point& a, const Point& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
}

inline double cross(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline bool finite(const Point& p) {
    return std::isfinite(p.x) && std::isfinite(p.y);
}

// Closed axis-parallel region the point set lives in; x_min < x_max and
// y_min < y_max.
struct Region {
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;

    bool valid() const { return x_min < x_max && y_min < y_max; }

    bool contains(const Point& p) const {
        return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
    }
};

// x0 <= x1, y0 <= y1; zero-width or zero-height rectangles are legal values
// but are only produced as intermediates.
struct AxisRect {
    double x0 = 0.0;
    double y0 = 0.0;
    double x1 = 0.0;
    double y1 = 0.0;

    bool operator==(const AxisRect&) const = default;
};

inline bool lex_less(const AxisRect& a, const AxisRect& b) {
    if (a.x0 != b.x0) return a.x0 < b.x0;
    if (a.y0 != b.y0) return a.y0 < b.y0;
    if (a.x1 != b.x1) return a.x1 < b.x1;
    return a.y1 < b.y1;
}

double area(const AxisRect& r);
double perimeter(const AxisRect& r);

// Open-interior test: points on the boundary do not count as inside.
bool strictly_inside(const Point& p, const AxisRect& r);

inline bool inside_region(const AxisRect& r, const Region& reg) {
    return r.x0 >= reg.x_min && r.x1 <= reg.x_max && r.y0 >= reg.y_min &&
           r.y1 <= reg.y_max;
}

// Rectangle of arbitrary orientation, corners in counter-clockwise order.
struct OrientedRect {
    std::array<Point, 4> corners{};

    bool valid() const;
};

double area(const OrientedRect& r);
double perimeter(const OrientedRect& r);

// Open-interior test via four half-plane checks, each strict against a
// tolerance of 1e-12 scaled by the edge length.
bool strictly_inside_oriented(const Point& p, const OrientedRect& r);

// Scalar t with the foot of the perpendicular from p at a + t*(b - a).
// Throws input_error when a == b.
double project_onto_line(const Point& p, const Point& a, const Point& b);

// Perpendicular distance from p to the line through a and b (a != b).
double distance_to_line(const Point& p, const Point& a, const Point& b);

}  // namespace mer

#endif
