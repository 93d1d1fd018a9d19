#include "mer/geom.hpp"

#include "mer/errors.hpp"

namespace mer {

namespace {

double edge_len(const Point& a, const Point& b) {
    return std::hypot(b.x - a.x, b.y - a.y);
}

}  // namespace

double area(const AxisRect& r) { return (r.x1 - r.x0) * (r.y1 - r.y0); }

double perimeter(const AxisRect& r) {
    return 2.0 * ((r.x1 - r.x0) + (r.y1 - r.y0));
}

bool strictly_inside(const Point& p, const AxisRect& r) {
    return p.x > r.x0 && p.x < r.x1 && p.y > r.y0 && p.y < r.y1;
}

bool OrientedRect::valid() const {
    for (int i = 0; i < 4; ++i) {
        const Point& a = corners[i];
        const Point& b = corners[(i + 1) % 4];
        const Point& c = corners[(i + 2) % 4];
        double ex = b.x - a.x, ey = b.y - a.y;
        double fx = c.x - b.x, fy = c.y - b.y;
        double dot = ex * fx + ey * fy;
        double le = std::hypot(ex, ey), lf = std::hypot(fx, fy);
        if (std::abs(dot) > 1e-9 * std::max(le * lf, 1e-300)) return false;
    }
    double l0 = edge_len(corners[0], corners[1]);
    double l1 = edge_len(corners[1], corners[2]);
    double l2 = edge_len(corners[2], corners[3]);
    double l3 = edge_len(corners[3], corners[0]);
    return std::abs(l0 - l2) <= 1e-9 * (1.0 + l0 + l2) &&
           std::abs(l1 - l3) <= 1e-9 * (1.0 + l1 + l3);
}

double area(const OrientedRect& r) {
    return edge_len(r.corners[0], r.corners[1]) *
           edge_len(r.corners[1], r.corners[2]);
}

double perimeter(const OrientedRect& r) {
    return 2.0 * (edge_len(r.corners[0], r.corners[1]) +
                  edge_len(r.corners[1], r.corners[2]));
}

bool strictly_inside_oriented(const Point& p, const OrientedRect& r) {
    // p must be strictly left of every directed edge of the CCW boundary.
    for (int i = 0; i < 4; ++i) {
        const Point& a = r.corners[i];
        const Point& b = r.corners[(i + 1) % 4];
        double c = cross(a, b, p);
        if (c <= 1e-12 * edge_len(a, b)) return false;
    }
    return true;
}

double project_onto_line(const Point& p, const Point& a, const Point& b) {
    if (a == b) throw input_error("degenerate line");
    double dx = b.x - a.x, dy = b.y - a.y;
    return ((p.x - a.x) * dx + (p.y - a.y) * dy) / (dx * dx + dy * dy);
}

double distance_to_line(const Point& p, const Point& a, const Point& b) {
    if (a == b) throw input_error("degenerate line");
    return std::abs(cross(a, b, p)) / edge_len(a, b);
}

}  // namespace mer
