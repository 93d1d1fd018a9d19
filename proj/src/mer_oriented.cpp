#include "mer/mer_oriented.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "mer/errors.hpp"
#include "mer/pst.hpp"

namespace mer {

namespace {

bool lex_sorted_less(const Point& a, const Point& b) { return lex_less(a, b); }

// Parameter interval of the line a + t*(b - a) inside the closed region.
// Both endpoints of the pair lie in the region, so the interval covers [0, 1].
std::pair<double, double> clip_line(const Point& a, const Point& b,
                                    const Region& region) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    auto cut = [&](double d, double w) {
        // constraint: d * t <= w
        if (d == 0.0) return;
        double bound = w / d;
        if (d > 0.0)
            hi = std::min(hi, bound);
        else
            lo = std::max(lo, bound);
    };
    const double dx = b.x - a.x, dy = b.y - a.y;
    cut(dx, region.x_max - a.x);
    cut(-dx, a.x - region.x_min);
    cut(dy, region.y_max - a.y);
    cut(-dy, a.y - region.y_min);
    return {lo, hi};
}

struct Frame {
    Point a;
    Point b;
    double dx, dy, len;

    explicit Frame(const Point& a_, const Point& b_)
        : a(a_), b(b_), dx(b_.x - a_.x), dy(b_.y - a_.y) {
        len = std::hypot(dx, dy);
    }

    Point at(double t) const { return {a.x + t * dx, a.y + t * dy}; }
    double param(const Point& q) const {
        return ((q.x - a.x) * dx + (q.y - a.y) * dy) / (dx * dx + dy * dy);
    }
    double signed_dist(const Point& q) const { return cross(a, b, q) / len; }
    // side > 0 is the counter-clockwise side of a->b
    Point normal(int side) const {
        return {side * -dy / len, side * dx / len};
    }
};

// Largest depth for which the swept rectangle over [ta, tb] stays inside the
// closed region: a minimum over the two far corners' coordinate constraints.
double depth_cap(const Frame& f, double ta, double tb, const Point& nhat,
                 const Region& region) {
    double cap = std::numeric_limits<double>::infinity();
    auto corner = [&](const Point& c) {
        if (nhat.x > 0.0) cap = std::min(cap, (region.x_max - c.x) / nhat.x);
        if (nhat.x < 0.0) cap = std::min(cap, (region.x_min - c.x) / nhat.x);
        if (nhat.y > 0.0) cap = std::min(cap, (region.y_max - c.y) / nhat.y);
        if (nhat.y < 0.0) cap = std::min(cap, (region.y_min - c.y) / nhat.y);
    };
    corner(f.at(ta));
    corner(f.at(tb));
    return std::max(cap, 0.0);
}

OrientedRect make_rect(const Frame& f, double ta, double tb, double depth,
                       const Point& nhat) {
    const Point A = f.at(ta);
    const Point B = f.at(tb);
    const Point A2{A.x + depth * nhat.x, A.y + depth * nhat.y};
    const Point B2{B.x + depth * nhat.x, B.y + depth * nhat.y};
    OrientedRect r;
    // counter-clockwise: nhat left of A->B decides the winding
    if ((f.dx * nhat.y - f.dy * nhat.x) > 0.0)
        r.corners = {A, B, B2, A2};
    else
        r.corners = {A2, B2, B, A};
    // canonical start corner for deterministic comparisons
    int start = 0;
    for (int i = 1; i < 4; ++i)
        if (lex_less(r.corners[i], r.corners[start])) start = i;
    std::array<Point, 4> rot;
    for (int i = 0; i < 4; ++i) rot[i] = r.corners[(start + i) % 4];
    r.corners = rot;
    return r;
}

bool corner_list_less(const OrientedRect& a, const OrientedRect& b) {
    for (int i = 0; i < 4; ++i) {
        if (a.corners[i] == b.corners[i]) continue;
        return lex_less(a.corners[i], b.corners[i]);
    }
    return false;
}

}  // namespace

std::pair<std::size_t, std::size_t> partition_by_line(std::vector<Point>& pts,
                                                      std::size_t i,
                                                      std::size_t j) {
    const std::size_t n = pts.size();
    if (!(i >= 1 && i < j && j <= n)) throw input_error("bad pair indices");
    if (i != 1) std::swap(pts[0], pts[i - 1]);
    if (j != 2) std::swap(pts[1], pts[j - 1]);
    const Point a = pts[0], b = pts[1];

    auto below = [&](const Point& q) {
        const double c = cross(a, b, q);
        if (c == 0.0) throw input_error("collinear point");
        return c < 0.0;
    };

    std::size_t lo = 3, hi = n;  // 1-based
    while (lo <= hi) {
        while (lo <= hi && below(pts[lo - 1])) ++lo;
        while (lo <= hi && !below(pts[hi - 1])) --hi;
        if (lo >= hi) break;
        std::swap(pts[lo - 1], pts[hi - 1]);
        ++lo;
        --hi;
    }
    const std::size_t n1 = lo - 3;
    return {n1, n - 2 - n1};
}

void sort_side_by_distance(std::vector<Point>& pts, std::size_t lo,
                           std::size_t hi, const Point& a, const Point& b) {
    if (lo >= hi) return;
    // distances recomputed per comparison; |cross| orders the same way
    auto closer = [&](const Point& p, const Point& q) {
        const double dp = std::abs(cross(a, b, p));
        const double dq = std::abs(cross(a, b, q));
        if (dp != dq) return dp < dq;
        return project_onto_line(p, a, b) < project_onto_line(q, a, b);
    };
    heap_sort(pts.begin() + static_cast<std::ptrdiff_t>(lo - 1),
              pts.begin() + static_cast<std::ptrdiff_t>(hi), closer);
}

namespace {

// One falling curtain: top side on the pair's line, descending toward the
// sorted segment [lo, hi].  Reports through `emit`; returns false if the
// sink stopped.
bool curtain(std::vector<Point>& pts, std::size_t lo, std::size_t hi,
             const Frame& f, int side, const Region& region,
             const OrientedSink& sink, std::size_t& count) {
    const Point nhat = f.normal(side);
    auto [ta, tb] = clip_line(f.a, f.b, region);
    auto emit = [&](double t0, double t1, double depth) {
        OrientedRect rect = make_rect(f, t0, t1, depth, nhat);
        ++count;
        return sink(OrientedMerRecord{rect, area(rect), perimeter(rect),
                                      {f.a, f.b}});
    };
    for (std::size_t r = lo; r <= hi; ++r) {
        const Point& q = pts[r - 1];
        const double d = std::abs(f.signed_dist(q));
        // where the full-span descent would leave the region, the report is
        // capped there; narrowing at the projection may deepen later reports
        const double cap = depth_cap(f, ta, tb, nhat, region);
        if (!emit(ta, tb, std::min(d, cap))) return false;
        const double tq = f.param(q);
        if (tq > 0.0 && tq < 1.0) return true;  // blocked between the pair
        if (tq <= 0.0)
            ta = std::max(ta, tq);
        else
            tb = std::min(tb, tq);
    }
    return emit(ta, tb, depth_cap(f, ta, tb, nhat, region));
}

}  // namespace

std::size_t process_pair(std::vector<Point>& pts, std::size_t i, std::size_t j,
                         const Region& region, const OrientedSink& sink) {
    auto [n1, n2] = partition_by_line(pts, i, j);
    const Frame f(pts[0], pts[1]);
    sort_side_by_distance(pts, 3, 2 + n1, f.a, f.b);
    sort_side_by_distance(pts, 3 + n1, 2 + n1 + n2, f.a, f.b);

    std::size_t count = 0;
    bool go = curtain(pts, 3, 2 + n1, f, -1, region, sink, count);
    if (go) curtain(pts, 3 + n1, 2 + n1 + n2, f, +1, region, sink, count);

    heap_sort(pts.begin(), pts.end(), lex_sorted_less);
    return count;
}

std::size_t enumerate_oriented(std::vector<Point>& pts, const Region& region,
                               const OrientedSink& sink,
                               WorkspaceMeter* meter) {
    const std::size_t n = pts.size();
    if (n < 2) throw input_error("insufficient points");
    if (!region.valid()) throw input_error("invalid region");
    for (const Point& p : pts) {
        if (!finite(p)) throw input_error("non-finite coordinate");
        if (!region.contains(p)) throw input_error("point outside region");
    }
    MeterCharge scratch(meter, 32);

    heap_sort(pts.begin(), pts.end(), lex_sorted_less);
    for (std::size_t r = 1; r < n; ++r)
        if (pts[r - 1] == pts[r]) throw input_error("duplicate point");

    std::size_t count = 0;
    bool go = true;
    OrientedSink gate = [&](const OrientedMerRecord& r) {
        go = sink(r);
        return go;
    };
    for (std::size_t i = 1; i < n && go; ++i)
        for (std::size_t j = i + 1; j <= n && go; ++j)
            count += process_pair(pts, i, j, region, gate);
    return count;
}

OrientedMerRecord largest_oriented(std::vector<Point>& pts,
                                   const Region& region, Objective objective,
                                   WorkspaceMeter* meter) {
    std::optional<OrientedMerRecord> best;
    auto value = [&](const OrientedMerRecord& r) {
        return objective == Objective::Area ? r.area : r.perimeter;
    };
    enumerate_oriented(
        pts, region,
        [&](const OrientedMerRecord& r) {
            if (!best || value(r) > value(*best) ||
                (value(r) == value(*best) &&
                 corner_list_less(r.rect, best->rect)))
                best = r;
            return true;
        },
        meter);
    return *best;
}

}  // namespace mer
