#include "mer/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mer/errors.hpp"
#include "mer/pst.hpp"

namespace mer {

namespace {

bool in_query(const Point& p, double x0, double x1, double y1) {
    return p.x >= x0 && p.x <= x1 && p.y >= y1;
}

bool rect_empty(std::span<const Point> pts, const AxisRect& r) {
    for (const Point& p : pts)
        if (strictly_inside(p, r)) return false;
    return true;
}

std::vector<double> candidate_coords(std::span<const Point> pts, double lo,
                                     double hi, bool use_x) {
    std::vector<double> v;
    v.reserve(pts.size() + 2);
    v.push_back(lo);
    v.push_back(hi);
    for (const Point& p : pts) v.push_back(use_x ? p.x : p.y);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

std::optional<Point> oracle_min_x(std::span<const Point> pts, double x0,
                                  double x1, double y1) {
    if (x0 > x1) throw input_error("empty interval");
    std::optional<Point> best;
    for (const Point& p : pts)
        if (in_query(p, x0, x1, y1) && (!best || lex_less(p, *best))) best = p;
    return best;
}

std::optional<Point> oracle_max_x(std::span<const Point> pts, double x0,
                                  double x1, double y1) {
    if (x0 > x1) throw input_error("empty interval");
    std::optional<Point> best;
    for (const Point& p : pts)
        if (in_query(p, x0, x1, y1) && (!best || lex_less(*best, p))) best = p;
    return best;
}

std::optional<Point> oracle_max_y(std::span<const Point> pts, double x0,
                                  double x1) {
    if (x0 > x1) throw input_error("empty interval");
    std::optional<Point> best;
    for (const Point& p : pts)
        if (p.x >= x0 && p.x <= x1 &&
            (!best || priority_better(PriorityMode::MaxY, p, *best)))
            best = p;
    return best;
}

std::vector<Point> oracle_enum(std::span<const Point> pts, double x0, double x1,
                               double y1) {
    if (x0 > x1) throw input_error("empty interval");
    std::vector<Point> out;
    for (const Point& p : pts)
        if (in_query(p, x0, x1, y1)) out.push_back(p);
    return out;
}

std::vector<AxisRect> oracle_axis_mers(std::span<const Point> pts,
                                       const Region& region,
                                       const OracleConfig& cfg) {
    if (pts.size() > cfg.max_n_axis) throw input_error("oracle too large");
    if (!region.valid()) throw input_error("invalid region");

    const std::vector<double> xs =
        candidate_coords(pts, region.x_min, region.x_max, true);
    const std::vector<double> ys_all =
        candidate_coords(pts, region.y_min, region.y_max, false);

    auto prev_of = [](const std::vector<double>& v, double c) {
        auto it = std::lower_bound(v.begin(), v.end(), c);
        return it == v.begin() ? std::optional<double>{}
                               : std::optional<double>{*(it - 1)};
    };
    auto next_of = [](const std::vector<double>& v, double c) {
        auto it = std::upper_bound(v.begin(), v.end(), c);
        return it == v.end() ? std::optional<double>{}
                             : std::optional<double>{*it};
    };

    std::vector<AxisRect> out;
    std::vector<double> gap_ys;
    for (std::size_t a = 0; a < xs.size(); ++a) {
        for (std::size_t b = a + 1; b < xs.size(); ++b) {
            const double xa = xs[a], xb = xs[b];
            // y-coordinates of points strictly between the slab walls; rects
            // between consecutive ones are empty by construction
            gap_ys.clear();
            gap_ys.push_back(region.y_min);
            gap_ys.push_back(region.y_max);
            for (const Point& p : pts)
                if (p.x > xa && p.x < xb) gap_ys.push_back(p.y);
            std::sort(gap_ys.begin(), gap_ys.end());
            gap_ys.erase(std::unique(gap_ys.begin(), gap_ys.end()),
                         gap_ys.end());
            for (std::size_t g = 0; g + 1 < gap_ys.size(); ++g) {
                const AxisRect r{xa, gap_ys[g], xb, gap_ys[g + 1]};
                bool maximal = true;
                if (auto c = prev_of(xs, r.x0); c && rect_empty(
                        pts, AxisRect{*c, r.y0, r.x1, r.y1}))
                    maximal = false;
                if (maximal)
                    if (auto c = next_of(xs, r.x1); c && rect_empty(
                            pts, AxisRect{r.x0, r.y0, *c, r.y1}))
                        maximal = false;
                if (maximal)
                    if (auto c = prev_of(ys_all, r.y0); c && rect_empty(
                            pts, AxisRect{r.x0, *c, r.x1, r.y1}))
                        maximal = false;
                if (maximal)
                    if (auto c = next_of(ys_all, r.y1); c && rect_empty(
                            pts, AxisRect{r.x0, r.y0, r.x1, *c}))
                        maximal = false;
                if (maximal) out.push_back(r);
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const AxisRect& a, const AxisRect& b) { return lex_less(a, b); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<AxisRect> oracle_axis_mers_slow(std::span<const Point> pts,
                                            const Region& region) {
    if (pts.size() > 10) throw input_error("oracle too large");
    const std::vector<double> xs =
        candidate_coords(pts, region.x_min, region.x_max, true);
    const std::vector<double> ys =
        candidate_coords(pts, region.y_min, region.y_max, false);

    std::vector<AxisRect> empties;
    for (std::size_t a = 0; a < xs.size(); ++a)
        for (std::size_t b = a + 1; b < xs.size(); ++b)
            for (std::size_t c = 0; c < ys.size(); ++c)
                for (std::size_t d = c + 1; d < ys.size(); ++d) {
                    AxisRect r{xs[a], ys[c], xs[b], ys[d]};
                    if (rect_empty(pts, r)) empties.push_back(r);
                }

    auto contains = [](const AxisRect& big, const AxisRect& small) {
        return big.x0 <= small.x0 && big.y0 <= small.y0 &&
               big.x1 >= small.x1 && big.y1 >= small.y1;
    };
    std::vector<AxisRect> out;
    for (const AxisRect& r : empties) {
        bool maximal = true;
        for (const AxisRect& o : empties)
            if (!(o == r) && contains(o, r)) {
                maximal = false;
                break;
            }
        if (maximal) out.push_back(r);
    }
    std::sort(out.begin(), out.end(),
              [](const AxisRect& a, const AxisRect& b) { return lex_less(a, b); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

struct OrientedFrame {
    Point a, b;
    double dx, dy, len;

    OrientedFrame(const Point& a_, const Point& b_)
        : a(a_), b(b_), dx(b_.x - a_.x), dy(b_.y - a_.y) {
        len = std::hypot(dx, dy);
    }
    Point at(double t) const { return {a.x + t * dx, a.y + t * dy}; }
    double param(const Point& q) const {
        return ((q.x - a.x) * dx + (q.y - a.y) * dy) / (dx * dx + dy * dy);
    }
    double signed_dist(const Point& q) const { return cross(a, b, q) / len; }
    Point normal(int side) const { return {side * -dy / len, side * dx / len}; }
};

std::pair<double, double> clip_line_region(const OrientedFrame& f,
                                           const Region& region) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    auto cut = [&](double d, double w) {
        if (d == 0.0) return;
        double bound = w / d;
        if (d > 0.0)
            hi = std::min(hi, bound);
        else
            lo = std::max(lo, bound);
    };
    cut(f.dx, region.x_max - f.a.x);
    cut(-f.dx, f.a.x - region.x_min);
    cut(f.dy, region.y_max - f.a.y);
    cut(-f.dy, f.a.y - region.y_min);
    return {lo, hi};
}

double frame_depth_cap(const OrientedFrame& f, double ta, double tb,
                       const Point& nhat, const Region& region) {
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

OrientedRect frame_rect(const OrientedFrame& f, double ta, double tb,
                        double depth, const Point& nhat) {
    const Point A = f.at(ta);
    const Point B = f.at(tb);
    const Point A2{A.x + depth * nhat.x, A.y + depth * nhat.y};
    const Point B2{B.x + depth * nhat.x, B.y + depth * nhat.y};
    OrientedRect r;
    if ((f.dx * nhat.y - f.dy * nhat.x) > 0.0)
        r.corners = {A, B, B2, A2};
    else
        r.corners = {A2, B2, B, A};
    int start = 0;
    for (int i = 1; i < 4; ++i)
        if (lex_less(r.corners[i], r.corners[start])) start = i;
    std::array<Point, 4> rot;
    for (int i = 0; i < 4; ++i) rot[i] = r.corners[(start + i) % 4];
    r.corners = rot;
    return r;
}

}  // namespace

bool oriented_optimum_interior(const OrientedMerRecord& best,
                               std::span<const Point> pts,
                               const Region& region) {
    const double tol = 1e-9 * std::max(region.x_max - region.x_min,
                                       region.y_max - region.y_min);
    for (const Point& c : best.rect.corners)
        if (c.x < region.x_min + tol || c.x > region.x_max - tol ||
            c.y < region.y_min + tol || c.y > region.y_max - tol)
            return false;
    for (int s = 0; s < 4; ++s) {
        const Point& a = best.rect.corners[s];
        const Point& b = best.rect.corners[(s + 1) % 4];
        if (a == b) return false;
        bool carried = false;
        for (const Point& q : pts) {
            if (distance_to_line(q, a, b) > tol) continue;
            const double t = project_onto_line(q, a, b);
            if (t >= -tol && t <= 1 + tol) {
                carried = true;
                break;
            }
        }
        if (!carried) return false;
    }
    return true;
}

OrientedMerRecord oracle_oriented_best(std::span<const Point> pts,
                                       const Region& region,
                                       const OracleConfig& cfg) {
    const std::size_t n = pts.size();
    if (n < 2) throw input_error("insufficient points");
    if (n > cfg.max_n_oriented) throw input_error("oracle too large");
    if (!region.valid()) throw input_error("invalid region");

    const double scale = std::max(region.x_max - region.x_min,
                                  region.y_max - region.y_min);
    std::optional<OrientedMerRecord> best;
    std::vector<double> lefts, rights, depths;

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const OrientedFrame f(pts[i], pts[j]);
            auto [t_lo, t_hi] = clip_line_region(f, region);
            for (int side : {-1, +1}) {
                const Point nhat = f.normal(side);
                lefts.assign(1, t_lo);
                rights.assign(1, t_hi);
                depths.assign(1, 0.0);
                for (const Point& q : pts) {
                    // only points on this side of the line can support an
                    // edge of a rectangle lying on this side
                    const double sd = f.signed_dist(q) * side;
                    if (sd <= 0.0) continue;
                    depths.push_back(sd);
                    const double t = f.param(q);
                    if (t >= t_lo && t <= 0.0) lefts.push_back(t);
                    if (t >= 1.0 && t <= t_hi) rights.push_back(t);
                }
                for (double ta : lefts) {
                    for (double tb : rights) {
                        const double cap =
                            frame_depth_cap(f, ta, tb, nhat, region);
                        for (std::size_t di = 0; di <= depths.size(); ++di) {
                            const double d =
                                di == depths.size() ? cap : depths[di];
                            if (d > cap + 1e-12 * scale) continue;
                            OrientedRect rect = frame_rect(f, ta, tb, d, nhat);
                            bool empty = true;
                            for (const Point& q : pts)
                                if (strictly_inside_oriented(q, rect)) {
                                    empty = false;
                                    break;
                                }
                            if (!empty) continue;
                            const double a = (tb - ta) * f.len * d;
                            if (!best || a > best->area) {
                                best = OrientedMerRecord{
                                    rect, a, 2.0 * ((tb - ta) * f.len + d),
                                    {pts[i], pts[j]}};
                            }
                        }
                    }
                }
            }
        }
    }
    return *best;
}

}  // namespace mer
