#ifndef MER_ORACLE_HPP
#define MER_ORACLE_HPP

#include <optional>
#include <span>
#include <vector>

#include "mer/geom.hpp"
#include "mer/mer_oriented.hpp"

namespace mer {

// Brute-force references.  Deliberately slow and structure-free: linear
// scans and exhaustive candidate enumeration, capped by instance size.
struct OracleConfig {
    std::size_t max_n_axis = 64;
    std::size_t max_n_oriented = 12;
    double tolerance = 1e-9;
};

std::optional<Point> oracle_min_x(std::span<const Point> pts, double x0,
                                  double x1, double y1);
std::optional<Point> oracle_max_x(std::span<const Point> pts, double x0,
                                  double x1, double y1);
std::optional<Point> oracle_max_y(std::span<const Point> pts, double x0,
                                  double x1);
std::vector<Point> oracle_enum(std::span<const Point> pts, double x0,
                               double x1, double y1);

// All maximal empty axis-parallel rectangles, sides drawn from the point
// coordinates and the region edges.  Sorted lexicographically, deduplicated.
std::vector<AxisRect> oracle_axis_mers(std::span<const Point> pts,
                                       const Region& region,
                                       const OracleConfig& cfg = {});

// Second, slower enumerator (containment-based maximality) used to
// cross-check oracle_axis_mers on tiny instances.
std::vector<AxisRect> oracle_axis_mers_slow(std::span<const Point> pts,
                                            const Region& region);

// Best empty rectangle with one side through two points: for every pair and
// side, every span cut at point projections or the clipped chord, every
// depth at a point distance or the region cap.
OrientedMerRecord oracle_oriented_best(std::span<const Point> pts,
                                       const Region& region,
                                       const OracleConfig& cfg = {});

// True when the rectangle is pinned by points alone: corners strictly inside
// the region and every side carrying at least one point.  A best rectangle
// failing this is a boundary trade-off shape (its maximal completion leans
// on the region boundary), which the curtain method deliberately does not
// enumerate; agreement checks discard instances with such optima.
bool oriented_optimum_interior(const OrientedMerRecord& best,
                               std::span<const Point> pts,
                               const Region& region);

}  // namespace mer

#endif
