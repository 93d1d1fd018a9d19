#ifndef MER_MER_ORIENTED_HPP
#define MER_MER_ORIENTED_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "mer/geom.hpp"
#include "mer/mer_axis.hpp"
#include "mer/workspace.hpp"

namespace mer {

struct OrientedMerRecord {
    OrientedRect rect;
    double area = 0.0;
    double perimeter = 0.0;
    std::array<Point, 2> support{};
};

using OrientedSink = std::function<bool(const OrientedMerRecord&)>;

// Moves the pair at sorted ranks (i, j) to the front and splits positions
// 3..n by side of the pair's line: below first, above after.  1-based ranks,
// i < j, array lexicographically sorted on entry.  Returns (|below|, |above|).
// A third point exactly on the line is rejected.
std::pair<std::size_t, std::size_t> partition_by_line(std::vector<Point>& points,
                                                      std::size_t i,
                                                      std::size_t j);

// Sorts the 1-based inclusive segment [lo, hi] by perpendicular distance to
// the line through a and b, recomputing distances on every comparison;
// equidistant points order by their projection parameter.
void sort_side_by_distance(std::vector<Point>& points, std::size_t lo,
                           std::size_t hi, const Point& a, const Point& b);

// All rectangles with one side through the pair at sorted ranks (i, j):
// partition, sort each side by distance, and drop a curtain per side.  The
// curtain's depth is capped where the rectangle would leave the region.
// Restores lexicographic order before returning.
std::size_t process_pair(std::vector<Point>& points, std::size_t i,
                         std::size_t j, const Region& region,
                         const OrientedSink& sink);

// Streams every rectangle from every pair into the sink; returns the count.
std::size_t enumerate_oriented(std::vector<Point>& points, const Region& region,
                               const OrientedSink& sink,
                               WorkspaceMeter* meter = nullptr);

// Largest empty rectangle of arbitrary orientation over all point pairs.
// Ties resolve to the lexicographically smallest corner list.  The array is
// left lexicographically sorted.
OrientedMerRecord largest_oriented(std::vector<Point>& points,
                                   const Region& region, Objective objective,
                                   WorkspaceMeter* meter = nullptr);

}  // namespace mer

#endif
