#ifndef MER_PST_HPP
#define MER_PST_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mer/geom.hpp"
#include "mer/workspace.hpp"

namespace mer {

// In-place comparison sort: O(n log n), O(1) auxiliary words, iterative.
template <typename It, typename Comp>
void heap_sort(It first, It last, Comp comp) {
    std::make_heap(first, last, comp);
    std::sort_heap(first, last, comp);
}

enum class PriorityMode { MaxY, MinY };

// Strict total order on distinct points: y first (reversed for MinY), then x.
// The x leg keeps the same direction in both modes so that negating all y
// coordinates exactly swaps the two modes.
inline bool priority_better(PriorityMode mode, const Point& a, const Point& b) {
    if (a.y != b.y) return mode == PriorityMode::MaxY ? a.y > b.y : a.y < b.y;
    return a.x > b.x;
}

enum class Side { Left, Right };

// Position of a node: depth (root 0), pos within its level, 1-based array
// index, plus the level bookkeeping that makes child/parent moves O(1).
struct NodeRef {
    std::uint32_t depth = 0;
    std::uint64_t pos = 0;
    std::uint64_t idx = 1;
    std::uint64_t level_offset = 0;
    std::uint64_t level_count = 1;
};

struct QueryStats {
    std::uint64_t comparisons = 0;
};

// Priority search tree stored as a permutation of the caller's point array.
// The only owned state is the per-level deficiency array (k words) and a few
// scalars; node relations are index arithmetic.
//
// The four range queries are valid on a freshly built tree only.  delete_root
// leaves the removed point in the array; it is recognized as dead by having
// strictly better priority than the current root.
class Pst {
public:
    static Pst build(std::vector<Point>& points, const Region& region,
                     PriorityMode mode, WorkspaceMeter* meter = nullptr);

    std::uint64_t size() const { return n_; }
    std::uint32_t levels() const { return k_; }
    PriorityMode mode() const { return mode_; }
    const Region& region() const { return region_; }
    std::uint8_t tag(std::uint32_t depth) const { return tag_[depth]; }
    std::uint64_t live_count() const { return live_count_; }

    NodeRef root() const { return NodeRef{}; }
    const Point& point_at(const NodeRef& v) const { return (*points_)[v.idx - 1]; }
    const Point& live_root_point() const { return root_point_; }

    std::optional<NodeRef> child(const NodeRef& v, Side side) const;
    std::optional<NodeRef> parent(const NodeRef& v) const;
    NodeRef node_at(std::uint64_t idx) const;

    bool is_live(const Point& p) const {
        return live_count_ > 0 && !priority_better(mode_, p, root_point_);
    }
    std::optional<NodeRef> live_child(const NodeRef& v, Side side) const;

    // Extreme x of the chosen subtree of v, from the spine walk; none when
    // that subtree is absent.  Fresh-tree only.
    std::optional<double> subtree_x_bounds(const NodeRef& v, Side side,
                                           QueryStats* stats = nullptr) const;

    // Point with minimum x among {x0 <= x <= x1, y >= y1}; ties on x resolve
    // to the (x, y)-lexicographic minimum.
    std::optional<Point> min_x_in_rectangle(double x0, double x1, double y1,
                                            QueryStats* stats = nullptr) const;
    std::optional<Point> max_x_in_rectangle(double x0, double x1, double y1,
                                            QueryStats* stats = nullptr) const;
    // Best-priority point with x in [x0, x1].
    std::optional<Point> max_y_in_x_range(double x0, double x1,
                                          QueryStats* stats = nullptr) const;
    // Emits every point with x0 <= x <= x1 and y >= y1 exactly once; the sink
    // returns false to stop early.  Returns the number of emitted points.
    std::size_t enumerate_rectangle(double x0, double x1, double y1,
                                    const std::function<bool(const Point&)>& sink,
                                    QueryStats* stats = nullptr) const;

    // Sift-down removal of the live root; the removed point stays in the
    // array at the vacated slot.
    void delete_root();

    // Best-priority live point of subtree(start) with x strictly inside
    // (alpha, beta).  Valid after deletions; used by the rectangle sweep.
    std::optional<NodeRef> best_in_span(const NodeRef& start, double alpha,
                                        double beta) const;

private:
    Pst() = default;

    double spine_max_x(NodeRef v, QueryStats* stats) const;
    double spine_min_x(NodeRef v, QueryStats* stats) const;
    double live_spine_max_x(NodeRef v) const;
    double live_spine_min_x(NodeRef v) const;

    std::vector<Point>* points_ = nullptr;
    Region region_{};
    PriorityMode mode_ = PriorityMode::MaxY;
    std::uint64_t n_ = 0;
    std::uint32_t k_ = 0;
    std::vector<std::uint8_t> tag_;
    Point root_point_{};
    std::uint64_t live_count_ = 0;
    MeterCharge charge_;
};

}  // namespace mer

#endif
