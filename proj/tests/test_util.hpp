// Shared helpers for the test binaries.  Include after doctest.h.
#ifndef MER_TEST_UTIL_HPP
#define MER_TEST_UTIL_HPP

#include <algorithm>
#include <map>
#include <vector>

#include "mer/geom.hpp"
#include "mer/pst.hpp"

namespace mer_test {

using mer::NodeRef;
using mer::Point;
using mer::PriorityMode;
using mer::Pst;
using mer::Side;

inline std::vector<Point> lex_sorted(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(),
              [](const Point& a, const Point& b) { return mer::lex_less(a, b); });
    return pts;
}

inline bool same_multiset(std::vector<Point> a, std::vector<Point> b) {
    return lex_sorted(std::move(a)) == lex_sorted(std::move(b));
}

// Walks the built tree and verifies, node by node, that the stored point is
// the priority extreme of an independently reconstructed segment and that
// child segments split by the min(s-1, 2^(k-d-1)-1) size rule.  Returns each
// node's segment keyed by array index; segments double as the construction
// cells for the post-deletion checks.
inline std::map<std::uint64_t, std::vector<Point>> check_fresh_structure(
    const Pst& t, const std::vector<Point>& input) {
    std::map<std::uint64_t, std::vector<Point>> segs;
    struct Item {
        NodeRef v;
        std::vector<Point> seg;
    };
    std::vector<Item> stack;
    stack.push_back({t.root(), lex_sorted(input)});
    std::size_t seen = 0;
    while (!stack.empty()) {
        Item it = std::move(stack.back());
        stack.pop_back();
        const NodeRef v = it.v;
        std::vector<Point>& seg = it.seg;
        ++seen;
        REQUIRE(!seg.empty());
        auto best = std::max_element(
            seg.begin(), seg.end(), [&](const Point& a, const Point& b) {
                return mer::priority_better(t.mode(), b, a);
            });
        REQUIRE(t.point_at(v) == *best);
        segs[v.idx] = seg;
        seg.erase(best);
        const std::uint64_t cap_child =
            v.depth + 1 < t.levels()
                ? (std::uint64_t{1} << (t.levels() - v.depth - 1)) - 1
                : 0;
        const std::uint64_t left_sz =
            std::min<std::uint64_t>(seg.size(), cap_child);
        const std::uint64_t right_sz = seg.size() - left_sz;
        auto l = t.child(v, Side::Left);
        auto r = t.child(v, Side::Right);
        REQUIRE((left_sz > 0) == l.has_value());
        REQUIRE((right_sz > 0) == r.has_value());
        if (l)
            stack.push_back(
                {*l, std::vector<Point>(seg.begin(), seg.begin() + left_sz)});
        if (r)
            stack.push_back(
                {*r, std::vector<Point>(seg.begin() + left_sz, seg.end())});
    }
    REQUIRE(seen == t.size());
    return segs;
}

// Heap order over live nodes plus containment of every stored point in its
// node's construction-time segment (valid after any number of deletions).
inline void check_live_invariants(
    const Pst& t, const std::map<std::uint64_t, std::vector<Point>>& segs) {
    if (t.live_count() == 0) return;
    std::vector<NodeRef> stack{t.root()};
    std::size_t live_seen = 0;
    while (!stack.empty()) {
        NodeRef v = stack.back();
        stack.pop_back();
        ++live_seen;
        REQUIRE(v.depth < t.levels());
        const Point& p = t.point_at(v);
        REQUIRE(t.is_live(p));
        const auto& seg = segs.at(v.idx);
        REQUIRE(std::find(seg.begin(), seg.end(), p) != seg.end());
        for (Side s : {Side::Left, Side::Right}) {
            if (auto c = t.live_child(v, s)) {
                REQUIRE(mer::priority_better(t.mode(), p, t.point_at(*c)));
                stack.push_back(*c);
            }
        }
    }
    REQUIRE(live_seen == t.live_count());
}

}  // namespace mer_test

#endif
