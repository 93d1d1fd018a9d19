#include "mer/pst.hpp"

#include <bit>
#include <cassert>

#include "mer/errors.hpp"

namespace mer {

namespace {

inline void bump(QueryStats* st) {
    if (st) ++st->comparisons;
}

inline bool lex_le(const Point& a, const Point& b) { return !lex_less(b, a); }

// Keep `best` as the lex extreme of everything offered.
inline void keep_min(std::optional<Point>& best, const Point& p, QueryStats* st) {
    bump(st);
    if (!best || lex_less(p, *best)) best = p;
}

inline void keep_max(std::optional<Point>& best, const Point& p, QueryStats* st) {
    bump(st);
    if (!best || lex_less(*best, p)) best = p;
}

}  // namespace

Pst Pst::build(std::vector<Point>& points, const Region& region,
               PriorityMode mode, WorkspaceMeter* meter) {
    if (points.empty()) throw input_error("empty input");
    if (!region.valid()) throw input_error("invalid region");
    for (const Point& p : points) {
        if (!finite(p)) throw input_error("non-finite coordinate");
        if (!region.contains(p)) throw input_error("point outside region");
    }

    const std::uint64_t n = points.size();
    const std::uint32_t k = std::bit_width(n);  // floor(log2 n) + 1

    Pst t;
    t.points_ = &points;
    t.region_ = region;
    t.mode_ = mode;
    t.n_ = n;
    t.k_ = k;
    t.charge_ = MeterCharge(meter, k + 8);
    t.tag_.assign(k, 0);

    auto lex = [](const Point& a, const Point& b) { return lex_less(a, b); };
    heap_sort(points.begin(), points.end(), lex);
    for (std::uint64_t i = 1; i < n; ++i)
        if (points[i - 1] == points[i]) throw input_error("duplicate point");

    // Level by level: pull each segment's best-priority point up to its node
    // slot, then restore (x, y) order on the remaining suffix.  Swapping can
    // scatter points between segments; the re-sort puts every survivor back
    // into its subtree's contiguous run, because subtree point sets are
    // separated intervals of the lex order.
    std::uint64_t off = 0;     // array slots used by levels above d
    std::uint64_t cnt = 1;     // nodes at level d
    std::uint64_t rm_own = n;  // points owned by the rightmost node of level d
    for (std::uint32_t d = 0; d < k; ++d) {
        const std::uint64_t cap = (std::uint64_t{1} << (k - d)) - 1;
        std::uint64_t seg_start = off;  // 0-based
        for (std::uint64_t i = 0; i < cnt; ++i) {
            const std::uint64_t sz = (i + 1 < cnt) ? cap : rm_own;
            std::uint64_t best = seg_start;
            for (std::uint64_t j = seg_start + 1; j < seg_start + sz; ++j)
                if (priority_better(mode, points[j], points[best])) best = j;
            std::swap(points[off + i], points[best]);
            seg_start += sz;
        }
        if (d + 1 < k) {
            heap_sort(points.begin() + static_cast<std::ptrdiff_t>(off + cnt),
                      points.end(), lex);
            const std::uint64_t cap_next = (std::uint64_t{1} << (k - d - 1)) - 1;
            const std::uint64_t left = std::min(rm_own - 1, cap_next);
            const std::uint64_t right = rm_own - 1 - left;
            const std::uint32_t nch = (left > 0 ? 1 : 0) + (right > 0 ? 1 : 0);
            t.tag_[d + 1] = static_cast<std::uint8_t>(2 - nch);
            off += cnt;
            cnt = 2 * cnt - t.tag_[d + 1];
            assert(cnt > 0);
            rm_own = right > 0 ? right : (left > 0 ? left : cap_next);
        }
    }

    t.root_point_ = points[0];
    t.live_count_ = n;
    return t;
}

std::optional<NodeRef> Pst::child(const NodeRef& v, Side side) const {
    if (v.depth + 1 >= k_) return std::nullopt;
    const std::uint64_t ccount = 2 * v.level_count - tag_[v.depth + 1];
    const std::uint64_t cpos = 2 * v.pos + (side == Side::Right ? 1 : 0);
    if (cpos >= ccount) return std::nullopt;
    const std::uint64_t coff = v.level_offset + v.level_count;
    return NodeRef{v.depth + 1, cpos, coff + cpos + 1, coff, ccount};
}

std::optional<NodeRef> Pst::parent(const NodeRef& v) const {
    if (v.depth == 0) return std::nullopt;
    const std::uint64_t pcount = (v.level_count + tag_[v.depth]) / 2;
    const std::uint64_t poff = v.level_offset - pcount;
    const std::uint64_t ppos = v.pos / 2;
    return NodeRef{v.depth - 1, ppos, poff + ppos + 1, poff, pcount};
}

NodeRef Pst::node_at(std::uint64_t idx) const {
    assert(idx >= 1 && idx <= n_);
    NodeRef v;  // starts at the root's level
    while (idx > v.level_offset + v.level_count) {
        const std::uint64_t ccount = 2 * v.level_count - tag_[v.depth + 1];
        v = NodeRef{v.depth + 1, 0, 0, v.level_offset + v.level_count, ccount};
    }
    v.pos = idx - v.level_offset - 1;
    v.idx = idx;
    return v;
}

std::optional<NodeRef> Pst::live_child(const NodeRef& v, Side side) const {
    auto c = child(v, side);
    if (c && is_live(point_at(*c))) return c;
    return std::nullopt;
}

double Pst::spine_max_x(NodeRef v, QueryStats* stats) const {
    double m = point_at(v).x;
    for (;;) {
        auto next = child(v, Side::Right);
        if (!next) next = child(v, Side::Left);
        if (!next) return m;
        v = *next;
        bump(stats);
        m = std::max(m, point_at(v).x);
    }
}

double Pst::spine_min_x(NodeRef v, QueryStats* stats) const {
    double m = point_at(v).x;
    for (;;) {
        auto next = child(v, Side::Left);
        if (!next) return m;
        v = *next;
        bump(stats);
        m = std::min(m, point_at(v).x);
    }
}

double Pst::live_spine_max_x(NodeRef v) const {
    double m = point_at(v).x;
    for (;;) {
        auto next = live_child(v, Side::Right);
        if (!next) next = live_child(v, Side::Left);
        if (!next) return m;
        v = *next;
        m = std::max(m, point_at(v).x);
    }
}

double Pst::live_spine_min_x(NodeRef v) const {
    // with deletions a dead left child can hide live right descendants
    double m = point_at(v).x;
    for (;;) {
        auto next = live_child(v, Side::Left);
        if (!next) next = live_child(v, Side::Right);
        if (!next) return m;
        v = *next;
        m = std::min(m, point_at(v).x);
    }
}

std::optional<double> Pst::subtree_x_bounds(const NodeRef& v, Side side,
                                            QueryStats* stats) const {
    auto c = child(v, side);
    if (!c) return std::nullopt;
    return side == Side::Left ? spine_max_x(*c, stats) : spine_min_x(*c, stats);
}

namespace {

// Lex-extreme point with y >= y1 in a subtree known to lie inside the query
// x-interval; the subtree root's y >= y1 is the caller's responsibility.
template <typename Keep>
void full_range_extreme(const Pst& t, NodeRef w, double y1,
                        std::optional<Point>& best, bool prefer_left,
                        Keep keep, QueryStats* st) {
    for (;;) {
        keep(best, t.point_at(w), st);
        const Side first = prefer_left ? Side::Left : Side::Right;
        const Side second = prefer_left ? Side::Right : Side::Left;
        auto a = t.child(w, first);
        bump(st);
        if (a && t.point_at(*a).y >= y1) {
            w = *a;
            continue;
        }
        auto b = t.child(w, second);
        bump(st);
        if (b && t.point_at(*b).y >= y1) {
            w = *b;
            continue;
        }
        return;
    }
}

}  // namespace

std::optional<Point> Pst::min_x_in_rectangle(double x0, double x1, double y1,
                                             QueryStats* st) const {
    if (x0 > x1) throw input_error("empty interval");
    std::optional<Point> best;

    NodeRef v = root();
    std::optional<NodeRef> L, R;
    for (;;) {
        const Point& p = point_at(v);
        bump(st);
        if (p.y < y1) return best;
        bump(st);
        bump(st);
        if (p.x >= x0 && p.x <= x1) keep_min(best, p, st);
        L = child(v, Side::Left);
        R = child(v, Side::Right);
        bump(st);
        const bool left_rel = L && spine_max_x(*L, st) >= x0;
        bump(st);
        const bool right_rel = R && spine_min_x(*R, st) <= x1;
        if (!left_rel && !right_rel) return best;
        if (left_rel != right_rel) {
            v = left_rel ? *L : *R;
            continue;
        }
        break;  // v straddles the interval
    }

    // Left arm: all points here have x <= x1.  Walk the x0 boundary; fully
    // in-range subtrees hang off to the right, and only the deepest one with
    // a tall enough root can hold the answer.
    std::optional<NodeRef> hang;
    NodeRef u = *L;
    for (;;) {
        const Point& q = point_at(u);
        bump(st);
        if (q.y < y1) break;
        bump(st);
        if (q.x >= x0) keep_min(best, q, st);
        auto uL = child(u, Side::Left);
        bump(st);
        if (uL && spine_max_x(*uL, st) >= x0) {
            auto uR = child(u, Side::Right);
            bump(st);
            if (uR && point_at(*uR).y >= y1) hang = uR;
            u = *uL;
        } else {
            auto uR = child(u, Side::Right);
            if (!uR) break;
            u = *uR;
        }
    }
    if (hang) full_range_extreme(*this, *hang, y1, best, true, keep_min, st);

    // Right arm: all points here have x >= x0; the shallowest valid hang-off
    // is the leftmost.
    std::optional<NodeRef> hang2;
    u = *R;
    for (;;) {
        const Point& q = point_at(u);
        bump(st);
        if (q.y < y1) break;
        bump(st);
        if (q.x <= x1) keep_min(best, q, st);
        auto uR = child(u, Side::Right);
        bump(st);
        if (uR && spine_min_x(*uR, st) <= x1) {
            auto uL = child(u, Side::Left);
            bump(st);
            if (!hang2 && uL && point_at(*uL).y >= y1) hang2 = uL;
            u = *uR;
        } else {
            auto uL = child(u, Side::Left);
            if (!uL) break;
            u = *uL;
        }
    }
    if (hang2) full_range_extreme(*this, *hang2, y1, best, true, keep_min, st);

    return best;
}

std::optional<Point> Pst::max_x_in_rectangle(double x0, double x1, double y1,
                                             QueryStats* st) const {
    if (x0 > x1) throw input_error("empty interval");
    std::optional<Point> best;

    NodeRef v = root();
    std::optional<NodeRef> L, R;
    for (;;) {
        const Point& p = point_at(v);
        bump(st);
        if (p.y < y1) return best;
        bump(st);
        bump(st);
        if (p.x >= x0 && p.x <= x1) keep_max(best, p, st);
        L = child(v, Side::Left);
        R = child(v, Side::Right);
        bump(st);
        const bool left_rel = L && spine_max_x(*L, st) >= x0;
        bump(st);
        const bool right_rel = R && spine_min_x(*R, st) <= x1;
        if (!left_rel && !right_rel) return best;
        if (left_rel != right_rel) {
            v = left_rel ? *L : *R;
            continue;
        }
        break;
    }

    // Right arm first in spirit: deepest valid left-hang dominates there.
    std::optional<NodeRef> hang;
    NodeRef u = *R;
    for (;;) {
        const Point& q = point_at(u);
        bump(st);
        if (q.y < y1) break;
        bump(st);
        if (q.x <= x1) keep_max(best, q, st);
        auto uR = child(u, Side::Right);
        bump(st);
        if (uR && spine_min_x(*uR, st) <= x1) {
            auto uL = child(u, Side::Left);
            bump(st);
            if (uL && point_at(*uL).y >= y1) hang = uL;
            u = *uR;
        } else {
            auto uL = child(u, Side::Left);
            if (!uL) break;
            u = *uL;
        }
    }
    if (hang) full_range_extreme(*this, *hang, y1, best, false, keep_max, st);

    // Left arm: shallowest valid right-hang is the rightmost.
    std::optional<NodeRef> hang2;
    u = *L;
    for (;;) {
        const Point& q = point_at(u);
        bump(st);
        if (q.y < y1) break;
        bump(st);
        if (q.x >= x0) keep_max(best, q, st);
        auto uL = child(u, Side::Left);
        bump(st);
        if (uL && spine_max_x(*uL, st) >= x0) {
            auto uR = child(u, Side::Right);
            bump(st);
            if (!hang2 && uR && point_at(*uR).y >= y1) hang2 = uR;
            u = *uL;
        } else {
            auto uR = child(u, Side::Right);
            if (!uR) break;
            u = *uR;
        }
    }
    if (hang2) full_range_extreme(*this, *hang2, y1, best, false, keep_max, st);

    return best;
}

std::optional<Point> Pst::max_y_in_x_range(double x0, double x1,
                                           QueryStats* st) const {
    if (x0 > x1) throw input_error("empty interval");

    NodeRef v = root();
    std::optional<NodeRef> L, R;
    for (;;) {
        const Point& p = point_at(v);
        bump(st);
        bump(st);
        // First in-range point on the descent is the best-priority one: the
        // whole candidate set still lies in this subtree.
        if (p.x >= x0 && p.x <= x1) return p;
        L = child(v, Side::Left);
        R = child(v, Side::Right);
        bump(st);
        const bool left_rel = L && spine_max_x(*L, st) >= x0;
        bump(st);
        const bool right_rel = R && spine_min_x(*R, st) <= x1;
        if (!left_rel && !right_rel) return std::nullopt;
        if (left_rel != right_rel) {
            v = left_rel ? *L : *R;
            continue;
        }
        break;
    }

    auto arm = [&](NodeRef u, bool left_arm) -> std::optional<Point> {
        std::optional<Point> hang_best;
        auto keep_hang = [&](const Point& c) {
            bump(st);
            if (!hang_best || priority_better(mode_, c, *hang_best))
                hang_best = c;
        };
        for (;;) {
            const Point& q = point_at(u);
            bump(st);
            bump(st);
            if (q.x >= x0 && q.x <= x1) {
                if (hang_best && priority_better(mode_, *hang_best, q))
                    return hang_best;
                return q;
            }
            const Side toward = left_arm ? Side::Left : Side::Right;
            const Side away = left_arm ? Side::Right : Side::Left;
            auto a = child(u, toward);
            bump(st);
            const bool rel =
                a && (left_arm ? spine_max_x(*a, st) >= x0
                               : spine_min_x(*a, st) <= x1);
            if (rel) {
                auto b = child(u, away);
                if (b) keep_hang(point_at(*b));
                u = *a;
            } else {
                auto b = child(u, away);
                if (!b) return hang_best;
                u = *b;
            }
        }
    };

    auto lhs = arm(*L, true);
    auto rhs = arm(*R, false);
    if (!lhs) return rhs;
    if (!rhs) return lhs;
    bump(st);
    return priority_better(mode_, *lhs, *rhs) ? lhs : rhs;
}

namespace {

// Stack-free y-pruned traversal of a subtree whose x-range is known to lie
// inside the query interval.  Returns false when the sink stopped.
bool emit_subtree(const Pst& t, const NodeRef& top, double y1,
                  const std::function<bool(const Point&)>& sink,
                  std::size_t& count, QueryStats* st) {
    enum class From { Above, LeftChild, RightChild };
    NodeRef cur = top;
    From from = From::Above;
    for (;;) {
        if (from == From::Above) {
            ++count;
            if (!sink(t.point_at(cur))) return false;
            auto l = t.child(cur, Side::Left);
            bump(st);
            if (l && t.point_at(*l).y >= y1) {
                cur = *l;
                continue;
            }
            from = From::LeftChild;
            continue;
        }
        if (from == From::LeftChild) {
            auto r = t.child(cur, Side::Right);
            bump(st);
            if (r && t.point_at(*r).y >= y1) {
                cur = *r;
                from = From::Above;
                continue;
            }
            from = From::RightChild;
            continue;
        }
        if (cur.idx == top.idx) return true;
        const bool was_left = (cur.pos % 2 == 0);
        cur = *t.parent(cur);
        from = was_left ? From::LeftChild : From::RightChild;
    }
}

}  // namespace

std::size_t Pst::enumerate_rectangle(
    double x0, double x1, double y1,
    const std::function<bool(const Point&)>& sink, QueryStats* st) const {
    if (x0 > x1) throw input_error("empty interval");
    std::size_t count = 0;
    auto emit = [&](const Point& p) -> bool {
        ++count;
        return sink(p);
    };

    NodeRef v = root();
    std::optional<NodeRef> L, R;
    for (;;) {
        const Point& p = point_at(v);
        bump(st);
        if (p.y < y1) return count;
        bump(st);
        bump(st);
        if (p.x >= x0 && p.x <= x1) {
            if (!emit(p)) return count;
        }
        L = child(v, Side::Left);
        R = child(v, Side::Right);
        bump(st);
        const bool left_rel = L && spine_max_x(*L, st) >= x0;
        bump(st);
        const bool right_rel = R && spine_min_x(*R, st) <= x1;
        if (!left_rel && !right_rel) return count;
        if (left_rel != right_rel) {
            v = left_rel ? *L : *R;
            continue;
        }
        break;
    }

    // Left arm along the x0 boundary; right hang-offs are fully in range.
    NodeRef u = *L;
    for (;;) {
        const Point& q = point_at(u);
        bump(st);
        if (q.y < y1) break;
        bump(st);
        if (q.x >= x0) {
            if (!emit(q)) return count;
        }
        auto uL = child(u, Side::Left);
        bump(st);
        if (uL && spine_max_x(*uL, st) >= x0) {
            auto uR = child(u, Side::Right);
            bump(st);
            if (uR && point_at(*uR).y >= y1) {
                if (!emit_subtree(*this, *uR, y1, sink, count, st)) return count;
            }
            u = *uL;
        } else {
            auto uR = child(u, Side::Right);
            if (!uR) break;
            u = *uR;
        }
    }

    // Right arm along the x1 boundary.
    u = *R;
    for (;;) {
        const Point& q = point_at(u);
        bump(st);
        if (q.y < y1) break;
        bump(st);
        if (q.x <= x1) {
            if (!emit(q)) return count;
        }
        auto uR = child(u, Side::Right);
        bump(st);
        if (uR && spine_min_x(*uR, st) <= x1) {
            auto uL = child(u, Side::Left);
            bump(st);
            if (uL && point_at(*uL).y >= y1) {
                if (!emit_subtree(*this, *uL, y1, sink, count, st)) return count;
            }
            u = *uR;
        } else {
            auto uL = child(u, Side::Left);
            if (!uL) break;
            u = *uL;
        }
    }

    return count;
}

void Pst::delete_root() {
    if (live_count_ == 0) throw input_error("tree exhausted");
    std::vector<Point>& pts = *points_;
    NodeRef cur = root();
    for (;;) {
        auto l = live_child(cur, Side::Left);
        auto r = live_child(cur, Side::Right);
        std::optional<NodeRef> next;
        if (l && r)
            next = priority_better(mode_, point_at(*l), point_at(*r)) ? l : r;
        else
            next = l ? l : r;
        if (!next) break;
        std::swap(pts[cur.idx - 1], pts[next->idx - 1]);
        cur = *next;
    }
    --live_count_;
    if (live_count_ > 0) root_point_ = pts[0];
}

std::optional<NodeRef> Pst::best_in_span(const NodeRef& start, double alpha,
                                         double beta) const {
    auto in_span = [&](double x) { return x > alpha && x < beta; };

    NodeRef v = start;
    std::optional<NodeRef> L, R;
    for (;;) {
        if (in_span(point_at(v).x)) return v;
        L = live_child(v, Side::Left);
        R = live_child(v, Side::Right);
        const bool left_rel = L && live_spine_max_x(*L) > alpha;
        const bool right_rel = R && live_spine_min_x(*R) < beta;
        if (!left_rel && !right_rel) return std::nullopt;
        if (left_rel != right_rel) {
            v = left_rel ? *L : *R;
            continue;
        }
        break;
    }

    auto arm = [&](NodeRef u, bool left_arm) -> std::optional<NodeRef> {
        std::optional<NodeRef> hang_best;
        for (;;) {
            if (in_span(point_at(u).x)) {
                if (hang_best && priority_better(mode_, point_at(*hang_best),
                                                 point_at(u)))
                    return hang_best;
                return u;
            }
            const Side toward = left_arm ? Side::Left : Side::Right;
            const Side away = left_arm ? Side::Right : Side::Left;
            auto a = live_child(u, toward);
            const bool rel = a && (left_arm ? live_spine_max_x(*a) > alpha
                                            : live_spine_min_x(*a) < beta);
            if (rel) {
                auto b = live_child(u, away);
                if (b && (!hang_best ||
                          priority_better(mode_, point_at(*b),
                                          point_at(*hang_best))))
                    hang_best = b;
                u = *a;
            } else {
                auto b = live_child(u, away);
                if (!b) return hang_best;
                u = *b;
            }
        }
    };

    auto lhs = arm(*L, true);
    auto rhs = arm(*R, false);
    if (!lhs) return rhs;
    if (!rhs) return lhs;
    return priority_better(mode_, point_at(*lhs), point_at(*rhs)) ? lhs : rhs;
}

}  // namespace mer
