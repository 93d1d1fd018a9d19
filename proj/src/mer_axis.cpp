#include "mer/mer_axis.hpp"

#include <optional>

#include "mer/errors.hpp"

namespace mer {

namespace {

// Queue entry: a node index, plus the root of the subtree it was mined from
// when it came out of a span search (origin == 0 for a directly offered
// child).  A mined entry acts as a lazy cursor over its subtree: popping it
// re-searches the origin under the shrunken span.
struct Entry {
    std::uint64_t idx = 0;
    std::uint64_t origin = 0;
};

class BoundedDeque {
public:
    BoundedDeque(std::size_t cap, WorkspaceMeter* meter)
        : buf_(cap), charge_(meter, 2 * cap + 4) {}

    bool empty() const { return size_ == 0; }
    std::size_t size() const { return size_; }
    const Entry& front() const { return buf_[head_]; }
    const Entry& at(std::size_t i) const { return buf_[(head_ + i) % buf_.size()]; }

    void push_front(const Entry& e) {
        if (size_ == buf_.size()) throw internal_error("queue capacity exceeded");
        head_ = (head_ + buf_.size() - 1) % buf_.size();
        buf_[head_] = e;
        ++size_;
    }
    Entry pop_front() {
        Entry e = buf_[head_];
        head_ = (head_ + 1) % buf_.size();
        --size_;
        return e;
    }
    // positional edits shift at most size() slots; used by the rare
    // out-of-order arrivals
    void insert_at(std::size_t i, const Entry& e) {
        if (size_ == buf_.size()) throw internal_error("queue capacity exceeded");
        ++size_;
        for (std::size_t j = size_ - 1; j > i; --j)
            slot(j) = slot(j - 1);
        slot(i) = e;
    }
    Entry erase_at(std::size_t i) {
        Entry e = slot(i);
        for (std::size_t j = i + 1; j < size_; ++j)
            slot(j - 1) = slot(j);
        --size_;
        return e;
    }

private:
    Entry& slot(std::size_t i) { return buf_[(head_ + i) % buf_.size()]; }

    std::vector<Entry> buf_;
    std::size_t head_ = 0;
    std::size_t size_ = 0;
    MeterCharge charge_;
};

enum class QSide { L, R };

struct Sweep {
    Pst& t;
    const Region& region;
    const MerSink& sink;
    PassStats* stats;
    Point apex;
    double alpha;
    double beta;
    BoundedDeque ql;
    BoundedDeque qr;
    std::size_t reports = 0;
    bool keep_going = true;

    MeterCharge pending_charge;

    Sweep(Pst& tree, const Region& reg, const MerSink& s, PassStats* st,
          WorkspaceMeter* meter)
        : t(tree),
          region(reg),
          sink(s),
          stats(st),
          apex(tree.point_at(tree.root())),
          alpha(reg.x_min),
          beta(reg.x_max),
          ql(2 * tree.levels() + 2, meter),
          qr(2 * tree.levels() + 2, meter),
          pending_charge(meter, 2 * (2 * tree.levels() + 2)) {
        pending.reserve(2 * tree.levels() + 2);
    }

    const Point& at(std::uint64_t idx) const { return t.point_at(t.node_at(idx)); }
    QSide side_of(double x) const { return x < apex.x ? QSide::L : QSide::R; }
    bool better(const Point& a, const Point& b) const {
        return priority_better(t.mode(), a, b);
    }

    void note_occupancy() {
        if (stats)
            stats->max_occupancy = std::max(
                stats->max_occupancy,
                static_cast<std::uint64_t>(std::max(ql.size(), qr.size())));
    }

    void validate(const BoundedDeque& q, QSide s) const {
        if (!stats || !stats->validate_queues) return;
        for (std::size_t i = 0; i < q.size(); ++i) {
            const Point& p = at(q.at(i).idx);
            if (!(p.x > alpha && p.x < beta))
                throw internal_error("queue entry left the span");
            if (s == QSide::L ? p.x >= apex.x : p.x < apex.x)
                throw internal_error("queue entry on the wrong side");
            if (i > 0) {
                const Point& prev = at(q.at(i - 1).idx);
                if (!better(prev, p))
                    throw internal_error("queue priority order violation");
                if (s == QSide::L ? prev.x >= p.x : prev.x <= p.x)
                    throw internal_error("queue x order violation");
            }
        }
    }

    // After the owner of x_cut is popped, the span keeps only the apex side
    // of x_cut; an entry at x is gone iff it falls on the far side.
    static bool cut_kills(QSide s, double x_cut, double x) {
        return s == QSide::L ? x <= x_cut : x >= x_cut;
    }

    // An entry whose head point is about to be truncated away still owns the
    // rest of its subtree: re-mine it under the span that will exist once
    // the truncating point has been popped.
    std::optional<Entry> advance(const Entry& e, QSide s, double x_cut) const {
        const std::uint64_t origin = e.origin != 0 ? e.origin : e.idx;
        const double a = s == QSide::L ? x_cut : alpha;
        const double b = s == QSide::L ? beta : x_cut;
        auto w = t.best_in_span(t.node_at(origin), a, b);
        if (!w) return std::nullopt;
        return Entry{w->idx, origin};
    }

    // Ordered insert keeping both staircases: priority strictly falling and
    // x walking away from the span edge, front to back.  Entries whose heads
    // cannot outlive their better-priority neighbours advance instead of
    // being dropped; dominated entries behind the insert point advance too.
    void offer(Entry e) {
        for (;;) {
            const Point& h = at(e.idx);
            const QSide s = side_of(h.x);
            BoundedDeque& q = s == QSide::L ? ql : qr;
            std::size_t pos = 0;
            while (pos < q.size() && better(at(q.at(pos).idx), h)) ++pos;
            if (pos > 0) {
                // largest-x better entry; it pops before e's head could
                const Point& nb = at(q.at(pos - 1).idx);
                if (cut_kills(s, nb.x, h.x)) {
                    auto adv = advance(e, s, nb.x);
                    if (!adv) return;
                    e = *adv;
                    continue;  // may even land on the other side
                }
            }
            while (pos < q.size() &&
                   cut_kills(s, h.x, at(q.at(pos).idx).x)) {
                Entry victim = q.erase_at(pos);
                if (stats) ++stats->evictions;
                if (auto adv = advance(victim, s, h.x))
                    pending.push_back(*adv);
            }
            q.insert_at(pos, e);
            if (stats) ++stats->insertions;
            note_occupancy();
            validate(q, s);
            return;
        }
    }

    // Offers may displace entries; displaced subtrees re-enter here.
    std::vector<Entry> pending;

    void offer_and_settle(Entry e) {
        offer(e);
        while (!pending.empty()) {
            Entry next = pending.back();
            pending.pop_back();
            offer(next);
        }
    }

    // In-span children are offered as themselves; a child outside the span
    // is represented by the best in-span point of its subtree, if any.
    void dispatch_child(const NodeRef& c) {
        const Point& cp = t.point_at(c);
        if (cp.x > alpha && cp.x < beta) {
            offer_and_settle(Entry{c.idx, 0});
        } else {
            auto w = t.best_in_span(c, alpha, beta);
            if (w) offer_and_settle(Entry{w->idx, c.idx});
        }
    }

    bool emit(const AxisRect& rect, MerPhase phase) {
        ++reports;
        if (stats) ++stats->reports;
        if (!sink(MerRecord{rect, area(rect), perimeter(rect), phase})) {
            keep_going = false;
            return false;
        }
        return true;
    }

    PassResult run() {
        const bool top_down = t.mode() == PriorityMode::MaxY;
        const MerPhase phase = top_down ? MerPhase::TopDown : MerPhase::BottomUp;

        const NodeRef root = t.root();
        if (auto cr = t.live_child(root, Side::Right)) dispatch_child(*cr);
        if (auto cl = t.live_child(root, Side::Left)) dispatch_child(*cl);

        while (!(ql.empty() && qr.empty())) {
            QSide ps;
            if (ql.empty())
                ps = QSide::R;
            else if (qr.empty())
                ps = QSide::L;
            else
                ps = better(at(ql.front().idx), at(qr.front().idx)) ? QSide::L
                                                                    : QSide::R;
            Entry e = (ps == QSide::L ? ql : qr).pop_front();
            if (stats) ++stats->pops;
            const Point p = at(e.idx);

            AxisRect rect = top_down ? AxisRect{alpha, p.y, beta, apex.y}
                                     : AxisRect{alpha, apex.y, beta, p.y};
            if (rect.y1 > rect.y0 && !emit(rect, phase))
                return {reports, false};

            if (ps == QSide::L)
                alpha = p.x;
            else
                beta = p.x;

            if (e.origin != 0) {
                auto w = t.best_in_span(t.node_at(e.origin), alpha, beta);
                if (w) offer_and_settle(Entry{w->idx, e.origin});
            } else {
                const NodeRef pref = t.node_at(e.idx);
                auto l = t.live_child(pref, Side::Left);
                auto r = t.live_child(pref, Side::Right);
                if (stats && l && r && side_of(t.point_at(*l).x) == QSide::L &&
                    side_of(t.point_at(*r).x) == QSide::R && !ql.empty() &&
                    !qr.empty())
                    ++stats->split_pops_both_queues;
                if (r) dispatch_child(*r);
                if (l) dispatch_child(*l);
            }
        }

        AxisRect last = top_down
                            ? AxisRect{alpha, region.y_min, beta, apex.y}
                            : AxisRect{alpha, apex.y, beta, region.y_max};
        if (last.y1 > last.y0 && !emit(last, phase)) return {reports, false};
        return {reports, true};
    }
};

std::size_t sweep_phase(std::vector<Point>& points, const Region& region,
                        PriorityMode mode, const MerSink& sink,
                        PassStats* stats, WorkspaceMeter* meter) {
    if (points.empty()) return 0;
    Pst tree = Pst::build(points, region, mode, meter);
    std::size_t total = 0;
    const std::uint64_t n = tree.size();
    for (std::uint64_t pass = 0; pass < n; ++pass) {
        PassResult r = run_pass(tree, region, sink, stats, meter);
        total += r.reports;
        if (!r.keep_going) break;
        tree.delete_root();
    }
    return total;
}

}  // namespace

PassResult run_pass(Pst& tree, const Region& region, const MerSink& sink,
                    PassStats* stats, WorkspaceMeter* meter) {
    if (tree.live_count() == 0) throw input_error("tree exhausted");
    Sweep sweep(tree, region, sink, stats, meter);
    return sweep.run();
}

std::size_t top_down_phase(std::vector<Point>& points, const Region& region,
                           const MerSink& sink, PassStats* stats,
                           WorkspaceMeter* meter) {
    return sweep_phase(points, region, PriorityMode::MaxY, sink, stats, meter);
}

std::size_t bottom_up_phase(std::vector<Point>& points, const Region& region,
                            const MerSink& sink, PassStats* stats,
                            WorkspaceMeter* meter) {
    return sweep_phase(points, region, PriorityMode::MinY, sink, stats, meter);
}

std::size_t slab_pass(std::vector<Point>& points, const Region& region,
                      const MerSink& sink, WorkspaceMeter* meter) {
    if (!region.valid()) throw input_error("invalid region");
    MeterCharge scratch(meter, 8);
    heap_sort(points.begin(), points.end(),
              [](const Point& a, const Point& b) { return lex_less(a, b); });
    std::size_t count = 0;
    double prev = region.x_min;
    auto emit = [&](double x0, double x1) {
        AxisRect rect{x0, region.y_min, x1, region.y_max};
        ++count;
        return sink(MerRecord{rect, area(rect), perimeter(rect), MerPhase::Slab});
    };
    for (const Point& p : points) {
        if (p.x > prev) {
            if (!emit(prev, p.x)) return count;
            prev = p.x;
        }
    }
    if (region.x_max > prev) emit(prev, region.x_max);
    return count;
}

MerRecord largest_mer(std::vector<Point>& points, const Region& region,
                      Objective objective, PassStats* stats,
                      WorkspaceMeter* meter) {
    if (!region.valid()) throw input_error("invalid region");
    std::optional<MerRecord> best;
    auto value = [&](const MerRecord& r) {
        return objective == Objective::Area ? r.area : r.perimeter;
    };
    MerSink track = [&](const MerRecord& r) {
        if (!best || value(r) > value(*best) ||
            (value(r) == value(*best) && lex_less(r.rect, best->rect)))
            best = r;
        return true;
    };
    top_down_phase(points, region, track, stats, meter);
    bottom_up_phase(points, region, track, stats, meter);
    slab_pass(points, region, track, meter);
    if (!best) throw internal_error("no rectangle produced");
    return *best;
}

}  // namespace mer
