#ifndef MER_MER_AXIS_HPP
#define MER_MER_AXIS_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "mer/geom.hpp"
#include "mer/pst.hpp"
#include "mer/workspace.hpp"

namespace mer {

enum class MerPhase { TopDown, BottomUp, Slab };
enum class Objective { Area, Perimeter };

struct MerRecord {
    AxisRect rect;
    double area = 0.0;
    double perimeter = 0.0;
    MerPhase phase = MerPhase::TopDown;
};

// Return false to stop the enumeration.
using MerSink = std::function<bool(const MerRecord&)>;

struct PassStats {
    std::uint64_t reports = 0;
    std::uint64_t pops = 0;
    std::uint64_t insertions = 0;
    std::uint64_t evictions = 0;
    std::uint64_t max_occupancy = 0;
    // Pops whose two live children straddle the apex while both queues were
    // already non-empty; believed impossible, counted rather than assumed.
    std::uint64_t split_pops_both_queues = 0;
    bool validate_queues = false;
};

struct PassResult {
    std::size_t reports = 0;
    bool keep_going = true;
};

// One sweep over the current root: every rectangle with its top (MaxY tree)
// or bottom (MinY tree) side through the root, the final one reaching the
// region edge.  Does not delete the root.
PassResult run_pass(Pst& tree, const Region& region, const MerSink& sink,
                    PassStats* stats = nullptr, WorkspaceMeter* meter = nullptr);

// Build + n times (run_pass; delete_root).  The array ends as a permutation
// of its input.
std::size_t top_down_phase(std::vector<Point>& points, const Region& region,
                           const MerSink& sink, PassStats* stats = nullptr,
                           WorkspaceMeter* meter = nullptr);
std::size_t bottom_up_phase(std::vector<Point>& points, const Region& region,
                            const MerSink& sink, PassStats* stats = nullptr,
                            WorkspaceMeter* meter = nullptr);

// Full-height rectangles between x-consecutive points; the two boundary
// slabs included.  Neither sweep phase can produce these (they carry no
// point on a horizontal side), so they get their own pass.
std::size_t slab_pass(std::vector<Point>& points, const Region& region,
                      const MerSink& sink, WorkspaceMeter* meter = nullptr);

// Streams all three passes into an argmax; ties go to the lexicographically
// smallest (x0, y0, x1, y1).
MerRecord largest_mer(std::vector<Point>& points, const Region& region,
                      Objective objective, PassStats* stats = nullptr,
                      WorkspaceMeter* meter = nullptr);

}  // namespace mer

#endif
