#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mer/errors.hpp"
#include "mer/io.hpp"
#include "mer/mer_oriented.hpp"
#include "mer/oracle.hpp"
#include "test_util.hpp"

using namespace mer;
using namespace mer_test;

namespace {

const Region kBox{0, 0, 4, 4};
const Region kUnit{0, 0, 1, 1};

bool rect_in_region(const OrientedRect& r, const Region& reg, double tol) {
    for (const Point& c : r.corners)
        if (c.x < reg.x_min - tol || c.x > reg.x_max + tol ||
            c.y < reg.y_min - tol || c.y > reg.y_max + tol)
            return false;
    return true;
}

double dist_to_line(const Point& p, const Point& a, const Point& b) {
    return std::abs(cross(a, b, p)) / std::hypot(b.x - a.x, b.y - a.y);
}

// one side's supporting line must run through both support points
bool supported(const OrientedMerRecord& r, double tol) {
    for (int i = 0; i < 4; ++i) {
        const Point& a = r.rect.corners[i];
        const Point& b = r.rect.corners[(i + 1) % 4];
        if (a == b) continue;
        if (dist_to_line(r.support[0], a, b) <= tol &&
            dist_to_line(r.support[1], a, b) <= tol)
            return true;
    }
    return false;
}

}  // namespace

TEST_CASE("partition_by_line splits by side of the pair's line") {
    std::vector<Point> pts{{1, 1}, {2, 0}, {2, 4}, {3, 2}};
    auto [n1, n2] = partition_by_line(pts, 1, 4);
    CHECK(n1 == 1);
    CHECK(n2 == 1);
    CHECK(pts[0] == Point{1, 1});
    CHECK(pts[1] == Point{3, 2});
    CHECK(pts[2] == Point{2, 0});   // below
    CHECK(pts[3] == Point{2, 4});   // above

    // everything above the pair
    std::vector<Point> up{{1, 1}, {2, 3}, {3, 4}, {4, 1.2}};
    std::sort(up.begin(), up.end(),
              [](const Point& a, const Point& b) { return lex_less(a, b); });
    auto [a1, a2] = partition_by_line(up, 1, 4);
    CHECK(a1 == 0);
    CHECK(a2 == 2);

    std::vector<Point> two{{1, 1}, {3, 2}};
    auto [z1, z2] = partition_by_line(two, 1, 2);
    CHECK(z1 == 0);
    CHECK(z2 == 0);

    std::vector<Point> col{{1, 1}, {2, 2}, {3, 3}};
    CHECK_THROWS_AS(partition_by_line(col, 1, 3), input_error);
}

TEST_CASE("partition is a permutation with correct side classification") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        std::vector<Point> pts = lex_sorted(generate_points(14, kUnit, seed));
        std::vector<Point> original = pts;
        SplitMix64 rng(seed);
        std::size_t i = 1 + rng.next() % 13;
        std::size_t j = i + 1 + rng.next() % (14 - i);
        auto [n1, n2] = partition_by_line(pts, i, j);
        CHECK(n1 + n2 == 12);
        CHECK(same_multiset(pts, original));
        const Point a = pts[0], b = pts[1];
        for (std::size_t r = 3; r <= 2 + n1; ++r)
            CHECK(cross(a, b, pts[r - 1]) < 0);
        for (std::size_t r = 3 + n1; r <= 14; ++r)
            CHECK(cross(a, b, pts[r - 1]) > 0);
    }
}

TEST_CASE("sort_side_by_distance orders by recomputed distance") {
    const Point a{0, 0}, b{4, 0};
    std::vector<Point> pts{a, b, {1, 2}, {2, 1}, {3, 3}};
    sort_side_by_distance(pts, 3, 5, a, b);
    CHECK(pts[2] == Point{2, 1});
    CHECK(pts[3] == Point{1, 2});
    CHECK(pts[4] == Point{3, 3});

    // one element is untouched
    std::vector<Point> single{a, b, {1, 2}};
    sort_side_by_distance(single, 3, 3, a, b);
    CHECK(single[2] == Point{1, 2});

    // equidistant points fall back to the projection parameter
    std::vector<Point> tie{a, b, {3, 1}, {1, 1}};
    sort_side_by_distance(tie, 3, 4, a, b);
    CHECK(tie[2] == Point{1, 1});
    CHECK(tie[3] == Point{3, 1});
}

TEST_CASE("process_pair: horizontal pair with empty sides") {
    std::vector<Point> pts{{1, 2}, {3, 2}};
    std::vector<OrientedMerRecord> got;
    std::size_t cnt = process_pair(pts, 1, 2, kBox, [&](const OrientedMerRecord& r) {
        got.push_back(r);
        return true;
    });
    REQUIRE(cnt == 2);
    CHECK(got[0].area == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(got[1].area == doctest::Approx(8.0).epsilon(1e-12));
    // below side first: y in [0,2]
    CHECK(got[0].rect.corners[0] == Point{0, 0});
    CHECK(got[1].rect.corners[0] == Point{0, 2});
    CHECK(pts == lex_sorted(pts));
}

TEST_CASE("process_pair: diagonal pair through region corners is depth-capped") {
    std::vector<Point> pts{{1, 1}, {2, 2}};
    std::vector<OrientedMerRecord> got;
    process_pair(pts, 1, 2, kBox, [&](const OrientedMerRecord& r) {
        got.push_back(r);
        return true;
    });
    REQUIRE(got.size() == 2);
    CHECK(got[0].area == doctest::Approx(0.0));
    CHECK(got[1].area == doctest::Approx(0.0));
}

TEST_CASE("process_pair: blocked between the pair stops the side") {
    std::vector<Point> pts{{1, 1}, {2, 0}, {2, 4}, {3, 2}};
    std::sort(pts.begin(), pts.end(),
              [](const Point& a, const Point& b) { return lex_less(a, b); });
    // pair (1,1)-(3,2): one point per side.  Below, (2,0) projects strictly
    // between the pair, so that side reports once and stops; above, (2,4)
    // projects onto the pair's end, so the side truncates and also reports
    // its final capped rectangle.
    std::vector<OrientedMerRecord> got;
    std::size_t cnt = process_pair(pts, 1, 4, kBox, [&](const OrientedMerRecord& r) {
        got.push_back(r);
        return true;
    });
    CHECK(cnt == 3);
    CHECK(pts == lex_sorted(pts));
}

TEST_CASE("largest_oriented named values and errors") {
    std::vector<Point> pts{{1, 2}, {3, 2}};
    OrientedMerRecord best = largest_oriented(pts, kBox, Objective::Area);
    CHECK(best.area == doctest::Approx(8.0).epsilon(1e-12));
    // tie broken toward the lexicographically smaller corner list
    CHECK(best.rect.corners[0] == Point{0, 0});
    CHECK(best.rect.corners[1] == Point{4, 0});
    CHECK(best.rect.corners[2] == Point{4, 2});
    CHECK(best.rect.corners[3] == Point{0, 2});

    std::vector<Point> one{{1, 1}};
    CHECK_THROWS_AS(largest_oriented(one, kBox, Objective::Area), input_error);
    std::vector<Point> dup{{1, 1}, {1, 1}};
    CHECK_THROWS_AS(largest_oriented(dup, kBox, Objective::Area), input_error);
}

TEST_CASE("every reported rectangle is empty, inside, and pair-supported") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        std::vector<Point> pts = generate_points(7, Region{0.25, 0.25, 0.75, 0.75},
                                                 seed * 3 + 1);
        std::vector<Point> work = pts;
        enumerate_oriented(work, kUnit, [&](const OrientedMerRecord& r) {
            for (const Point& p : pts)
                CHECK_FALSE(strictly_inside_oriented(p, r.rect));
            CHECK(rect_in_region(r.rect, kUnit, 1e-9));
            CHECK(supported(r, 1e-9));
            return true;
        });
    }
}

TEST_CASE("restoration: the array ends lexicographically sorted") {
    std::vector<Point> pts = generate_points(9, kUnit, 5);
    std::vector<Point> expect = lex_sorted(pts);
    largest_oriented(pts, kUnit, Objective::Area);
    CHECK(pts == expect);
}

TEST_CASE("axis-parallel pair agrees with the axis oracle") {
    std::vector<Point> pts{{1, 2}, {3, 2}, {2, 3.5}, {2, 0.5}};
    std::vector<Point> work = lex_sorted(pts);
    // ranks of (1,2) and (3,2) in sorted order: 1 and 4
    std::vector<OrientedMerRecord> got;
    process_pair(work, 1, 4, kBox, [&](const OrientedMerRecord& r) {
        got.push_back(r);
        return true;
    });
    // compare against axis rectangles carrying the pair on a horizontal side
    std::vector<AxisRect> axis;
    for (const AxisRect& r : oracle_axis_mers(pts, kBox)) {
        auto on_top = [&](const Point& p) {
            return p.y == r.y1 && p.x >= r.x0 && p.x <= r.x1;
        };
        auto on_bottom = [&](const Point& p) {
            return p.y == r.y0 && p.x >= r.x0 && p.x <= r.x1;
        };
        if ((on_top(pts[0]) && on_top(pts[1])) ||
            (on_bottom(pts[0]) && on_bottom(pts[1])))
            axis.push_back(r);
    }
    REQUIRE(axis.size() == got.size());
    for (const AxisRect& r : axis) {
        bool found = false;
        for (const OrientedMerRecord& g : got) {
            double lo_x = std::min({g.rect.corners[0].x, g.rect.corners[2].x});
            double hi_x = std::max({g.rect.corners[0].x, g.rect.corners[2].x});
            double lo_y = std::min({g.rect.corners[0].y, g.rect.corners[2].y});
            double hi_y = std::max({g.rect.corners[0].y, g.rect.corners[2].y});
            if (std::abs(lo_x - r.x0) < 1e-12 && std::abs(hi_x - r.x1) < 1e-12 &&
                std::abs(lo_y - r.y0) < 1e-12 && std::abs(hi_y - r.y1) < 1e-12)
                found = true;
        }
        CHECK(found);
    }
}

TEST_CASE("matches the support-enumeration oracle on interior-safe instances") {
    const Region wide{0.02, 0.02, 0.98, 0.98};
    std::size_t tested = 0;
    std::uint64_t seed = 0;
    while (tested < 40 && seed < 4000) {
        ++seed;
        std::size_t n = 6 + seed % 7;
        std::vector<Point> pts = generate_points(n, wide, seed * 119);
        auto want = oracle_oriented_best(pts, kUnit);
        if (!oriented_optimum_interior(want, pts, kUnit)) continue;
        ++tested;
        std::vector<Point> work = pts;
        OrientedMerRecord best = largest_oriented(work, kUnit, Objective::Area);
        CHECK(best.area == doctest::Approx(want.area).epsilon(1e-9));
    }
    CHECK(tested == 40);
}

TEST_CASE("n=2 considers at least one rectangle per side") {
    std::vector<Point> pts = generate_points(2, kUnit, 31);
    std::vector<Point> work = pts;
    std::size_t cnt = enumerate_oriented(work, kUnit,
                                         [](const OrientedMerRecord&) {
                                             return true;
                                         });
    CHECK(cnt >= 2);
}

TEST_CASE("workspace stays constant as n grows") {
    std::uint64_t peaks[3];
    int i = 0;
    for (std::size_t n : {4, 8, 12}) {
        WorkspaceMeter meter;
        std::vector<Point> pts = generate_points(n, kUnit, n);
        {
            AuditScope scope(meter, "mer-oriented");
            largest_oriented(pts, kUnit, Objective::Area, &meter);
        }
        CHECK(meter.peak_words() <= 256);
        peaks[i++] = meter.peak_words();
    }
    CHECK(peaks[0] == peaks[1]);
    CHECK(peaks[1] == peaks[2]);
}
