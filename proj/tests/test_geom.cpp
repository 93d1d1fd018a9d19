#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mer/errors.hpp"
#include "mer/geom.hpp"
#include "mer/io.hpp"

using namespace mer;

namespace {

// independent area reference for quadrilaterals
double shoelace(const OrientedRect& r) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
        const Point& a = r.corners[i];
        const Point& b = r.corners[(i + 1) % 4];
        s += a.x * b.y - b.x * a.y;
    }
    return std::abs(s) / 2.0;
}

}  // namespace

TEST_CASE("axis rectangle area") {
    CHECK(area(AxisRect{0, 0, 4, 4}) == 16.0);
    CHECK(area(AxisRect{1, 1, 1, 3}) == 0.0);
    CHECK(perimeter(AxisRect{0, 0, 4, 4}) == 16.0);

    SplitMix64 rng(7);
    for (int i = 0; i < 200; ++i) {
        double x0 = rng.next_unit(), y0 = rng.next_unit();
        double w = rng.next_unit(), h = rng.next_unit();
        AxisRect r{x0, y0, x0 + w, y0 + h};
        CHECK(area(r) == (r.x1 - r.x0) * (r.y1 - r.y0));
    }
}

TEST_CASE("oriented rectangle area matches shoelace") {
    OrientedRect r{{Point{0, 0}, Point{2, 2}, Point{1, 3}, Point{-1, 1}}};
    CHECK(r.valid());
    CHECK(area(r) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(area(r) == doctest::Approx(shoelace(r)).epsilon(1e-12));

    SplitMix64 rng(11);
    for (int i = 0; i < 100; ++i) {
        Point a{rng.next_unit() * 10, rng.next_unit() * 10};
        double angle = rng.next_unit() * 6.283185307179586;
        double w = 0.1 + rng.next_unit() * 5, h = 0.1 + rng.next_unit() * 5;
        Point u{std::cos(angle), std::sin(angle)};
        Point v{-u.y, u.x};
        OrientedRect q{{a,
                        {a.x + w * u.x, a.y + w * u.y},
                        {a.x + w * u.x + h * v.x, a.y + w * u.y + h * v.y},
                        {a.x + h * v.x, a.y + h * v.y}}};
        CHECK(q.valid());
        CHECK(area(q) == doctest::Approx(shoelace(q)).epsilon(1e-9));
        CHECK(area(q) == doctest::Approx(w * h).epsilon(1e-9));
    }
}

TEST_CASE("strictly_inside is an open-interior test") {
    AxisRect r{0, 0, 4, 4};
    CHECK(strictly_inside(Point{2, 2}, r));
    CHECK_FALSE(strictly_inside(Point{0, 2}, r));
    CHECK_FALSE(strictly_inside(Point{2, 4}, AxisRect{0, 1, 3, 4}));

    SplitMix64 rng(3);
    for (int i = 0; i < 200; ++i) {
        double x0 = rng.next_unit(), y0 = rng.next_unit();
        AxisRect q{x0, y0, x0 + 1 + rng.next_unit(), y0 + 1 + rng.next_unit()};
        double t = rng.next_unit();
        // boundary points are never strictly inside
        CHECK_FALSE(strictly_inside(Point{q.x0, q.y0 + t * (q.y1 - q.y0)}, q));
        CHECK_FALSE(strictly_inside(Point{q.x0 + t * (q.x1 - q.x0), q.y1}, q));
    }
}

TEST_CASE("strictly_inside_oriented") {
    OrientedRect r{{Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}}};
    CHECK(strictly_inside_oriented(Point{0.5, 0.5}, r));
    CHECK_FALSE(strictly_inside_oriented(Point{0, 0}, r));
    CHECK_FALSE(strictly_inside_oriented(Point{10, 10}, r));
    OrientedRect tilted{{Point{0, 0}, Point{2, 2}, Point{1, 3}, Point{-1, 1}}};
    Point center{(0 + 2 + 1 - 1) / 4.0, (0 + 2 + 3 + 1) / 4.0};
    CHECK(strictly_inside_oriented(center, tilted));
    for (const Point& c : tilted.corners)
        CHECK_FALSE(strictly_inside_oriented(c, tilted));
}

TEST_CASE("project_onto_line") {
    CHECK(project_onto_line(Point{1, 1}, Point{0, 0}, Point{2, 0}) == 0.5);
    CHECK(project_onto_line(Point{0, 0}, Point{0, 0}, Point{2, 0}) == 0.0);
    CHECK(project_onto_line(Point{3, 1}, Point{1, 1}, Point{3, 3}) ==
          doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(project_onto_line(Point{1, 1}, Point{2, 2}, Point{2, 2}),
                    input_error);

    SplitMix64 rng(5);
    for (int i = 0; i < 200; ++i) {
        Point a{rng.next_unit(), rng.next_unit()};
        Point b{a.x + 0.1 + rng.next_unit(), a.y + rng.next_unit()};
        CHECK(project_onto_line(a, a, b) == 0.0);
        CHECK(project_onto_line(b, a, b) == doctest::Approx(1.0).epsilon(1e-12));
    }
}
