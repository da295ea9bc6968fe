#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "multicover/geometry.hpp"
#include "multicover/notes.hpp"
#include "multicover/rational.hpp"
#include "multicover/rng.hpp"

using namespace multicover;

namespace {

std::vector<Line> random_lines(std::uint64_t seed, int count, double radius) {
    CounterRng rng(seed);
    std::vector<Line> out;
    for (int i = 0; i < count; ++i) {
        double theta = rng.next_uniform() * 2.0 * M_PI;
        double a = std::cos(theta);
        double b = std::sin(theta);
        if (std::abs(b) < 1e-3) {  // stay clearly non-vertical for the generic tests
            b = b < 0 ? -1e-3 : 1e-3;
            a = std::sqrt(1.0 - b * b) * (a < 0 ? -1.0 : 1.0);
        }
        Vec2 pivot{(rng.next_uniform() * 2 - 1) * radius, (rng.next_uniform() * 2 - 1) * radius};
        out.push_back(Line{a, b, a * pivot.x + b * pivot.y});
    }
    return out;
}

// Interior sample of a trapezoid, away from the walls.
Vec2 sample_inside(const Trapezoid& t, CounterRng& rng) {
    double u = 0.05 + 0.9 * rng.next_uniform();
    double v = 0.05 + 0.9 * rng.next_uniform();
    double x = t.xl + u * (t.xr - t.xl);
    return Vec2{x, t.y_bottom(x) + v * t.height_at(x)};
}

}  // namespace

TEST_CASE("halfplane containment basics") {
    auto h = Halfplane::normalized(3.0, 4.0, 10.0);
    CHECK(std::hypot(h.a, h.b) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(h.contains(Vec2{0, 0}));
    CHECK(h.contains(Vec2{2, 1}));        // 3*2+4*1 = 10, boundary included
    CHECK_FALSE(h.contains(Vec2{3, 2}));  // 17 > 10
    CHECK(h.margin(Vec2{2, 1}) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("containment agrees with exact rational sign away from the tolerance band") {
    CounterRng rng(2024);
    int checked = 0;
    while (checked < 4000) {
        long long a = rng.next_int(-50, 50);
        long long b = rng.next_int(-50, 50);
        if (a == 0 && b == 0) continue;
        long long c = rng.next_int(-200, 200);
        long long px = rng.next_int(-20, 20);
        long long py = rng.next_int(-20, 20);
        Rational margin = Rational(a) * Rational(px) + Rational(b) * Rational(py) - Rational(c);
        // Skip points within 2e-9 of the boundary in normalized units:
        // margin^2 <= (2e-9)^2 * (a^2+b^2) has no integer solutions besides 0 here.
        if (margin == Rational(0)) continue;
        auto h = Halfplane::normalized(double(a), double(b), double(c));
        CHECK(h.contains(Vec2{double(px), double(py)}) == (margin < Rational(0)));
        ++checked;
    }
}

TEST_CASE("bounding box encloses points and pairwise intersections with 10% inflation") {
    std::vector<Vec2> pts{{0, 0}, {10, 0}};
    // Two lines crossing at (5, 20).
    std::vector<Line> lines;
    {
        double a1 = 1, b1 = 1, c1 = 25;   // x + y = 25
        double a2 = -1, b2 = 1, c2 = 15;  // -x + y = 15
        double n1 = std::hypot(a1, b1), n2 = std::hypot(a2, b2);
        lines.push_back(Line{a1 / n1, b1 / n1, c1 / n1});
        lines.push_back(Line{a2 / n2, b2 / n2, c2 / n2});
    }
    auto box = bounding_box(pts, lines);
    CHECK(box.xmin == doctest::Approx(-1.0));
    CHECK(box.xmax == doctest::Approx(11.0));
    CHECK(box.ymin == doctest::Approx(-2.0));
    CHECK(box.ymax == doctest::Approx(22.0));
    for (const auto& p : pts) {
        CHECK(p.x > box.xmin);
        CHECK(p.x < box.xmax);
    }
}

TEST_CASE("decomposition of no lines is the region itself") {
    auto region = box_region(BoundingBox{0, 10, 0, 4});
    auto cells = trapezoid_decomposition({}, region);
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].area() == doctest::Approx(40.0));
}

TEST_CASE("a single spanning line yields exactly two cells") {
    auto region = box_region(BoundingBox{-10, 10, -10, 10});
    double n = std::hypot(0.2, 1.0);
    auto cells = trapezoid_decomposition({Line{0.2 / n, 1.0 / n, 0.0}}, region);
    REQUIRE(cells.size() == 2);
    CHECK(cells[0].area() + cells[1].area() == doctest::Approx(400.0).epsilon(1e-9));
}

TEST_CASE("a line exiting through the top splits the region into three cells") {
    auto region = box_region(BoundingBox{0, 10, 0, 10});
    // Steep-ish line y = 2x crosses the top edge at x = 5.
    double n = std::hypot(2.0, -1.0);
    auto cells = trapezoid_decomposition({Line{2.0 / n, -1.0 / n, 0.0}}, region);
    CHECK(cells.size() == 3);
    double total = 0;
    for (const auto& c : cells) total += c.area();
    CHECK(total == doctest::Approx(100.0).epsilon(1e-9));
}

TEST_CASE("random decompositions partition the box and no line crosses a cell") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        int count = 2 + int(seed % 9);
        auto lines = random_lines(seed * 101, count, 5.0);
        auto box = bounding_box({{-5, -5}, {5, 5}}, lines);
        auto region = box_region(box);
        auto cells = trapezoid_decomposition(lines, region);

        // Cell count stays quadratic in the number of lines.
        CHECK(cells.size() <= 2 * std::size_t(count + 2) * std::size_t(count + 2));

        double total = 0.0;
        for (const auto& c : cells) {
            CHECK(c.xl < c.xr);
            total += c.area();
        }
        double box_area = box.width() * box.height();
        CHECK(total == doctest::Approx(box_area).epsilon(kAreaRelTol));

        // No input line may separate interior samples of any cell.
        CounterRng rng(seed * 7 + 1);
        double scale = std::max({1.0, std::abs(box.xmax), std::abs(box.ymax), std::abs(box.xmin), std::abs(box.ymin)});
        for (const auto& c : cells) {
            for (const Line& l : lines) {
                bool pos = false, neg = false;
                for (int k = 0; k < 24; ++k) {
                    double e = l.eval(sample_inside(c, rng));
                    pos = pos || e > 1e-9 * scale;
                    neg = neg || e < -1e-9 * scale;
                }
                CHECK_FALSE((pos && neg));
            }
        }

        // Random probes: inside at least one closed cell, strictly inside at most one.
        for (int k = 0; k < 200; ++k) {
            Vec2 p{box.xmin + rng.next_uniform() * box.width(), box.ymin + rng.next_uniform() * box.height()};
            int closed = 0, strict = 0;
            for (const auto& c : cells) {
                if (c.contains(p, 1e-9 * scale)) ++closed;
                if (c.contains(p, -1e-9 * scale)) ++strict;
            }
            CHECK(closed >= 1);
            CHECK(strict <= 1);
        }
    }
}

TEST_CASE("decomposition is deterministic") {
    auto lines = random_lines(99, 8, 5.0);
    auto region = box_region(bounding_box({{-5, -5}, {5, 5}}, lines));
    auto a = trapezoid_decomposition(lines, region);
    auto b = trapezoid_decomposition(lines, region);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].xl == b[i].xl);
        CHECK(a[i].xr == b[i].xr);
        CHECK(a[i].top.c == b[i].top.c);
        CHECK(a[i].bottom.c == b[i].bottom.c);
    }
}

TEST_CASE("coincident duplicates are deduped and vertical lines become walls") {
    notes::clear();
    auto region = box_region(BoundingBox{-10, 10, -10, 10});
    double n = std::hypot(1.0, 2.0);
    Line l{1.0 / n, 2.0 / n, 3.0 / n};
    Line vertical{1.0, 0.0, 2.0};
    auto cells = trapezoid_decomposition({l, l, vertical}, region);
    CHECK(notes::count("dedup-line") == 1);
    CHECK(notes::count("vertical-wall") == 1);
    double total = 0;
    for (const auto& c : cells) total += c.area();
    CHECK(total == doctest::Approx(400.0).epsilon(1e-6));
    // The vertical line turns into exact cell walls: every cell has x=2 as a
    // wall or lies entirely on one side, and both sides are populated.
    bool left = false, right = false;
    for (const auto& c : cells) {
        CHECK((c.xr == 2.0 || c.xl == 2.0 || c.xr < 2.0 || c.xl > 2.0));
        CHECK(!line_crosses_interior(vertical, c));
        if (c.interior_point().x < 2.0) left = true;
        if (c.interior_point().x > 2.0) right = true;
    }
    CHECK(left);
    CHECK(right);
}

TEST_CASE("conflict membership: crossing detected, tangent and covering excluded") {
    Trapezoid t = box_region(BoundingBox{0, 4, 0, 2});
    // Diagonal through the middle.
    double n = std::hypot(1.0, -2.0);
    CHECK(line_crosses_interior(Line{1.0 / n, -2.0 / n, 0.0}, t));
    // Horizontal line along the top edge: touches, does not cross.
    CHECK_FALSE(line_crosses_interior(Line{0.0, 1.0, 2.0}, t));
    // Line passing exactly through the corner (0,2) with positive slope leaves the box.
    double m = std::hypot(1.0, 1.0);
    CHECK_FALSE(line_crosses_interior(Line{-1.0 / m, 1.0 / m, 2.0 / m}, t));
    // Far away line.
    CHECK_FALSE(line_crosses_interior(Line{0.0, 1.0, 50.0}, t));

    auto crossing = Halfplane::normalized(1.0, -2.0, 0.0);
    auto covering = Halfplane::normalized(0.0, -1.0, 1.0);   // y >= -1 contains the box
    auto disjoint = Halfplane::normalized(0.0, 1.0, -1.0);   // y <= -1 misses the box
    CHECK(classify(crossing, t) == CellRelation::kCrosses);
    CHECK(classify(covering, t) == CellRelation::kContains);
    CHECK(classify(disjoint, t) == CellRelation::kDisjoint);
    auto cl = conflict_list(t, {crossing, covering, disjoint});
    CHECK(cl == std::vector<int>{0});
}

TEST_CASE("conflict lists agree with interior sampling on random cells") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        auto lines = random_lines(seed * 313, 6, 5.0);
        auto box = bounding_box({{-5, -5}, {5, 5}}, lines);
        auto cells = trapezoid_decomposition(lines, box_region(box));
        auto probes = random_lines(seed * 313 + 7, 12, 5.0);
        std::vector<Halfplane> hs;
        for (const Line& l : probes) hs.push_back(Halfplane{l.a, l.b, l.c});
        CounterRng rng(seed);
        double scale = 10.0;
        for (const auto& c : cells) {
            auto cl = conflict_list(c, hs);
            for (std::size_t i = 0; i < hs.size(); ++i) {
                bool pos = false, neg = false;
                for (int k = 0; k < 32; ++k) {
                    double e = hs[i].boundary().eval(sample_inside(c, rng));
                    pos = pos || e > 1e-7 * scale;
                    neg = neg || e < -1e-7 * scale;
                }
                bool sampled_cross = pos && neg;
                bool listed = std::count(cl.begin(), cl.end(), int(i)) > 0;
                // Sampling proves crossings; it cannot refute them.
                if (sampled_cross) CHECK(listed);
            }
        }
    }
}

TEST_CASE("cell depth counts only fully-containing halfplanes") {
    Trapezoid t = box_region(BoundingBox{0, 2, 0, 2});
    std::vector<Halfplane> hs{
        Halfplane::normalized(0, -1, 1),   // y >= -1: contains
        Halfplane::normalized(-1, 0, 1),   // x >= -1: contains
        Halfplane::normalized(1, -1, 0),   // crosses the diagonal
        Halfplane::normalized(0, 1, -5),   // disjoint
    };
    CHECK(cell_depth(t, hs) == doctest::Approx(2.0));
    CHECK(cell_depth(t, hs, {0.5, 0.25, 10.0, 10.0}) == doctest::Approx(0.75));
}

TEST_CASE("cell depth is the interior point depth over non-crossing halfplanes") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        auto lines = random_lines(seed * 77, 5, 5.0);
        auto box = bounding_box({{-5, -5}, {5, 5}}, lines);
        auto cells = trapezoid_decomposition(lines, box_region(box));
        auto probes = random_lines(seed * 77 + 3, 10, 5.0);
        std::vector<Halfplane> hs;
        for (const Line& l : probes) hs.push_back(Halfplane{l.a, l.b, l.c});
        CounterRng rng(seed);
        for (const auto& c : cells) {
            double d = cell_depth(c, hs);
            // Every interior sample is covered by at least the containing set.
            for (int k = 0; k < 8; ++k) {
                Vec2 p = sample_inside(c, rng);
                double pd = 0;
                for (const auto& h : hs)
                    if (h.contains(p)) pd += 1.0;
                CHECK(pd >= d - 1e-9);
            }
            // And containment classification is constant across the cell.
            for (std::size_t i = 0; i < hs.size(); ++i) {
                auto rel = classify(hs[i], c);
                if (rel == CellRelation::kCrosses) continue;
                for (int k = 0; k < 8; ++k) {
                    double margin = hs[i].margin(sample_inside(c, rng));
                    if (rel == CellRelation::kContains)
                        CHECK(margin <= 1e-7);
                    else
                        CHECK(margin >= -1e-7);
                }
            }
        }
    }
}

TEST_CASE("union boundary of halfplanes stays linear in their number") {
    BoundingBox box{-20, 20, -20, 20};
    // Three halfplanes whose complement is a triangle: 3 union edges.
    std::vector<Halfplane> tri{
        Halfplane::normalized(0, -1, -1),  // y <= ... complement y >= -1... union side y <= -1
        Halfplane::normalized(1, 1, -1),
        Halfplane::normalized(-1, 1, -1),
    };
    int e = union_boundary_edge_count(tri, box);
    CHECK(e == 3);

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto lines = random_lines(seed * 17, 30, 10.0);
        std::vector<Halfplane> hs;
        CounterRng rng(seed);
        for (const Line& l : lines) {
            double s = rng.next_uniform() < 0.5 ? 1.0 : -1.0;
            hs.push_back(Halfplane{s * l.a, s * l.b, s * l.c});
        }
        auto b2 = bounding_box({{-10, -10}, {10, 10}}, lines);
        CHECK(union_boundary_edge_count(hs, b2) <= 2 * int(hs.size()));
    }
}

TEST_CASE("svg rendering emits polygons for cells") {
    auto lines = random_lines(5, 4, 5.0);
    auto box = bounding_box({{-5, -5}, {5, 5}}, lines);
    auto cells = trapezoid_decomposition(lines, box_region(box));
    auto svg = svg_decomposition(cells, lines, {{0, 0}}, box);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("<polygon") != std::string::npos);
    CHECK(svg.find("<circle") != std::string::npos);
}
