#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "multicover/types.hpp"

namespace multicover {

// Tolerance ladder, normalized units (unit-norm line coefficients).
constexpr double kContainTol = 1e-9;  // point-in-halfplane slack
constexpr double kNormTol = 1e-12;    // unit-norm checks, degenerate determinants
constexpr double kAreaRelTol = 1e-6;  // relative slack for partition area checks

// Boundary line a*x + b*y = c with (a,b) of unit Euclidean norm.
struct Line {
    double a = 0.0;
    double b = 1.0;
    double c = 0.0;

    bool vertical(double tol = kNormTol) const { return std::abs(b) <= tol; }
    // y at abscissa x; requires non-vertical.
    double y_at(double x) const { return (c - a * x) / b; }
    double eval(Vec2 p) const { return a * p.x + b * p.y - c; }
};

// Closed halfplane a*x + b*y <= c with (a,b) of unit Euclidean norm.
struct Halfplane {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    // Scales (a,b,c) to unit normal; zero normal is malformed input.
    static Halfplane normalized(double a, double b, double c);

    // Signed margin: negative strictly inside, positive strictly outside.
    double margin(Vec2 p) const { return a * p.x + b * p.y - c; }
    bool contains(Vec2 p, double tol = kContainTol) const { return margin(p) <= tol; }
    Line boundary() const { return Line{a, b, c}; }
};

struct BoundingBox {
    double xmin = 0.0;
    double xmax = 1.0;
    double ymin = 0.0;
    double ymax = 1.0;

    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    bool contains(Vec2 p) const { return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax; }
};

// Axis-aligned box enclosing every input point and every pairwise intersection
// of the given boundary lines, inflated by 10% per side. All arrangement
// vertices land strictly inside, so the decomposition sees no structure on the
// box boundary.
BoundingBox bounding_box(const std::vector<Vec2>& points, const std::vector<Line>& lines);

// Cell of a vertical decomposition: left/right walls at x = xl, x = xr and two
// non-vertical bounding lines with top(x) >= bottom(x) throughout [xl, xr].
struct Trapezoid {
    double xl = 0.0;
    double xr = 1.0;
    Line top;
    Line bottom;

    double y_top(double x) const { return top.y_at(x); }
    double y_bottom(double x) const { return bottom.y_at(x); }
    double height_at(double x) const { return y_top(x) - y_bottom(x); }
    Vec2 interior_point() const;
    double area() const;
    bool contains(Vec2 p, double tol = 0.0) const;
};

Trapezoid box_region(const BoundingBox& box);

// Vertical decomposition of the arrangement of `lines` clipped to `region`:
// cells partition the region, no input line crosses any cell's interior, and
// walls are erected only at line-line and line-region vertices, so the cell
// count is O(|lines|^2), not O(|lines|^3). Coincident duplicates are deduped
// and vertical lines become exact cell walls splitting every lane at their
// abscissa; both events are logged.
std::vector<Trapezoid> trapezoid_decomposition(const std::vector<Line>& lines, const Trapezoid& region);

enum class CellRelation {
    kCrosses,   // boundary line meets the open cell interior
    kContains,  // cell closure inside the closed halfplane, boundary misses the interior
    kDisjoint,  // cell interior outside; boundary misses the interior
};

CellRelation classify(const Halfplane& h, const Trapezoid& t);
bool line_crosses_interior(const Line& l, const Trapezoid& t);

// Indices of halfplanes whose boundary crosses the open interior of t.
// A boundary running along t's own top or bottom edge does not cross.
std::vector<int> conflict_list(const Trapezoid& t, const std::vector<Halfplane>& hs);

// Sum of weights of halfplanes fully containing t; crossing or disjoint
// halfplanes contribute nothing. Empty `weights` means unit weights.
double cell_depth(const Trapezoid& t, const std::vector<Halfplane>& hs, const std::vector<double>& weights = {});

// Number of edges on the boundary of the union of halfplanes, clipped to the
// box. The union's complement is an intersection of halfplanes, hence convex.
int union_boundary_edge_count(const std::vector<Halfplane>& hs, const BoundingBox& box);

// Debug rendering of a decomposition (cells, input lines, optional points).
std::string svg_decomposition(const std::vector<Trapezoid>& cells, const std::vector<Line>& lines,
                              const std::vector<Vec2>& points, const BoundingBox& box);

}  // namespace multicover
