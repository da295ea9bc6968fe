#include "multicover/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "multicover/notes.hpp"

namespace multicover {

namespace {

// Lines steeper than this (|b| below the threshold) get an infinitesimal
// rotation before the sweep so that y(x) stays evaluable.
constexpr double kVertTol = 1e-9;

bool coincident(const Line& p, const Line& q) {
    double s = (p.a * q.a + p.b * q.b) >= 0 ? 1.0 : -1.0;
    return std::abs(p.a - s * q.a) <= 1e-9 && std::abs(p.b - s * q.b) <= 1e-9 && std::abs(p.c - s * q.c) <= 1e-9;
}

// Intersection of two non-parallel lines.
bool intersect(const Line& p, const Line& q, Vec2* out) {
    double det = p.a * q.b - q.a * p.b;
    if (std::abs(det) <= kNormTol) return false;
    out->x = (p.c * q.b - q.c * p.b) / det;
    out->y = (p.a * q.c - q.a * p.c) / det;
    return true;
}

}  // namespace

Halfplane Halfplane::normalized(double a, double b, double c) {
    double n = std::hypot(a, b);
    if (!(n > kNormTol) || !std::isfinite(n) || !std::isfinite(c))
        throw InputError("halfplane has a degenerate normal");
    // Idempotent at the ulp level: reloading serialized coefficients must not
    // drift them, or round-trips and coincidence tests break.
    if (std::abs(n - 1.0) <= kNormTol) return Halfplane{a, b, c};
    return Halfplane{a / n, b / n, c / n};
}

BoundingBox bounding_box(const std::vector<Vec2>& points, const std::vector<Line>& lines) {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
    bool any = false;
    auto grow = [&](Vec2 p) {
        if (!any) {
            xmin = xmax = p.x;
            ymin = ymax = p.y;
            any = true;
        } else {
            xmin = std::min(xmin, p.x);
            xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
        }
    };
    for (const auto& p : points) grow(p);
    Vec2 q;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j)
            if (intersect(lines[i], lines[j], &q)) grow(q);
    if (!any) return BoundingBox{-1.0, 1.0, -1.0, 1.0};

    double padx = 0.1 * (xmax - xmin);
    double pady = 0.1 * (ymax - ymin);
    if (padx <= kNormTol) padx = 1.0;
    if (pady <= kNormTol) pady = 1.0;
    return BoundingBox{xmin - padx, xmax + padx, ymin - pady, ymax + pady};
}

Vec2 Trapezoid::interior_point() const {
    double xm = 0.5 * (xl + xr);
    return Vec2{xm, 0.5 * (y_top(xm) + y_bottom(xm))};
}

double Trapezoid::area() const {
    // Height is linear in x, so the exact integral is width times mean height.
    double hl = height_at(xl);
    double hr = height_at(xr);
    return 0.5 * (hl + hr) * (xr - xl);
}

bool Trapezoid::contains(Vec2 p, double tol) const {
    if (p.x < xl - tol || p.x > xr + tol) return false;
    return p.y >= y_bottom(p.x) - tol && p.y <= y_top(p.x) + tol;
}

Trapezoid box_region(const BoundingBox& box) {
    Trapezoid t;
    t.xl = box.xmin;
    t.xr = box.xmax;
    t.top = Line{0.0, 1.0, box.ymax};
    t.bottom = Line{0.0, 1.0, box.ymin};
    return t;
}

std::vector<Trapezoid> trapezoid_decomposition(const std::vector<Line>& lines, const Trapezoid& region) {
    if (!(region.xl < region.xr)) throw InputError("decomposition region has empty x-extent");

    // Working set: region boundaries first, then surviving input lines.
    // Vertical lines cannot bound a lane; each becomes an exact wall
    // abscissa where every lane is forced to split, so the line ends up
    // running along cell walls instead of being rotated away.
    const double span = region.xr - region.xl;
    const double cluster = 1e-12 * span;
    std::vector<Line> work;
    std::vector<double> walls;
    work.push_back(region.top);
    work.push_back(region.bottom);
    for (const Line& raw : lines) {
        Line l = raw;
        double n = std::hypot(l.a, l.b);
        if (!(n > kNormTol)) throw InputError("decomposition line has a degenerate normal");
        // Keep already-unit lines bit-exact: cells bounded by an input line
        // must reuse its coefficients so coincidence tests see equality.
        if (std::abs(n - 1.0) > kNormTol) l = Line{l.a / n, l.b / n, l.c / n};
        if (l.vertical(kVertTol)) {
            double x = l.c / l.a;  // |a| == 1 after normalization
            if (x > region.xl + cluster && x < region.xr - cluster) {
                walls.push_back(x);
                notes::emit("vertical-wall", "vertical decomposition line becomes an exact wall");
            }
            continue;
        }
        bool dup = false;
        for (const Line& w : work)
            if (coincident(w, l)) {
                dup = true;
                break;
            }
        if (dup) {
            notes::emit("dedup-line", "dropped coincident decomposition line");
            continue;
        }
        work.push_back(l);
    }
    std::sort(walls.begin(), walls.end());
    walls.erase(std::unique(walls.begin(), walls.end(),
                            [&](double a, double b) { return b - a <= cluster; }),
                walls.end());
    const Line& top = work[0];
    const Line& bot = work[1];

    // Event abscissas: region walls plus every pairwise vertex inside the region.
    std::vector<double> events;
    events.push_back(region.xl);
    events.push_back(region.xr);
    for (double w : walls) events.push_back(w);
    Vec2 q;
    for (std::size_t i = 0; i < work.size(); ++i)
        for (std::size_t j = i + 1; j < work.size(); ++j) {
            if (!intersect(work[i], work[j], &q)) continue;
            if (q.x <= region.xl + cluster || q.x >= region.xr - cluster) continue;
            if (q.y < bot.y_at(q.x) - 1e-9 || q.y > top.y_at(q.x) + 1e-9) continue;
            events.push_back(q.x);
        }
    std::sort(events.begin(), events.end());
    std::vector<double> xs;
    for (double x : events)
        if (xs.empty() || x - xs.back() > cluster) xs.push_back(x);
    if (xs.size() < 2) xs = {region.xl, region.xr};
    xs.front() = region.xl;
    xs.back() = region.xr;
    // Snap slab boundaries onto any wall they absorbed during clustering so
    // the wall's own line compares equal to the cell edge it produced.
    for (double& x : xs) {
        auto it = std::lower_bound(walls.begin(), walls.end(), x - cluster);
        if (it != walls.end() && std::abs(*it - x) <= cluster) x = *it;
    }

    // Lane sweep. A lane is the space between vertically adjacent lines; a lane
    // keyed by the same (top,bottom) pair in consecutive slabs is the same cell
    // because any vertex incident to either line changes some adjacent pair.
    std::vector<Trapezoid> cells;
    std::map<std::pair<int, int>, double> open;  // (top index, bottom index) -> start x
    for (std::size_t s = 0; s + 1 < xs.size(); ++s) {
        if (std::binary_search(walls.begin(), walls.end(), xs[s])) {
            // A wall splits every lane, even where no line pair crosses.
            for (const auto& [key, start] : open)
                cells.push_back(Trapezoid{start, xs[s], work[key.first], work[key.second]});
            open.clear();
        }
        double xm = 0.5 * (xs[s] + xs[s + 1]);
        double ytop = top.y_at(xm);
        double ybot = bot.y_at(xm);
        std::vector<std::pair<double, int>> present;  // (y at midpoint, line index)
        present.emplace_back(ybot, 1);
        present.emplace_back(ytop, 0);
        for (std::size_t i = 2; i < work.size(); ++i) {
            double y = work[i].y_at(xm);
            if (y > ybot && y < ytop) present.emplace_back(y, static_cast<int>(i));
        }
        std::sort(present.begin(), present.end());

        std::map<std::pair<int, int>, double> next;
        for (std::size_t i = 0; i + 1 < present.size(); ++i) {
            std::pair<int, int> key{present[i + 1].second, present[i].second};
            auto it = open.find(key);
            next[key] = it == open.end() ? xs[s] : it->second;
        }
        for (const auto& [key, start] : open) {
            if (next.count(key)) continue;
            cells.push_back(Trapezoid{start, xs[s], work[key.first], work[key.second]});
        }
        open = std::move(next);
    }
    for (const auto& [key, start] : open)
        cells.push_back(Trapezoid{start, region.xr, work[key.first], work[key.second]});
    return cells;
}

bool line_crosses_interior(const Line& l, const Trapezoid& t) {
    const double span = t.xr - t.xl;
    if (l.vertical(kVertTol)) {
        double x = l.c / l.a;  // |a| == 1 for a normalized vertical line
        if (x <= t.xl + 1e-12 * span || x >= t.xr - 1e-12 * span) return false;
        return t.height_at(x) > 0.0;
    }
    // Strictly-inside interval: x where top(x) > l(x) > bottom(x).
    double lo = t.xl;
    double hi = t.xr;
    auto restrict_positive = [&](double gl, double gr) {
        // g linear on [xl, xr] with endpoint values gl, gr; keep {g > 0}.
        if (gl <= 0.0 && gr <= 0.0) {
            lo = 1.0;
            hi = 0.0;
            return;
        }
        if (gl >= 0.0 && gr >= 0.0) return;
        double root = t.xl + span * (gl / (gl - gr));
        if (gl < gr)
            lo = std::max(lo, root);
        else
            hi = std::min(hi, root);
    };
    restrict_positive(t.y_top(t.xl) - l.y_at(t.xl), t.y_top(t.xr) - l.y_at(t.xr));
    restrict_positive(l.y_at(t.xl) - t.y_bottom(t.xl), l.y_at(t.xr) - t.y_bottom(t.xr));
    if (hi - lo <= 1e-12 * span) return false;
    double xm = 0.5 * (lo + hi);
    return l.y_at(xm) < t.y_top(xm) && l.y_at(xm) > t.y_bottom(xm);
}

CellRelation classify(const Halfplane& h, const Trapezoid& t) {
    if (line_crosses_interior(h.boundary(), t)) return CellRelation::kCrosses;
    return h.margin(t.interior_point()) <= 0.0 ? CellRelation::kContains : CellRelation::kDisjoint;
}

std::vector<int> conflict_list(const Trapezoid& t, const std::vector<Halfplane>& hs) {
    std::vector<int> out;
    for (std::size_t i = 0; i < hs.size(); ++i)
        if (line_crosses_interior(hs[i].boundary(), t)) out.push_back(static_cast<int>(i));
    return out;
}

double cell_depth(const Trapezoid& t, const std::vector<Halfplane>& hs, const std::vector<double>& weights) {
    double s = 0.0;
    for (std::size_t i = 0; i < hs.size(); ++i)
        if (classify(hs[i], t) == CellRelation::kContains) s += weights.empty() ? 1.0 : weights[i];
    return s;
}

int union_boundary_edge_count(const std::vector<Halfplane>& hs, const BoundingBox& box) {
    // The complement of the union is the intersection of the complements; clip
    // it out of the box and count polygon edges lying on input boundaries.
    std::vector<Vec2> poly{{box.xmin, box.ymin}, {box.xmax, box.ymin}, {box.xmax, box.ymax}, {box.xmin, box.ymax}};
    for (const Halfplane& h : hs) {
        std::vector<Vec2> next;
        auto keep = [&](Vec2 p) { return h.margin(p) >= 0.0; };  // outside the halfplane
        for (std::size_t i = 0; i < poly.size(); ++i) {
            Vec2 cur = poly[i];
            Vec2 nxt = poly[(i + 1) % poly.size()];
            double mc = h.margin(cur);
            double mn = h.margin(nxt);
            if (keep(cur)) next.push_back(cur);
            if ((mc < 0.0) != (mn < 0.0)) {
                double f = mc / (mc - mn);
                next.push_back(Vec2{cur.x + f * (nxt.x - cur.x), cur.y + f * (nxt.y - cur.y)});
            }
        }
        poly = std::move(next);
        if (poly.empty()) break;
    }
    if (poly.size() < 3) return 0;
    int edges = 0;
    double scale = std::max({1.0, std::abs(box.xmax), std::abs(box.xmin), std::abs(box.ymax), std::abs(box.ymin)});
    for (std::size_t i = 0; i < poly.size(); ++i) {
        Vec2 a = poly[i];
        Vec2 b = poly[(i + 1) % poly.size()];
        Vec2 mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
        if (std::hypot(b.x - a.x, b.y - a.y) <= 1e-9 * scale) continue;
        for (const Halfplane& h : hs)
            if (std::abs(h.margin(mid)) <= 1e-7 * scale && std::abs(h.margin(a)) <= 1e-6 * scale) {
                ++edges;
                break;
            }
    }
    return edges;
}

std::string svg_decomposition(const std::vector<Trapezoid>& cells, const std::vector<Line>& lines,
                              const std::vector<Vec2>& points, const BoundingBox& box) {
    const double w = 800.0;
    const double h = w * box.height() / std::max(box.width(), 1e-12);
    auto sx = [&](double x) { return (x - box.xmin) / box.width() * w; };
    auto sy = [&](double y) { return h - (y - box.ymin) / box.height() * h; };
    char buf[256];
    std::ostringstream out;
    std::snprintf(buf, sizeof buf, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\">\n", w, h);
    out << buf;
    for (const Trapezoid& t : cells) {
        std::snprintf(buf, sizeof buf,
                      "<polygon points=\"%.2f,%.2f %.2f,%.2f %.2f,%.2f %.2f,%.2f\" "
                      "fill=\"#9ecae1\" fill-opacity=\"0.25\" stroke=\"#3182bd\" stroke-width=\"0.6\"/>\n",
                      sx(t.xl), sy(t.y_bottom(t.xl)), sx(t.xr), sy(t.y_bottom(t.xr)), sx(t.xr), sy(t.y_top(t.xr)),
                      sx(t.xl), sy(t.y_top(t.xl)));
        out << buf;
    }
    for (const Line& l : lines) {
        if (l.vertical(kVertTol)) {
            double x = l.c / l.a;
            std::snprintf(buf, sizeof buf, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#de2d26\" stroke-width=\"1\"/>\n",
                          sx(x), sy(box.ymin), sx(x), sy(box.ymax));
        } else {
            std::snprintf(buf, sizeof buf, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#de2d26\" stroke-width=\"1\"/>\n",
                          sx(box.xmin), sy(l.y_at(box.xmin)), sx(box.xmax), sy(l.y_at(box.xmax)));
        }
        out << buf;
    }
    for (const Vec2& p : points) {
        std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.5\" fill=\"#31a354\"/>\n", sx(p.x), sy(p.y));
        out << buf;
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace multicover
