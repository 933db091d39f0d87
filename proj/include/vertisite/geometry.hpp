#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace vertisite {

// Planar coordinates in meters. Inputs must be pre-projected; no geodetic math here.
struct Point {
    double x = 0.0;
    double y = 0.0;

    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

// A simple closed ring. The closing edge last->first is implicit; a duplicated
// final vertex is tolerated on input and dropped.
using Ring = std::vector<Point>;

struct TaggedPolygon {
    Ring ring;
    std::string category;
};

using PolygonSet = std::vector<TaggedPolygon>;

// Even-odd containment test. Points exactly on an edge count as inside.
bool point_in_ring(const Point& p, const Ring& ring);

bool point_on_segment(const Point& p, const Point& a, const Point& b);

} // namespace vertisite
