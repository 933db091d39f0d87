#include "vertisite/geometry.hpp"

namespace vertisite {

bool point_on_segment(const Point& p, const Point& a, const Point& b) {
    const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    if (cross != 0.0) return false;
    return p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) &&
           p.y >= std::min(a.y, b.y) && p.y <= std::max(a.y, b.y);
}

bool point_in_ring(const Point& p, const Ring& ring) {
    const std::size_t n = ring.size();
    if (n < 3) return false;
    // Edge tie-break: on-boundary counts as inside.
    for (std::size_t i = 0, j = n - 1; i < n; j = i++)
        if (point_on_segment(p, ring[j], ring[i])) return true;
    // Even-odd crossing count against a ray in +x.
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point& a = ring[j];
        const Point& b = ring[i];
        if ((b.y > p.y) != (a.y > p.y)) {
            const double x_cross = (a.x - b.x) * (p.y - b.y) / (a.y - b.y) + b.x;
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

} // namespace vertisite
