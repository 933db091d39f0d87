#include "vertisite/coverage.hpp"

#include <cmath>

#include "vertisite/errors.hpp"

namespace vertisite {

namespace {

constexpr double kSqrt2 = 1.41421356237309514547462185873882845044;

double octile_lower_bound_m(const GridSpec& spec, const Cell& a, const Cell& b) {
    const int dx = std::abs(a.col - b.col);
    const int dy = std::abs(a.row - b.row);
    return (kSqrt2 * std::min(dx, dy) + std::abs(dx - dy)) * spec.cell_size;
}

} // namespace

CoverageSet compute_coverage(const NavGrid& grid, const CandidateSet& candidates,
                             const std::vector<Destination>& destinations, double range_km) {
    if (!(range_km > 0.0)) throw ValidationError("range_km must be > 0");
    const double budget_m = range_km * 1000.0;
    const GridSpec& spec = grid.spec();

    CoverageSet coverage;
    for (const Candidate& cand : candidates) {
        const Cell from = spec.cell_of(cand.position);
        auto& reached = coverage.reach[cand.id];
        for (const Destination& dest : destinations) {
            const Cell to = spec.cell_of(dest.position);
            if (octile_lower_bound_m(spec, from, to) > budget_m) continue;
            const PathResult res = jps_shortest_path(grid, from, to);
            if (res.status == PathStatus::REACHED && res.length_m <= budget_m)
                reached[dest.id] = res.length_m;
        }
    }
    return coverage;
}

} // namespace vertisite
