#pragma once

// Independent reference implementations used only by the tests. These are
// deliberately naive (Dijkstra over all cells, linear scans, brute-force set
// logic) so they share no code with the optimized library paths they check.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <random>
#include <vector>

#include "vertisite/grid.hpp"
#include "vertisite/jps.hpp"
#include "vertisite/records.hpp"

namespace oracle {

constexpr double kSqrt2 = 1.41421356237309514547462185873882845044;

// Plain Dijkstra over the 8-connected grid with octile costs. A diagonal step
// is allowed only when both adjacent orthogonal cells are walkable, matching
// the movement rule of the optimized search.
inline std::optional<double> dijkstra_octile_m(const vertisite::NavGrid& grid,
                                               const vertisite::Cell& start,
                                               const vertisite::Cell& goal) {
    const auto& spec = grid.spec();
    if (!grid.walkable(start.col, start.row) || !grid.walkable(goal.col, goal.row))
        return std::nullopt;
    const std::size_t n = spec.cell_count();
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    const std::size_t s = spec.index(start);
    const std::size_t t = spec.index(goal);
    dist[s] = 0.0;
    pq.push({0.0, s});
    while (!pq.empty()) {
        const auto [d, i] = pq.top();
        pq.pop();
        if (d > dist[i]) continue;
        if (i == t) break;
        const int x = static_cast<int>(i % spec.n_cols);
        const int y = static_cast<int>(i / spec.n_cols);
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy) {
                if (dx == 0 && dy == 0) continue;
                const int nx = x + dx, ny = y + dy;
                if (!grid.walkable(nx, ny)) continue;
                if (dx != 0 && dy != 0 &&
                    (!grid.walkable(x + dx, y) || !grid.walkable(x, y + dy)))
                    continue;
                const double step = (dx != 0 && dy != 0) ? kSqrt2 : 1.0;
                const std::size_t ni = static_cast<std::size_t>(ny) * spec.n_cols + nx;
                if (d + step < dist[ni]) {
                    dist[ni] = d + step;
                    pq.push({dist[ni], ni});
                }
            }
    }
    if (!std::isfinite(dist[t])) return std::nullopt;
    return dist[t] * spec.cell_size;
}

// Verifies that a reported path is a legal 8-connected walk (no corner
// cutting) and that its octile length matches the claimed total.
inline bool path_is_legal(const vertisite::NavGrid& grid,
                          const std::vector<vertisite::Cell>& path,
                          const vertisite::Cell& start, const vertisite::Cell& goal,
                          double claimed_m, double tol_m) {
    if (path.empty() || !(path.front() == start) || !(path.back() == goal)) return false;
    double total = 0.0;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (!grid.walkable(path[i].col, path[i].row)) return false;
        if (i == 0) continue;
        const int dx = path[i].col - path[i - 1].col;
        const int dy = path[i].row - path[i - 1].row;
        if (std::abs(dx) > 1 || std::abs(dy) > 1 || (dx == 0 && dy == 0)) return false;
        if (dx != 0 && dy != 0) {
            if (!grid.walkable(path[i - 1].col + dx, path[i - 1].row) ||
                !grid.walkable(path[i - 1].col, path[i - 1].row + dy))
                return false;
            total += kSqrt2;
        } else {
            total += 1.0;
        }
    }
    return std::abs(total * grid.spec().cell_size - claimed_m) <= tol_m;
}

// Deterministic RNG wrapper: draws map engine output straight to [0,1) so
// results do not depend on libstdc++ distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    int uniform_int(int lo, int hi) { // inclusive bounds
        return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 engine_;
};

struct RandomGrid {
    vertisite::GridSpec spec;
    std::vector<std::uint8_t> blocked;
};

inline RandomGrid random_grid(Rng& rng, int min_side, int max_side, double min_block,
                              double max_block) {
    RandomGrid g;
    g.spec.origin_x = 0.0;
    g.spec.origin_y = 0.0;
    g.spec.cell_size = 100.0;
    g.spec.n_cols = rng.uniform_int(min_side, max_side);
    g.spec.n_rows = rng.uniform_int(min_side, max_side);
    const double frac = rng.uniform(min_block, max_block);
    g.blocked.assign(g.spec.cell_count(), 0);
    for (auto& b : g.blocked) b = rng.uniform(0.0, 1.0) < frac ? 1 : 0;
    return g;
}

// Picks a walkable cell uniformly at random; nullopt when the grid is full.
inline std::optional<vertisite::Cell> random_walkable(Rng& rng, const RandomGrid& g) {
    std::vector<vertisite::Cell> open;
    for (int row = 0; row < g.spec.n_rows; ++row)
        for (int col = 0; col < g.spec.n_cols; ++col)
            if (!g.blocked[g.spec.index({col, row})]) open.push_back({col, row});
    if (open.empty()) return std::nullopt;
    return open[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(open.size()) - 1))];
}

// Linear-scan closed-ball query, the reference for the bucket index.
inline std::vector<vertisite::AltNode> linear_radius_query(
    const std::vector<vertisite::AltNode>& nodes, const vertisite::Point& center,
    double radius_m) {
    std::vector<vertisite::AltNode> out;
    for (const auto& n : nodes)
        if (vertisite::distance(n.position, center) <= radius_m) out.push_back(n);
    std::sort(out.begin(), out.end(),
              [](const vertisite::AltNode& a, const vertisite::AltNode& b) { return a.id < b.id; });
    return out;
}

} // namespace oracle
