#include "vertisite/jps.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <optional>
#include <queue>
#include <unordered_map>

#include "vertisite/errors.hpp"

namespace vertisite {

namespace {

constexpr double kSqrt2 = 1.41421356237309514547462185873882845044;

double octile(int ax, int ay, int bx, int by) {
    const int dx = std::abs(ax - bx);
    const int dy = std::abs(ay - by);
    return kSqrt2 * std::min(dx, dy) + std::abs(dx - dy);
}

struct Node {
    double f;
    double g;
    std::size_t idx;
    bool operator>(const Node& o) const { return f > o.f; }
};

} // namespace

NavGrid::NavGrid(const ConstraintStack& constraints) : spec_(constraints.spec) {
    blocked_.resize(spec_.cell_count());
    for (std::size_t i = 0; i < blocked_.size(); ++i)
        blocked_[i] = constraints.sum[i] > 0 ? 1 : 0;
}

NavGrid::NavGrid(const GridSpec& spec, std::vector<std::uint8_t> blocked)
    : spec_(spec), blocked_(std::move(blocked)) {
    if (blocked_.size() != spec_.cell_count())
        throw ValidationError("NavGrid blocked array size does not match grid spec");
}

namespace {

// Scans from (x,y) in direction (dx,dy) until a jump point, the goal, or an
// obstacle. Diagonal steps require both adjacent orthogonal cells free.
class JpsSearch {
public:
    JpsSearch(const NavGrid& g, Cell goal) : grid_(g), goal_(goal) {}

    std::optional<Cell> jump(int x, int y, int dx, int dy) const {
        while (true) {
            const int nx = x + dx, ny = y + dy;
            if (dx != 0 && dy != 0) {
                if (!grid_.walkable(x + dx, y) || !grid_.walkable(x, y + dy) ||
                    !grid_.walkable(nx, ny))
                    return std::nullopt;
            } else {
                if (!grid_.walkable(nx, ny)) return std::nullopt;
            }
            x = nx;
            y = ny;
            if (x == goal_.col && y == goal_.row) return Cell{x, y};
            if (dx != 0 && dy != 0) {
                if (jump(x, y, dx, 0) || jump(x, y, 0, dy)) return Cell{x, y};
            } else if (dx != 0) {
                if ((grid_.walkable(x, y + 1) && !grid_.walkable(x - dx, y + 1)) ||
                    (grid_.walkable(x, y - 1) && !grid_.walkable(x - dx, y - 1)))
                    return Cell{x, y};
            } else {
                if ((grid_.walkable(x + 1, y) && !grid_.walkable(x + 1, y - dy)) ||
                    (grid_.walkable(x - 1, y) && !grid_.walkable(x - 1, y - dy)))
                    return Cell{x, y};
            }
        }
    }

    // Directions to probe from (x,y), pruned by the incoming direction.
    void directions(int x, int y, int dx, int dy, std::vector<std::pair<int, int>>& out) const {
        out.clear();
        if (dx == 0 && dy == 0) {
            // Start node: every direction is a candidate; jump() enforces walkability.
            for (int ax = -1; ax <= 1; ++ax)
                for (int ay = -1; ay <= 1; ++ay)
                    if (ax != 0 || ay != 0) out.emplace_back(ax, ay);
            return;
        }
        if (dx != 0 && dy != 0) {
            out.emplace_back(dx, 0);
            out.emplace_back(0, dy);
            out.emplace_back(dx, dy);
        } else if (dx != 0) {
            const bool next = grid_.walkable(x + dx, y);
            const bool up = grid_.walkable(x, y + 1);
            const bool down = grid_.walkable(x, y - 1);
            if (next) {
                out.emplace_back(dx, 0);
                if (up) out.emplace_back(dx, 1);
                if (down) out.emplace_back(dx, -1);
            }
            if (up) out.emplace_back(0, 1);
            if (down) out.emplace_back(0, -1);
        } else {
            const bool next = grid_.walkable(x, y + dy);
            const bool right = grid_.walkable(x + 1, y);
            const bool left = grid_.walkable(x - 1, y);
            if (next) {
                out.emplace_back(0, dy);
                if (right) out.emplace_back(1, dy);
                if (left) out.emplace_back(-1, dy);
            }
            if (right) out.emplace_back(1, 0);
            if (left) out.emplace_back(-1, 0);
        }
    }

private:
    const NavGrid& grid_;
    Cell goal_;
};

void expand_segment(std::vector<Cell>& path, const Cell& from, const Cell& to) {
    int x = from.col, y = from.row;
    const int dx = (to.col > x) - (to.col < x);
    const int dy = (to.row > y) - (to.row < y);
    while (x != to.col || y != to.row) {
        x += dx;
        y += dy;
        path.push_back(Cell{x, y});
    }
}

} // namespace

PathResult jps_shortest_path(const NavGrid& grid, const Cell& start, const Cell& goal) {
    const auto check = [&](const Cell& c, const char* which) {
        if (!grid.in_bounds(c.col, c.row))
            throw ValidationError(fmt::format("{} cell ({}, {}) is outside the grid",
                                              which, c.col, c.row));
        if (grid.blocked_at(c))
            throw ValidationError(fmt::format("{} cell ({}, {}) is blocked", which,
                                              c.col, c.row));
    };
    check(start, "start");
    check(goal, "goal");

    PathResult result;
    if (start == goal) {
        result.status = PathStatus::REACHED;
        result.length_m = 0.0;
        result.path = {start};
        return result;
    }

    const GridSpec& spec = grid.spec();
    const std::size_t n = spec.cell_count();
    std::vector<double> g(n, std::numeric_limits<double>::infinity());
    std::vector<std::uint32_t> parent(n, std::numeric_limits<std::uint32_t>::max());
    std::vector<std::uint8_t> closed(n, 0);

    JpsSearch search(grid, goal);
    std::priority_queue<Node, std::vector<Node>, std::greater<Node>> open;

    const std::size_t start_idx = spec.index(start);
    const std::size_t goal_idx = spec.index(goal);
    g[start_idx] = 0.0;
    open.push({octile(start.col, start.row, goal.col, goal.row), 0.0, start_idx});

    std::vector<std::pair<int, int>> dirs;
    while (!open.empty()) {
        const Node top = open.top();
        open.pop();
        if (closed[top.idx]) continue;
        closed[top.idx] = 1;
        if (top.idx == goal_idx) break;

        const int x = static_cast<int>(top.idx % spec.n_cols);
        const int y = static_cast<int>(top.idx / spec.n_cols);
        int pdx = 0, pdy = 0;
        if (parent[top.idx] != std::numeric_limits<std::uint32_t>::max()) {
            const int px = static_cast<int>(parent[top.idx] % spec.n_cols);
            const int py = static_cast<int>(parent[top.idx] / spec.n_cols);
            pdx = (x > px) - (x < px);
            pdy = (y > py) - (y < py);
        }
        search.directions(x, y, pdx, pdy, dirs);
        for (const auto& [dx, dy] : dirs) {
            const auto jp = search.jump(x, y, dx, dy);
            if (!jp) continue;
            const std::size_t ji = spec.index(*jp);
            if (closed[ji]) continue;
            const double ng = top.g + octile(x, y, jp->col, jp->row);
            if (ng < g[ji]) {
                g[ji] = ng;
                parent[ji] = static_cast<std::uint32_t>(top.idx);
                open.push({ng + octile(jp->col, jp->row, goal.col, goal.row), ng, ji});
            }
        }
    }

    if (!std::isfinite(g[goal_idx])) {
        result.status = PathStatus::UNREACHABLE;
        return result;
    }

    result.status = PathStatus::REACHED;
    result.length_m = g[goal_idx] * spec.cell_size;

    // Reconstruct jump points, then expand each straight/diagonal segment.
    std::vector<Cell> jumps;
    for (std::size_t i = goal_idx;; i = parent[i]) {
        jumps.push_back(Cell{static_cast<int>(i % spec.n_cols), static_cast<int>(i / spec.n_cols)});
        if (i == start_idx) break;
    }
    std::reverse(jumps.begin(), jumps.end());
    result.path.push_back(jumps.front());
    for (std::size_t i = 1; i < jumps.size(); ++i)
        expand_segment(result.path, jumps[i - 1], jumps[i]);
    return result;
}

} // namespace vertisite
