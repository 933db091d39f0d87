#pragma once

#include <cstdint>
#include <vector>

#include "vertisite/grid.hpp"

namespace vertisite {

// Immutable navigation view of the constraint grid: blocked <=> C > 0.
class NavGrid {
public:
    explicit NavGrid(const ConstraintStack& constraints);
    NavGrid(const GridSpec& spec, std::vector<std::uint8_t> blocked);

    const GridSpec& spec() const { return spec_; }

    bool in_bounds(int col, int row) const {
        return col >= 0 && col < spec_.n_cols && row >= 0 && row < spec_.n_rows;
    }

    bool walkable(int col, int row) const {
        return in_bounds(col, row) && blocked_[static_cast<std::size_t>(row) * spec_.n_cols + col] == 0;
    }

    bool blocked_at(const Cell& c) const { return !walkable(c.col, c.row); }

private:
    GridSpec spec_;
    std::vector<std::uint8_t> blocked_;
};

enum class PathStatus { REACHED, UNREACHABLE, OUT_OF_RANGE };

struct PathResult {
    PathStatus status = PathStatus::UNREACHABLE;
    double length_m = 0.0;       // octile path length * cell_size when REACHED
    std::vector<Cell> path;      // full cell sequence, diagnostics only
};

// Optimal 8-connected shortest path under octile costs (orthogonal = cell_size,
// diagonal = sqrt(2)*cell_size). A diagonal move is forbidden when either
// adjacent orthogonal neighbor is blocked. Endpoints must be unblocked and in
// bounds, else ValidationError naming the offending endpoint.
PathResult jps_shortest_path(const NavGrid& grid, const Cell& start, const Cell& goal);

} // namespace vertisite
