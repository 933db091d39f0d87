#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vertisite/geometry.hpp"

namespace vertisite {

// The eight operational constraint categories, in canonical order.
inline constexpr std::array<const char*, 8> kConstraintCategories = {
    "Prohibited Area",
    "Restricted Area",
    "Danger Zone",
    "Military Operational Area",
    "Control Zone",
    "Aerodrome Traffic Zone",
    "Alert Area",
    "Terrain Obstacles",
};

std::optional<int> constraint_category_index(const std::string& name);

struct Cell {
    int col = 0; // x index
    int row = 0; // y index

    bool operator==(const Cell&) const = default;
};

// Discretization of the analysis plane. Cell (col,row) covers the half-open
// square [origin_x + col*cell, origin_x + (col+1)*cell) x [origin_y + row*cell, ...).
struct GridSpec {
    double origin_x = 0.0;
    double origin_y = 0.0;
    double cell_size = 100.0; // meters
    int n_cols = 0;
    int n_rows = 0;

    bool operator==(const GridSpec&) const = default;

    void validate() const; // throws ValidationError

    bool contains(const Point& p) const {
        return p.x >= origin_x && p.x < origin_x + cell_size * n_cols &&
               p.y >= origin_y && p.y < origin_y + cell_size * n_rows;
    }

    Cell cell_of(const Point& p) const {
        return Cell{static_cast<int>((p.x - origin_x) / cell_size),
                    static_cast<int>((p.y - origin_y) / cell_size)};
    }

    Point cell_center(const Cell& c) const {
        return Point{origin_x + (c.col + 0.5) * cell_size,
                     origin_y + (c.row + 0.5) * cell_size};
    }

    bool in_bounds(const Cell& c) const {
        return c.col >= 0 && c.col < n_cols && c.row >= 0 && c.row < n_rows;
    }

    std::size_t index(const Cell& c) const {
        return static_cast<std::size_t>(c.row) * n_cols + c.col;
    }

    std::size_t cell_count() const {
        return static_cast<std::size_t>(n_cols) * n_rows;
    }
};

struct BinaryLayer {
    GridSpec spec;
    std::vector<std::uint8_t> cells; // row-major, values in {0,1}

    explicit BinaryLayer(const GridSpec& s = {}) : spec(s), cells(s.cell_count(), 0) {}

    std::uint8_t at(const Cell& c) const { return cells[spec.index(c)]; }
    void set(const Cell& c, std::uint8_t v) { cells[spec.index(c)] = v; }

    bool operator==(const BinaryLayer&) const = default;
};

struct ConstraintStack {
    GridSpec spec;
    std::vector<BinaryLayer> layers; // one per category, canonical order
    std::vector<std::uint16_t> sum;  // per-cell sum over layers

    std::uint16_t at(const Cell& c) const { return sum[spec.index(c)]; }
};

// cells(c) = 1 iff F(c) = 1 and C(c) = 0
struct SelectedLayer {
    GridSpec spec;
    std::vector<std::uint8_t> cells;

    std::uint8_t at(const Cell& c) const { return cells[spec.index(c)]; }
};

struct DemRaster {
    GridSpec spec;
    std::vector<double> elevation; // row-major, row 0 = south
    double nodata = -9999.0;
};

BinaryLayer rasterize_points(const GridSpec& spec, const std::vector<Point>& points);
BinaryLayer rasterize_polygons(const GridSpec& spec, const PolygonSet& polys,
                               const std::string& category);
BinaryLayer rasterize_dem(const GridSpec& spec, const DemRaster& dem, double max_elevation_m);
ConstraintStack stack_constraints(std::vector<BinaryLayer> layers);
SelectedLayer select_candidates(const BinaryLayer& facilities, const ConstraintStack& constraints);

} // namespace vertisite
