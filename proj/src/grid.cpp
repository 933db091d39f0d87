#include "vertisite/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "vertisite/errors.hpp"

namespace vertisite {

std::optional<int> constraint_category_index(const std::string& name) {
    for (std::size_t i = 0; i < kConstraintCategories.size(); ++i)
        if (name == kConstraintCategories[i]) return static_cast<int>(i);
    return std::nullopt;
}

void GridSpec::validate() const {
    std::vector<std::string> issues;
    if (!(cell_size > 0.0)) issues.push_back(fmt::format("grid cell_size must be > 0, got {}", cell_size));
    if (n_cols < 1) issues.push_back(fmt::format("grid n_cols must be >= 1, got {}", n_cols));
    if (n_rows < 1) issues.push_back(fmt::format("grid n_rows must be >= 1, got {}", n_rows));
    if (!std::isfinite(origin_x) || !std::isfinite(origin_y))
        issues.push_back("grid origin must be finite");
    if (!issues.empty()) throw ValidationError(std::move(issues));
}

BinaryLayer rasterize_points(const GridSpec& spec, const std::vector<Point>& points) {
    spec.validate();
    BinaryLayer layer(spec);
    for (const Point& p : points) {
        if (!spec.contains(p))
            throw ValidationError(
                fmt::format("point ({}, {}) is outside the grid extent", p.x, p.y));
        layer.set(spec.cell_of(p), 1);
    }
    return layer;
}

BinaryLayer rasterize_polygons(const GridSpec& spec, const PolygonSet& polys,
                               const std::string& category) {
    spec.validate();
    BinaryLayer layer(spec);
    for (const TaggedPolygon& poly : polys) {
        if (poly.category != category) continue;
        Ring ring = poly.ring;
        if (ring.size() >= 2 && ring.front().x == ring.back().x && ring.front().y == ring.back().y)
            ring.pop_back(); // explicit closure
        // Reject degenerate rings (< 3 distinct vertices).
        Ring distinct;
        for (const Point& p : ring)
            if (std::find_if(distinct.begin(), distinct.end(), [&](const Point& q) {
                    return q.x == p.x && q.y == p.y;
                }) == distinct.end())
                distinct.push_back(p);
        if (distinct.size() < 3)
            throw ValidationError(fmt::format(
                "degenerate polygon in category '{}': fewer than 3 distinct vertices", category));

        // Cell membership by center containment, restricted to the ring's bbox.
        double min_x = ring[0].x, max_x = ring[0].x, min_y = ring[0].y, max_y = ring[0].y;
        for (const Point& p : ring) {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
        const int c0 = std::max(0, static_cast<int>(std::floor((min_x - spec.origin_x) / spec.cell_size)) - 1);
        const int c1 = std::min(spec.n_cols - 1, static_cast<int>(std::ceil((max_x - spec.origin_x) / spec.cell_size)) + 1);
        const int r0 = std::max(0, static_cast<int>(std::floor((min_y - spec.origin_y) / spec.cell_size)) - 1);
        const int r1 = std::min(spec.n_rows - 1, static_cast<int>(std::ceil((max_y - spec.origin_y) / spec.cell_size)) + 1);
        for (int row = r0; row <= r1; ++row)
            for (int col = c0; col <= c1; ++col) {
                const Cell c{col, row};
                if (layer.at(c)) continue;
                if (point_in_ring(spec.cell_center(c), ring)) layer.set(c, 1);
            }
    }
    return layer;
}

BinaryLayer rasterize_dem(const GridSpec& spec, const DemRaster& dem, double max_elevation_m) {
    spec.validate();
    if (!std::isfinite(max_elevation_m))
        throw ValidationError("DEM elevation threshold must be finite");
    if (dem.spec.n_cols != spec.n_cols || dem.spec.n_rows != spec.n_rows)
        throw ValidationError(fmt::format(
            "DEM shape {}x{} does not match grid shape {}x{}", dem.spec.n_cols,
            dem.spec.n_rows, spec.n_cols, spec.n_rows));
    BinaryLayer layer(spec);
    for (std::size_t i = 0; i < dem.elevation.size(); ++i) {
        const double e = dem.elevation[i];
        if (e == dem.nodata) continue;
        if (e > max_elevation_m) layer.cells[i] = 1;
    }
    return layer;
}

ConstraintStack stack_constraints(std::vector<BinaryLayer> layers) {
    if (layers.size() != kConstraintCategories.size())
        throw ValidationError(fmt::format("expected {} constraint layers, got {}",
                                          kConstraintCategories.size(), layers.size()));
    const GridSpec spec = layers.front().spec;
    for (const BinaryLayer& l : layers)
        if (!(l.spec == spec))
            throw ValidationError("constraint layers do not share one grid spec");
    ConstraintStack stack;
    stack.spec = spec;
    stack.sum.assign(spec.cell_count(), 0);
    for (const BinaryLayer& l : layers)
        for (std::size_t i = 0; i < l.cells.size(); ++i) stack.sum[i] += l.cells[i];
    stack.layers = std::move(layers);
    return stack;
}

SelectedLayer select_candidates(const BinaryLayer& facilities, const ConstraintStack& constraints) {
    if (!(facilities.spec == constraints.spec))
        throw ValidationError("facility layer and constraint stack grid specs differ");
    SelectedLayer out;
    out.spec = facilities.spec;
    out.cells.assign(facilities.cells.size(), 0);
    for (std::size_t i = 0; i < facilities.cells.size(); ++i)
        out.cells[i] = (facilities.cells[i] == 1 && constraints.sum[i] == 0) ? 1 : 0;
    return out;
}

} // namespace vertisite
