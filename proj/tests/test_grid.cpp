#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "support/oracles.hpp"
#include "vertisite/errors.hpp"
#include "vertisite/geometry.hpp"
#include "vertisite/grid.hpp"
#include "vertisite/ingest.hpp"

using namespace vertisite;

namespace {

GridSpec make_spec(int cols, int rows, double cell = 100.0) {
    GridSpec s;
    s.cell_size = cell;
    s.n_cols = cols;
    s.n_rows = rows;
    return s;
}

Ring square(double x0, double y0, double x1, double y1) {
    return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

} // namespace

TEST_CASE("point_in_ring: convex, concave and boundary cases") {
    const Ring sq = square(0, 0, 10, 10);
    CHECK(point_in_ring({5, 5}, sq));
    CHECK_FALSE(point_in_ring({15, 5}, sq));
    CHECK_FALSE(point_in_ring({-1, -1}, sq));
    // Boundary counts as inside: edges and vertices.
    CHECK(point_in_ring({0, 5}, sq));
    CHECK(point_in_ring({10, 5}, sq));
    CHECK(point_in_ring({5, 0}, sq));
    CHECK(point_in_ring({0, 0}, sq));
    CHECK(point_in_ring({10, 10}, sq));

    // Concave "C" shape: the notch is outside.
    const Ring c = {{0, 0}, {10, 0}, {10, 3}, {3, 3}, {3, 7}, {10, 7}, {10, 10}, {0, 10}};
    CHECK(point_in_ring({1, 5}, c));
    CHECK(point_in_ring({5, 1}, c));
    CHECK_FALSE(point_in_ring({7, 5}, c));

    // Self-intersecting bowtie under even-odd: lobe interiors in, center crossing region out.
    const Ring bow = {{0, 0}, {10, 10}, {10, 0}, {0, 10}};
    CHECK(point_in_ring({8, 5}, bow));
    CHECK(point_in_ring({2, 5}, bow));
    CHECK_FALSE(point_in_ring({5, 8}, bow));

    CHECK_FALSE(point_in_ring({1, 1}, Ring{{0, 0}, {5, 5}}));
}

TEST_CASE("point_on_segment") {
    CHECK(point_on_segment({5, 5}, {0, 0}, {10, 10}));
    CHECK(point_on_segment({0, 0}, {0, 0}, {10, 10}));
    CHECK_FALSE(point_on_segment({5, 6}, {0, 0}, {10, 10}));
    CHECK_FALSE(point_on_segment({11, 11}, {0, 0}, {10, 10}));
    CHECK(point_on_segment({3, 0}, {0, 0}, {10, 0}));
}

TEST_CASE("GridSpec validation and addressing") {
    CHECK_THROWS_AS(make_spec(0, 5).validate(), ValidationError);
    CHECK_THROWS_AS(make_spec(5, 0).validate(), ValidationError);
    CHECK_THROWS_AS(make_spec(5, 5, 0.0).validate(), ValidationError);
    GridSpec bad = make_spec(5, 5);
    bad.origin_x = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    // Several problems reported together.
    try {
        make_spec(0, 0, -1.0).validate();
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.issues().size() == 3);
    }

    const GridSpec s = make_spec(10, 8);
    CHECK(s.contains({0, 0}));
    CHECK(s.contains({999.9, 799.9}));
    CHECK_FALSE(s.contains({1000, 400}));    // half-open on the high edges
    CHECK_FALSE(s.contains({-0.001, 400}));
    CHECK(s.cell_of({0, 0}) == Cell{0, 0});
    CHECK(s.cell_of({150, 250}) == Cell{1, 2});
    CHECK(s.cell_of({100, 100}) == Cell{1, 1}); // boundary goes to the upper cell
    const Point c = s.cell_center({3, 4});
    CHECK(c.x == doctest::Approx(350.0));
    CHECK(c.y == doctest::Approx(450.0));
    CHECK(s.index({3, 4}) == 43);
}

TEST_CASE("rasterize_points marks cells and rejects out-of-extent input") {
    const GridSpec s = make_spec(10, 10);
    const auto layer = rasterize_points(s, {{50, 50}, {950, 50}, {55, 45}});
    CHECK(layer.at({0, 0}) == 1);
    CHECK(layer.at({9, 0}) == 1);
    int ones = 0;
    for (auto v : layer.cells) ones += v;
    CHECK(ones == 2); // two points share cell (0,0)

    CHECK_THROWS_AS(rasterize_points(s, {{1000.0, 50.0}}), ValidationError);
    try {
        rasterize_points(s, {{-5.0, 50.0}});
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("-5") != std::string::npos);
    }
}

TEST_CASE("rasterize_polygons: center membership, closure, categories") {
    const GridSpec s = make_spec(10, 10);
    PolygonSet polys;
    polys.push_back({square(100, 100, 400, 300), "Danger Zone"});

    const auto layer = rasterize_polygons(s, polys, "Danger Zone");
    // Cell centers at (x+50, y+50): columns 1..3, rows 1..2 fall inside.
    int ones = 0;
    for (auto v : layer.cells) ones += v;
    CHECK(ones == 6);
    CHECK(layer.at({1, 1}) == 1);
    CHECK(layer.at({3, 2}) == 1);
    CHECK(layer.at({0, 1}) == 0);
    CHECK(layer.at({4, 1}) == 0);

    // Other categories see nothing.
    const auto other = rasterize_polygons(s, polys, "Alert Area");
    CHECK(std::count(other.cells.begin(), other.cells.end(), 1) == 0);

    // An explicitly closed ring gives the same raster.
    PolygonSet closed;
    Ring r = square(100, 100, 400, 300);
    r.push_back(r.front());
    closed.push_back({r, "Danger Zone"});
    CHECK(rasterize_polygons(s, closed, "Danger Zone") == layer);

    // Degenerate rings are rejected.
    PolygonSet degenerate;
    degenerate.push_back({Ring{{0, 0}, {100, 100}, {0, 0}, {100, 100}}, "Danger Zone"});
    CHECK_THROWS_AS(rasterize_polygons(s, degenerate, "Danger Zone"), ValidationError);
}

TEST_CASE("rasterize_dem: strict threshold and nodata handling") {
    const GridSpec s = make_spec(2, 2);
    DemRaster dem;
    dem.spec = s;
    dem.nodata = -9999.0;
    dem.elevation = {100.0, 300.0, 300.1, -9999.0};
    const auto layer = rasterize_dem(s, dem, 300.0);
    CHECK(layer.cells == std::vector<std::uint8_t>{0, 0, 1, 0}); // strictly above only

    DemRaster wrong = dem;
    wrong.spec = make_spec(3, 2);
    wrong.elevation.resize(6, 0.0);
    CHECK_THROWS_AS(rasterize_dem(s, wrong, 300.0), ValidationError);
    CHECK_THROWS_AS(rasterize_dem(s, dem, std::numeric_limits<double>::quiet_NaN()),
                    ValidationError);
}

TEST_CASE("stack_constraints: arity, spec agreement, sums, permutation invariance") {
    const GridSpec s = make_spec(4, 4);
    std::vector<BinaryLayer> layers(8, BinaryLayer(s));
    layers[0].set({1, 1}, 1);
    layers[3].set({1, 1}, 1);
    layers[7].set({2, 2}, 1);
    const auto stack = stack_constraints(layers);
    CHECK(stack.at({1, 1}) == 2);
    CHECK(stack.at({2, 2}) == 1);
    CHECK(stack.at({0, 0}) == 0);

    auto shuffled = layers;
    std::swap(shuffled[0], shuffled[7]);
    std::swap(shuffled[3], shuffled[5]);
    CHECK(stack_constraints(shuffled).sum == stack.sum);

    CHECK_THROWS_AS(stack_constraints(std::vector<BinaryLayer>(7, BinaryLayer(s))),
                    ValidationError);
    auto mismatched = layers;
    mismatched[2] = BinaryLayer(make_spec(5, 4));
    CHECK_THROWS_AS(stack_constraints(mismatched), ValidationError);
}

TEST_CASE("select_candidates equals the brute-force conjunction on random grids") {
    oracle::Rng rng(20240817);
    for (int trial = 0; trial < 150; ++trial) {
        const GridSpec s = make_spec(rng.uniform_int(1, 64), rng.uniform_int(1, 64));
        BinaryLayer fac(s);
        for (auto& v : fac.cells) v = rng.uniform(0.0, 1.0) < 0.3 ? 1 : 0;
        std::vector<BinaryLayer> layers(8, BinaryLayer(s));
        for (auto& l : layers)
            for (auto& v : l.cells) v = rng.uniform(0.0, 1.0) < 0.08 ? 1 : 0;
        const auto stack = stack_constraints(layers);
        const auto sel = select_candidates(fac, stack);
        for (std::size_t i = 0; i < sel.cells.size(); ++i) {
            int constrained = 0;
            for (const auto& l : layers) constrained += l.cells[i];
            const std::uint8_t want = (fac.cells[i] == 1 && constrained == 0) ? 1 : 0;
            REQUIRE(sel.cells[i] == want);
        }
    }

    const GridSpec s = make_spec(4, 4);
    CHECK_THROWS_AS(
        select_candidates(BinaryLayer(make_spec(5, 4)),
                          stack_constraints(std::vector<BinaryLayer>(8, BinaryLayer(s)))),
        ValidationError);
}

TEST_CASE("constraint category registry") {
    CHECK(kConstraintCategories.size() == 8);
    CHECK(constraint_category_index("Prohibited Area") == 0);
    CHECK(constraint_category_index("Terrain Obstacles") == 7);
    CHECK_FALSE(constraint_category_index("prohibited area").has_value());
    CHECK_FALSE(constraint_category_index("No Fly Zone").has_value());
}

TEST_CASE("ASCII grid reader flips north-first file rows to south-first storage") {
    const auto path = temp_file("vertisite_dem_test.asc",
                                "ncols 3\n"
                                "nrows 2\n"
                                "xllcorner 10\n"
                                "yllcorner 20\n"
                                "cellsize 50\n"
                                "NODATA_value -9999\n"
                                "1 2 3\n"
                                "4 5 6\n");
    const DemRaster dem = read_ascii_grid(path);
    CHECK(dem.spec.n_cols == 3);
    CHECK(dem.spec.n_rows == 2);
    CHECK(dem.spec.origin_x == 10.0);
    CHECK(dem.spec.origin_y == 20.0);
    CHECK(dem.spec.cell_size == 50.0);
    CHECK(dem.nodata == -9999.0);
    // First file row (1 2 3) is the northernmost, stored as row 1.
    CHECK(dem.elevation == std::vector<double>{4, 5, 6, 1, 2, 3});
    std::filesystem::remove(path);

    const auto truncated = temp_file("vertisite_dem_trunc.asc", "ncols 3\nnrows 2\n");
    CHECK_THROWS_AS(read_ascii_grid(truncated), ValidationError);
    std::filesystem::remove(truncated);

    const auto short_data = temp_file("vertisite_dem_short.asc",
                                      "ncols 3\nnrows 2\nxllcorner 0\nyllcorner 0\n"
                                      "cellsize 50\nNODATA_value -9999\n1 2 3\n");
    CHECK_THROWS_AS(read_ascii_grid(short_data), ValidationError);
    std::filesystem::remove(short_data);
}
