#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fmt/format.h>
#include <fstream>
#include <random>
#include <vector>

#include <json.hpp>

#include "vertisite/errors.hpp"
#include "vertisite/grid.hpp"
#include "vertisite/pipeline.hpp"

namespace vertisite {

using nlohmann::json;

namespace {

// Engine output mapped to [0,1) directly so generated scenarios are
// reproducible independent of the standard library's distribution details.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    int uniform_int(int lo, int hi) { // inclusive
        return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 engine_;
};

struct Rect {
    double x0, y0, x1, y1;

    bool contains(const Point& p) const {
        return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
    }
};

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PipelineError(fmt::format("cannot write '{}'", path.string()));
    out << content;
}

} // namespace

void generate_synthetic_scenario(const SyntheticOptions& opts,
                                 const std::filesystem::path& outdir) {
    std::error_code ec;
    std::filesystem::create_directories(outdir, ec);
    if (ec) throw PipelineError(fmt::format("cannot create '{}': {}", outdir.string(), ec.message()));

    Rng rng(opts.seed * 0x9e3779b97f4a7c15ull + 1);
    const double extent_x = opts.n_cols * opts.cell_m;
    const double extent_y = opts.n_rows * opts.cell_m;

    // Constraint rectangles, a handful per category.
    std::vector<std::pair<Rect, std::string>> rects;
    json features = json::array();
    for (const char* category : kConstraintCategories) {
        const int n = rng.uniform_int(3, 6);
        // Cap rectangle sides relative to the extent so small scenarios keep
        // enough open ground for placement.
        const double max_side = std::min(4000.0, 0.05 * std::min(extent_x, extent_y));
        for (int i = 0; i < n; ++i) {
            const double w = rng.uniform(0.25 * max_side, max_side);
            const double h = rng.uniform(0.25 * max_side, max_side);
            const double x0 = rng.uniform(0.0, extent_x - w);
            const double y0 = rng.uniform(0.0, extent_y - h);
            const Rect r{x0, y0, x0 + w, y0 + h};
            rects.push_back({r, category});
            features.push_back({
                {"type", "Feature"},
                {"properties", {{"category", category}}},
                {"geometry",
                 {{"type", "Polygon"},
                  {"coordinates",
                   json::array({json::array({{r.x0, r.y0},
                                             {r.x1, r.y0},
                                             {r.x1, r.y1},
                                             {r.x0, r.y1},
                                             {r.x0, r.y0}})})}}},
            });
        }
    }
    json constraints = {{"type", "FeatureCollection"}, {"features", features}};
    write_file(outdir / "constraints.geojson", constraints.dump(2) + "\n");

    const auto clear_of_constraints = [&](const Point& p) {
        for (const auto& [r, _] : rects)
            if (r.contains(p)) return false;
        return true;
    };
    const auto draw_clear_point = [&](double margin) {
        for (int tries = 0; tries < 1000; ++tries) {
            const Point p{rng.uniform(margin, extent_x - margin),
                          rng.uniform(margin, extent_y - margin)};
            if (clear_of_constraints(p)) return p;
        }
        throw PipelineError("synthetic generator: could not place a constraint-free point");
    };

    std::string alt_csv = "id,kind,x_m,y_m\n";
    int alt_no = 0;
    const auto add_alt = [&](const Point& near, double max_offset) {
        const Point p{near.x + rng.uniform(-max_offset, max_offset),
                      near.y + rng.uniform(-max_offset, max_offset)};
        alt_csv += fmt::format("ALT{:04d},{},{},{}\n", ++alt_no,
                               alt_no % 2 == 0 ? "SUBWAY" : "TAXI_ROAD", num(p.x), num(p.y));
    };

    // Destinations with transport nodes of every mode nearby.
    std::string dest_csv = "id,name,x_m,y_m\n";
    std::string node_csv = "id,mode,x_m,y_m\n";
    std::string time_csv = "dest_id,node_id,minutes\n";
    std::string od_csv = "dest_id,node_id,timeframe,volume\n";
    std::vector<std::string> node_ids;
    std::vector<std::string> dest_ids;
    const double dest_margin = std::min(2000.0, 0.125 * std::min(extent_x, extent_y));
    for (int i = 0; i < opts.n_destinations; ++i) {
        const Point p = draw_clear_point(dest_margin);
        const std::string id = fmt::format("DST{:03d}", i);
        dest_ids.push_back(id);
        dest_csv += fmt::format("{},Park {},{},{}\n", id, i, num(p.x), num(p.y));
        add_alt(p, 200.0);
        for (const char* mode : {"BUS", "RAIL", "SUBWAY"}) {
            const std::string node_id = fmt::format("{}_{}", id, mode);
            const Point np{p.x + rng.uniform(-600.0, 600.0), p.y + rng.uniform(-600.0, 600.0)};
            node_csv += fmt::format("{},{},{},{}\n", node_id, mode, num(np.x), num(np.y));
            node_ids.push_back(node_id);
            for (const char* tf : {"MORNING_PEAK", "EVENING_PEAK", "OFF_PEAK"})
                od_csv += fmt::format("{},{},{},{}\n", id, node_id, tf,
                                      num(std::floor(rng.uniform(0.0, 4000.0))));
        }
    }
    // Times for every (destination, node) pair: nearest-node assignment may
    // cross destination clusters.
    for (const auto& dest : dest_ids)
        for (const auto& node : node_ids)
            time_csv += fmt::format("{},{},{}\n", dest, node, num(rng.uniform(10.0, 180.0)));

    std::string fac_csv = "id,name,type,x_m,y_m,num_bus_routes\n";
    const char* types[] = {"TOLL_GATE", "TOLL_GATE", "REST_AREA", "EX_HUB"};
    for (int i = 0; i < opts.n_facilities; ++i) {
        const Point p{rng.uniform(500.0, extent_x - 500.0), rng.uniform(500.0, extent_y - 500.0)};
        fac_csv += fmt::format("FAC{:03d},Facility {},{},{},{},{}\n", i, i,
                               types[rng.uniform_int(0, 3)], num(p.x), num(p.y),
                               rng.uniform_int(0, 500));
        if (rng.uniform(0.0, 1.0) < 0.85) add_alt(p, 300.0);
    }
    for (int i = 0; i < 200; ++i)
        add_alt(Point{rng.uniform(0.0, extent_x), rng.uniform(0.0, extent_y)}, 0.0);

    write_file(outdir / "facilities.csv", fac_csv);
    write_file(outdir / "destinations.csv", dest_csv);
    write_file(outdir / "alt_nodes.csv", alt_csv);
    write_file(outdir / "transport_nodes.csv", node_csv);
    write_file(outdir / "travel_times.csv", time_csv);
    write_file(outdir / "od.csv", od_csv);

    json manifest = {
        {"grid",
         {{"origin_x", 0.0},
          {"origin_y", 0.0},
          {"cell_m", opts.cell_m},
          {"n_cols", opts.n_cols},
          {"n_rows", opts.n_rows}}},
        {"files",
         {{"facilities", "facilities.csv"},
          {"destinations", "destinations.csv"},
          {"alt_nodes", "alt_nodes.csv"},
          {"transport_nodes", "transport_nodes.csv"},
          {"travel_times", "travel_times.csv"},
          {"od", "od.csv"},
          {"constraints", "constraints.geojson"}}},
        {"params", {{"gamma", 0.5}, {"buffer_m", 450.0}, {"range_km", 30.0}, {"top_k", 10}}},
    };
    write_file(outdir / "manifest.json", manifest.dump(2) + "\n");
}

} // namespace vertisite
