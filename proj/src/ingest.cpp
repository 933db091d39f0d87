#include "vertisite/ingest.hpp"

#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "vertisite/csv.hpp"
#include "vertisite/errors.hpp"

namespace vertisite {

using nlohmann::json;

PolygonSet read_constraints_geojson(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError(fmt::format("cannot open '{}'", path.string()));
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ValidationError(fmt::format("{}: invalid JSON: {}", path.string(), e.what()));
    }

    std::vector<std::string> issues;
    PolygonSet polys;
    if (doc.value("type", "") != "FeatureCollection") {
        throw ValidationError(fmt::format("{}: expected a GeoJSON FeatureCollection", path.string()));
    }
    int feature_no = 0;
    for (const auto& feature : doc.value("features", json::array())) {
        ++feature_no;
        const auto ctx = fmt::format("{}: feature {}", path.string(), feature_no);
        const auto& props = feature.value("properties", json::object());
        if (!props.contains("category") || !props["category"].is_string()) {
            issues.push_back(fmt::format("{}: missing string property 'category'", ctx));
            continue;
        }
        const std::string category = props["category"];
        if (!constraint_category_index(category)) {
            issues.push_back(fmt::format("{}: unknown constraint category '{}'", ctx, category));
            continue;
        }
        const auto& geom = feature.value("geometry", json::object());
        const std::string gtype = geom.value("type", "");
        auto read_ring = [&](const json& coords) {
            Ring ring;
            for (const auto& pt : coords) {
                if (!pt.is_array() || pt.size() < 2) {
                    issues.push_back(fmt::format("{}: malformed coordinate", ctx));
                    return Ring{};
                }
                ring.push_back(Point{pt[0].get<double>(), pt[1].get<double>()});
            }
            return ring;
        };
        auto add_polygon = [&](const json& rings) {
            // Outer ring only; holes are out of scope for binary occupancy.
            if (rings.empty() || !rings[0].is_array()) {
                issues.push_back(fmt::format("{}: polygon without rings", ctx));
                return;
            }
            Ring ring = read_ring(rings[0]);
            if (ring.size() < 3) {
                issues.push_back(fmt::format("{}: ring has fewer than 3 vertices", ctx));
                return;
            }
            polys.push_back(TaggedPolygon{std::move(ring), category});
        };
        if (gtype == "Polygon") {
            add_polygon(geom.value("coordinates", json::array()));
        } else if (gtype == "MultiPolygon") {
            for (const auto& poly : geom.value("coordinates", json::array())) add_polygon(poly);
        } else {
            issues.push_back(fmt::format("{}: unsupported geometry type '{}'", ctx, gtype));
        }
    }
    if (!issues.empty()) throw ValidationError(std::move(issues));
    return polys;
}

DemRaster read_ascii_grid(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError(fmt::format("cannot open '{}'", path.string()));
    // Header keys: ncols nrows xllcorner yllcorner cellsize nodata_value.
    std::map<std::string, double> header;
    for (int i = 0; i < 6; ++i) {
        std::string key;
        double value;
        if (!(in >> key >> value))
            throw ValidationError(fmt::format("{}: truncated ASCII grid header", path.string()));
        for (auto& c : key) c = static_cast<char>(std::tolower(c));
        header[key] = value;
    }
    for (const char* key : {"ncols", "nrows", "xllcorner", "yllcorner", "cellsize", "nodata_value"})
        if (!header.contains(key))
            throw ValidationError(fmt::format("{}: missing header key '{}'", path.string(), key));

    DemRaster dem;
    dem.spec.n_cols = static_cast<int>(header["ncols"]);
    dem.spec.n_rows = static_cast<int>(header["nrows"]);
    dem.spec.origin_x = header["xllcorner"];
    dem.spec.origin_y = header["yllcorner"];
    dem.spec.cell_size = header["cellsize"];
    dem.nodata = header["nodata_value"];
    dem.spec.validate();

    const std::size_t n = dem.spec.cell_count();
    std::vector<double> values;
    values.reserve(n);
    double v;
    while (values.size() < n && (in >> v)) values.push_back(v);
    if (values.size() != n)
        throw ValidationError(fmt::format("{}: expected {} values, got {}", path.string(), n,
                                          values.size()));
    // File order is north row first; storage is south row first.
    dem.elevation.assign(n, 0.0);
    for (int row = 0; row < dem.spec.n_rows; ++row)
        for (int col = 0; col < dem.spec.n_cols; ++col)
            dem.elevation[static_cast<std::size_t>(dem.spec.n_rows - 1 - row) * dem.spec.n_cols + col] =
                values[static_cast<std::size_t>(row) * dem.spec.n_cols + col];
    return dem;
}

namespace {

struct Loader {
    std::filesystem::path base;
    std::vector<std::string> issues;

    std::filesystem::path resolve(const std::string& rel) const {
        std::filesystem::path p(rel);
        return p.is_absolute() ? p : base / p;
    }

    void fail(std::string msg) { issues.push_back(std::move(msg)); }

    template <typename F>
    void guarded(F&& f) {
        try {
            f();
        } catch (const ValidationError& e) {
            for (const auto& issue : e.issues()) issues.push_back(issue);
        }
    }
};

} // namespace

ScenarioBundle load_scenario(const std::filesystem::path& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw ValidationError(fmt::format("cannot open manifest '{}'", manifest_path.string()));
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ValidationError(fmt::format("{}: invalid JSON: {}", manifest_path.string(), e.what()));
    }

    Loader ld{manifest_path.parent_path(), {}};
    ScenarioBundle bundle;

    // Grid
    if (!doc.contains("grid")) {
        ld.fail(fmt::format("{}: missing 'grid' section", manifest_path.string()));
    } else {
        const auto& g = doc["grid"];
        bundle.grid.origin_x = g.value("origin_x", 0.0);
        bundle.grid.origin_y = g.value("origin_y", 0.0);
        bundle.grid.cell_size = g.value("cell_m", 100.0);
        bundle.grid.n_cols = g.value("n_cols", 0);
        bundle.grid.n_rows = g.value("n_rows", 0);
        ld.guarded([&] { bundle.grid.validate(); });
    }

    const auto files = doc.value("files", json::object());
    auto file_of = [&](const char* key) -> std::optional<std::filesystem::path> {
        if (!files.contains(key)) return std::nullopt;
        return ld.resolve(files[key].get<std::string>());
    };
    auto require_file = [&](const char* key) -> std::optional<std::filesystem::path> {
        auto p = file_of(key);
        if (!p) ld.fail(fmt::format("{}: files.{} is required", manifest_path.string(), key));
        return p;
    };

    // Facilities
    if (auto p = require_file("facilities")) ld.guarded([&] {
        std::set<std::string> seen;
        for (const auto& row : csv::read_csv(*p, {"id", "name", "type", "x_m", "y_m", "num_bus_routes"})) {
            const auto ctx = fmt::format("{}:{}", p->string(), row.line);
            Candidate c;
            c.id = row.fields[0];
            c.name = row.fields[1];
            if (auto t = parse_facility_type(row.fields[2])) c.type = *t;
            else ld.fail(fmt::format("{}: unknown facility type '{}'", ctx, row.fields[2]));
            if (!csv::parse_double(row.fields[3], c.position.x) ||
                !csv::parse_double(row.fields[4], c.position.y) || !c.position.finite())
                ld.fail(fmt::format("{}: invalid coordinates", ctx));
            if (!csv::parse_int(row.fields[5], c.num_bus_routes) || c.num_bus_routes < 0)
                ld.fail(fmt::format("{}: num_bus_routes must be a nonnegative integer", ctx));
            if (!seen.insert(c.id).second) ld.fail(fmt::format("{}: duplicate facility id '{}'", ctx, c.id));
            bundle.facilities.push_back(std::move(c));
        }
    });

    // Destinations
    if (auto p = require_file("destinations")) ld.guarded([&] {
        std::set<std::string> seen;
        for (const auto& row : csv::read_csv(*p, {"id", "name", "x_m", "y_m"})) {
            const auto ctx = fmt::format("{}:{}", p->string(), row.line);
            Destination d;
            d.id = row.fields[0];
            d.name = row.fields[1];
            if (!csv::parse_double(row.fields[2], d.position.x) ||
                !csv::parse_double(row.fields[3], d.position.y) || !d.position.finite())
                ld.fail(fmt::format("{}: invalid coordinates", ctx));
            if (!seen.insert(d.id).second) ld.fail(fmt::format("{}: duplicate destination id '{}'", ctx, d.id));
            bundle.destinations.push_back(std::move(d));
        }
    });

    // Alt nodes
    if (auto p = require_file("alt_nodes")) ld.guarded([&] {
        std::set<std::string> seen;
        for (const auto& row : csv::read_csv(*p, {"id", "kind", "x_m", "y_m"})) {
            const auto ctx = fmt::format("{}:{}", p->string(), row.line);
            AltNode n;
            n.id = row.fields[0];
            if (auto k = parse_alt_kind(row.fields[1])) n.kind = *k;
            else ld.fail(fmt::format("{}: unknown alt node kind '{}'", ctx, row.fields[1]));
            if (!csv::parse_double(row.fields[2], n.position.x) ||
                !csv::parse_double(row.fields[3], n.position.y) || !n.position.finite())
                ld.fail(fmt::format("{}: invalid coordinates", ctx));
            if (!seen.insert(n.id).second) ld.fail(fmt::format("{}: duplicate alt node id '{}'", ctx, n.id));
            bundle.alt_nodes.push_back(std::move(n));
        }
    });

    // Transport nodes
    std::set<std::string> node_ids;
    if (auto p = require_file("transport_nodes")) ld.guarded([&] {
        for (const auto& row : csv::read_csv(*p, {"id", "mode", "x_m", "y_m"})) {
            const auto ctx = fmt::format("{}:{}", p->string(), row.line);
            TransportNode n;
            n.id = row.fields[0];
            if (auto m = parse_transport_mode(row.fields[1])) n.mode = *m;
            else ld.fail(fmt::format("{}: unknown transport mode '{}'", ctx, row.fields[1]));
            if (!csv::parse_double(row.fields[2], n.position.x) ||
                !csv::parse_double(row.fields[3], n.position.y) || !n.position.finite())
                ld.fail(fmt::format("{}: invalid coordinates", ctx));
            if (!node_ids.insert(n.id).second) ld.fail(fmt::format("{}: duplicate transport node id '{}'", ctx, n.id));
            bundle.transport_nodes.push_back(std::move(n));
        }
    });

    std::set<std::string> dest_ids;
    for (const auto& d : bundle.destinations) dest_ids.insert(d.id);

    // Travel times
    if (auto p = require_file("travel_times")) ld.guarded([&] {
        for (const auto& row : csv::read_csv(*p, {"dest_id", "node_id", "minutes"})) {
            const auto ctx = fmt::format("{}:{}", p->string(), row.line);
            TravelTimeRecord r;
            r.dest_id = row.fields[0];
            r.node_id = row.fields[1];
            if (!dest_ids.contains(r.dest_id))
                ld.fail(fmt::format("{}: dangling dest_id '{}'", ctx, r.dest_id));
            if (!node_ids.contains(r.node_id))
                ld.fail(fmt::format("{}: dangling node_id '{}'", ctx, r.node_id));
            if (!csv::parse_double(row.fields[2], r.minutes) || !std::isfinite(r.minutes) || r.minutes < 0.0)
                ld.fail(fmt::format("{}: minutes must be a nonnegative number", ctx));
            bundle.travel_times.push_back(std::move(r));
        }
    });

    // OD records
    if (auto p = require_file("od")) ld.guarded([&] {
        for (const auto& row : csv::read_csv(*p, {"dest_id", "node_id", "timeframe", "volume"})) {
            const auto ctx = fmt::format("{}:{}", p->string(), row.line);
            ODRecord r;
            r.dest_id = row.fields[0];
            r.node_id = row.fields[1];
            if (!dest_ids.contains(r.dest_id))
                ld.fail(fmt::format("{}: dangling dest_id '{}'", ctx, r.dest_id));
            if (!node_ids.contains(r.node_id))
                ld.fail(fmt::format("{}: dangling node_id '{}'", ctx, r.node_id));
            if (auto t = parse_timeframe(row.fields[2])) r.timeframe = *t;
            else ld.fail(fmt::format("{}: unknown timeframe '{}'", ctx, row.fields[2]));
            if (!csv::parse_double(row.fields[3], r.volume) || !std::isfinite(r.volume) || r.volume < 0.0)
                ld.fail(fmt::format("{}: volume must be a nonnegative number", ctx));
            bundle.od_records.push_back(std::move(r));
        }
    });

    // Constraints (optional: absent means no airspace geometry)
    if (auto p = file_of("constraints"))
        ld.guarded([&] { bundle.constraint_polygons = read_constraints_geojson(*p); });

    // DEM (optional)
    if (auto p = file_of("dem")) ld.guarded([&] { bundle.dem = read_ascii_grid(*p); });

    // Parameters
    const auto params = doc.value("params", json::object());
    bundle.params.gamma = params.value("gamma", 0.5);
    bundle.params.buffer_m = params.value("buffer_m", 450.0);
    bundle.params.range_km = params.value("range_km", 30.0);
    bundle.params.dem_threshold_m = params.value("dem_threshold_m", 300.0);
    bundle.params.top_k = params.value("top_k", 10);
    if (params.contains("timeframes")) {
        bundle.params.timeframes.clear();
        for (const auto& t : params["timeframes"]) {
            if (auto tf = parse_timeframe(t.get<std::string>())) bundle.params.timeframes.insert(*tf);
            else ld.fail(fmt::format("{}: unknown timeframe '{}' in params", manifest_path.string(),
                                     t.get<std::string>()));
        }
    }
    if (!(bundle.params.gamma >= 0.0 && bundle.params.gamma <= 1.0))
        ld.fail(fmt::format("{}: gamma must be in [0,1]", manifest_path.string()));
    if (!(bundle.params.buffer_m > 0.0))
        ld.fail(fmt::format("{}: buffer_m must be > 0", manifest_path.string()));
    if (!(bundle.params.range_km > 0.0))
        ld.fail(fmt::format("{}: range_km must be > 0", manifest_path.string()));

    if (!ld.issues.empty()) throw ValidationError(std::move(ld.issues));
    return bundle;
}

std::shared_ptr<TravelTimeProvider> ScenarioBundle::make_file_provider() const {
    return std::make_shared<FileTravelTimeProvider>(travel_times);
}

PositionLookup ScenarioBundle::position_lookup() const {
    PositionLookup lookup;
    for (const auto& d : destinations) lookup.destinations[d.id] = d.position;
    for (const auto& n : transport_nodes) lookup.nodes[n.id] = n.position;
    return lookup;
}

FileTravelTimeProvider::FileTravelTimeProvider(const std::vector<TravelTimeRecord>& records) {
    for (const auto& r : records) table_[{r.dest_id, r.node_id}] = r.minutes;
}

double FileTravelTimeProvider::query(const std::string& dest_id, const std::string& node_id) {
    auto it = table_.find({dest_id, node_id});
    if (it == table_.end())
        throw PipelineError(fmt::format("MISSING_PAIR: no travel time for ({}, {})", dest_id, node_id));
    return it->second;
}

} // namespace vertisite
