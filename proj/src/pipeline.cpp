#include "vertisite/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "vertisite/errors.hpp"
#include "report_render.hpp"

namespace vertisite {

RunConfig RunConfig::from_params(const ScenarioParams& p) {
    RunConfig c;
    c.gamma = p.gamma;
    c.buffer_m = p.buffer_m;
    c.range_km = p.range_km;
    c.dem_threshold_m = p.dem_threshold_m;
    c.timeframes = p.timeframes;
    c.top_k = p.top_k;
    return c;
}

void RunConfig::validate() const {
    std::vector<std::string> issues;
    if (!(gamma >= 0.0 && gamma <= 1.0))
        issues.push_back(fmt::format("gamma must be in [0,1], got {}", gamma));
    if (!(buffer_m > 0.0)) issues.push_back("buffer_m must be > 0");
    if (!(range_km > 0.0)) issues.push_back("range_km must be > 0");
    if (cell_m != 0.0 && !(cell_m > 0.0)) issues.push_back("cell_m must be > 0");
    if (!(dem_threshold_m == dem_threshold_m) || std::isinf(dem_threshold_m))
        issues.push_back("dem_threshold_m must be finite");
    if (top_k < 2) issues.push_back(fmt::format("top_k must be >= 2, got {}", top_k));
    if (timeframes.empty()) issues.push_back("timeframes must not be empty");
    if (!issues.empty()) throw ValidationError(std::move(issues));
}

namespace {

// Nearest-neighbor resample of a DEM onto the analysis grid. Cells outside the
// DEM extent read as nodata.
DemRaster resample_dem(const DemRaster& dem, const GridSpec& target) {
    if (dem.spec.n_cols == target.n_cols && dem.spec.n_rows == target.n_rows &&
        dem.spec == target)
        return dem;
    DemRaster out;
    out.spec = target;
    out.nodata = dem.nodata;
    out.elevation.assign(target.cell_count(), dem.nodata);
    for (int row = 0; row < target.n_rows; ++row)
        for (int col = 0; col < target.n_cols; ++col) {
            const Point center = target.cell_center(Cell{col, row});
            if (!dem.spec.contains(center)) continue;
            const Cell src = dem.spec.cell_of(center);
            out.elevation[target.index(Cell{col, row})] = dem.elevation[dem.spec.index(src)];
        }
    return out;
}

std::vector<GammaCrossover> gamma_crossovers(const std::vector<DestinationScore>& scores) {
    std::vector<GammaCrossover> out;
    for (std::size_t i = 0; i < scores.size(); ++i)
        for (std::size_t j = i + 1; j < scores.size(); ++j) {
            // score_i(g) = score_j(g) at g* = (o_j - o_i) / ((t_i - t_j) - (o_i - o_j))
            const double dt = scores[i].scaled_time - scores[j].scaled_time;
            const double dod = scores[i].scaled_od - scores[j].scaled_od;
            const double den = dt - dod;
            if (den == 0.0) continue;
            const double g = -dod / den;
            if (g > 0.0 && g < 1.0)
                out.push_back({scores[i].dest_id, scores[j].dest_id, g});
        }
    std::sort(out.begin(), out.end(), [](const GammaCrossover& a, const GammaCrossover& b) {
        if (a.gamma_cross != b.gamma_cross) return a.gamma_cross < b.gamma_cross;
        if (a.dest_a != b.dest_a) return a.dest_a < b.dest_a;
        return a.dest_b < b.dest_b;
    });
    return out;
}

} // namespace

RunReport run_pipeline(const ScenarioBundle& bundle, const RunConfig& config,
                       TravelTimeProvider& provider) {
    config.validate();

    RunReport report;
    report.config = config;

    GridSpec spec = bundle.grid;
    if (config.cell_m > 0.0 && config.cell_m != spec.cell_size) {
        const double extent_x = spec.cell_size * spec.n_cols;
        const double extent_y = spec.cell_size * spec.n_rows;
        spec.cell_size = config.cell_m;
        spec.n_cols = static_cast<int>(std::ceil(extent_x / config.cell_m));
        spec.n_rows = static_cast<int>(std::ceil(extent_y / config.cell_m));
    }
    spec.validate();
    report.grid = spec;

    // Stage 1: grid build and constraint filter.
    std::vector<Point> facility_points;
    for (const auto& f : bundle.facilities) facility_points.push_back(f.position);
    const BinaryLayer facility_layer = rasterize_points(spec, facility_points);

    std::vector<BinaryLayer> layers;
    for (const char* category : kConstraintCategories) {
        BinaryLayer layer = rasterize_polygons(spec, bundle.constraint_polygons, category);
        if (std::string(category) == "Terrain Obstacles" && bundle.dem) {
            const BinaryLayer dem_layer =
                rasterize_dem(spec, resample_dem(*bundle.dem, spec), config.dem_threshold_m);
            for (std::size_t i = 0; i < layer.cells.size(); ++i)
                layer.cells[i] = layer.cells[i] | dem_layer.cells[i];
        }
        layers.push_back(std::move(layer));
    }
    const ConstraintStack constraints = stack_constraints(std::move(layers));
    report.selected = select_candidates(facility_layer, constraints);

    std::vector<Point> dest_points;
    for (const auto& d : bundle.destinations) dest_points.push_back(d.position);
    const SelectedLayer dest_selected =
        select_candidates(rasterize_points(spec, dest_points), constraints);

    // Stage 2: alternative transportation filter.
    auto cand_filter =
        filter_alternatives(bundle.facilities, report.selected, bundle.alt_nodes, config.buffer_m);
    auto dest_filter =
        filter_alternatives(bundle.destinations, dest_selected, bundle.alt_nodes, config.buffer_m);
    report.kept_candidates = std::move(cand_filter.kept);
    report.kept_destinations = std::move(dest_filter.kept);
    report.facility_exclusions = std::move(cand_filter.excluded);
    report.destination_exclusions = std::move(dest_filter.excluded);

    std::sort(report.kept_candidates.begin(), report.kept_candidates.end(),
              [](const Candidate& a, const Candidate& b) { return a.id < b.id; });
    std::sort(report.kept_destinations.begin(), report.kept_destinations.end(),
              [](const Destination& a, const Destination& b) { return a.id < b.id; });

    // Stage 3: destination reach over the constraint grid.
    const NavGrid nav(constraints);
    report.coverage =
        compute_coverage(nav, report.kept_candidates, report.kept_destinations, config.range_km);

    // Stage 4: location desirability and transfer effectiveness.
    std::map<std::string, DestinationScore> score_by_id;
    if (!report.kept_destinations.empty()) {
        std::vector<double> raw_times, raw_ods;
        std::vector<std::string> gaps;
        for (const Destination& dest : report.kept_destinations) {
            const auto nearest = nearest_nodes_by_mode(dest, bundle.transport_nodes);
            std::vector<TransportNode> nodes;
            std::vector<TravelTimeRecord> times;
            for (const auto& [mode, node] : nearest) {
                nodes.push_back(node);
                try {
                    times.push_back({dest.id, node.id, provider.query(dest.id, node.id)});
                } catch (const PipelineError& e) {
                    gaps.push_back(e.what());
                }
            }
            if (!gaps.empty()) continue;
            const auto agg = aggregate_destination(dest.id, nodes, times, bundle.od_records,
                                                   config.timeframes);
            raw_times.push_back(agg.raw_time);
            raw_ods.push_back(agg.raw_od);
        }
        if (!gaps.empty()) {
            std::string msg = "travel time acquisition failed:";
            for (const auto& g : gaps) msg += "\n  " + g;
            throw PipelineError(msg);
        }
        const auto scaled_times = minmax_scale(raw_times);
        const auto scaled_ods = minmax_scale(raw_ods);
        for (std::size_t i = 0; i < report.kept_destinations.size(); ++i) {
            DestinationScore ds;
            ds.dest_id = report.kept_destinations[i].id;
            ds.name = report.kept_destinations[i].name;
            ds.raw_time = raw_times[i];
            ds.raw_od = raw_ods[i];
            ds.scaled_time = scaled_times[i];
            ds.scaled_od = scaled_ods[i];
            ds.gamma = config.gamma;
            ds.score = destination_score(ds.scaled_time, ds.scaled_od, config.gamma);
            report.destination_scores.push_back(ds);
            score_by_id[ds.dest_id] = ds;
        }
    }

    std::vector<ScoredCandidate> scored;
    for (const Candidate& cand : report.kept_candidates)
        scored.push_back(transfer_score(cand, report.coverage.of(cand.id), score_by_id));
    report.ranking = rank_candidates(std::move(scored));

    if (!report.ranking.empty()) {
        report.quadrants = classify_quadrants(report.ranking, config.top_k);
        if (report.quadrants.clamped)
            report.warnings.push_back(fmt::format(
                "top_k {} exceeds ranked candidate count {}; clamped", config.top_k,
                report.ranking.size()));
    }

    if (config.gamma_sweep)
        report.gamma_crossovers = gamma_crossovers(report.destination_scores);

    // Stage counts.
    report.counts.facilities_in = static_cast<int>(bundle.facilities.size());
    report.counts.destinations_in = static_cast<int>(bundle.destinations.size());
    int cand_constrained = 0, dest_constrained = 0;
    for (const auto& e : report.facility_exclusions)
        if (e.reason == ExclusionReason::CONSTRAINED) ++cand_constrained;
    for (const auto& e : report.destination_exclusions)
        if (e.reason == ExclusionReason::CONSTRAINED) ++dest_constrained;
    report.counts.facilities_after_constraint = report.counts.facilities_in - cand_constrained;
    report.counts.destinations_after_constraint = report.counts.destinations_in - dest_constrained;
    report.counts.facilities_after_alt = static_cast<int>(report.kept_candidates.size());
    report.counts.destinations_after_alt = static_cast<int>(report.kept_destinations.size());
    int pairs = 0;
    for (const auto& [cand, reach] : report.coverage.reach) pairs += static_cast<int>(reach.size());
    report.counts.covered_pairs = pairs;
    report.counts.ranked = static_cast<int>(report.ranking.size());

    report.content_hash = detail::fnv1a_hex(detail::render_report_files(report));
    return report;
}

RunReport run_pipeline(const ScenarioBundle& bundle, const RunConfig& config) {
    auto provider = bundle.make_file_provider();
    return run_pipeline(bundle, config, *provider);
}

} // namespace vertisite
