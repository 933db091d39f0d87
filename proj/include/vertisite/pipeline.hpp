#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "vertisite/alt_filter.hpp"
#include "vertisite/coverage.hpp"
#include "vertisite/ingest.hpp"
#include "vertisite/scoring.hpp"

namespace vertisite {

struct RunConfig {
    double gamma = 0.5;
    double buffer_m = 450.0;
    double range_km = 30.0;
    double cell_m = 0.0; // 0 = inherit the manifest grid's cell size (default 100)
    double dem_threshold_m = 300.0;
    std::set<Timeframe> timeframes = {Timeframe::MORNING_PEAK, Timeframe::EVENING_PEAK,
                                      Timeframe::OFF_PEAK};
    int top_k = 10;
    bool emit_intermediate = false;
    bool gamma_sweep = false;

    static RunConfig from_params(const ScenarioParams& p);
    void validate() const;
};

struct StageCounts {
    int facilities_in = 0;
    int facilities_after_constraint = 0;
    int facilities_after_alt = 0;
    int destinations_in = 0;
    int destinations_after_constraint = 0;
    int destinations_after_alt = 0;
    int covered_pairs = 0;
    int ranked = 0;
};

struct GammaCrossover {
    std::string dest_a;
    std::string dest_b;
    double gamma_cross = 0.0; // in (0,1)
};

struct RunReport {
    RunConfig config;
    StageCounts counts;
    GridSpec grid;
    SelectedLayer selected;
    CandidateSet kept_candidates;
    std::vector<Destination> kept_destinations;
    std::vector<Exclusion> facility_exclusions;
    std::vector<Exclusion> destination_exclusions;
    CoverageSet coverage;
    std::vector<DestinationScore> destination_scores; // sorted by id
    std::vector<ScoredCandidate> ranking;             // rank order
    QuadrantResult quadrants;
    std::vector<GammaCrossover> gamma_crossovers; // populated when gamma_sweep
    std::vector<std::string> warnings;
    std::string content_hash; // over emitted report files, excluding run.json
};

RunReport run_pipeline(const ScenarioBundle& bundle, const RunConfig& config,
                       TravelTimeProvider& provider);

// Convenience overload using the bundle's file-backed travel-time table.
RunReport run_pipeline(const ScenarioBundle& bundle, const RunConfig& config);

// Writes ranking.csv, destinations.csv, coverage.geojson, selected_cells.geojson,
// quadrants.csv, quadrant_plot.svg and run.json (plus intermediate/ when enabled).
void emit_reports(const RunReport& report, const std::filesystem::path& outdir);

// Deterministic synthetic scenario for property and scale tests.
struct SyntheticOptions {
    std::uint64_t seed = 0;
    int n_cols = 1500;
    int n_rows = 1500;
    double cell_m = 100.0;
    int n_facilities = 150;
    int n_destinations = 10;
};
void generate_synthetic_scenario(const SyntheticOptions& opts,
                                 const std::filesystem::path& outdir);

} // namespace vertisite
