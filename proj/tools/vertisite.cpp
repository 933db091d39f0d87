#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vertisite/errors.hpp"
#include "vertisite/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

std::set<vertisite::Timeframe> parse_timeframes(const std::vector<std::string>& names) {
    std::set<vertisite::Timeframe> out;
    for (const auto& n : names) {
        auto tf = vertisite::parse_timeframe(n);
        if (!tf) throw vertisite::ValidationError("unknown timeframe '" + n + "'");
        out.insert(*tf);
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Highway-transfer vertiport site selection pipeline"};
    app.require_subcommand(1);

    std::string manifest, outdir;
    double gamma = -1.0, buffer_m = -1.0, range_km = -1.0, cell_m = -1.0, dem_threshold = -1.0;
    int top_k = -1;
    std::vector<std::string> timeframes;
    bool emit_intermediate = false, gamma_sweep = false;

    auto* run = app.add_subcommand("run", "Run the full selection and scoring pipeline");
    run->add_option("--manifest", manifest, "Scenario manifest JSON")->required();
    run->add_option("--out", outdir, "Output directory")->required();
    run->add_option("--gamma", gamma, "Travel-time weight in [0,1]");
    run->add_option("--buffer-m", buffer_m, "Alternative-transport buffer radius (m)");
    run->add_option("--range-km", range_km, "One-way UAM range (km)");
    run->add_option("--cell-m", cell_m, "Grid cell size (m); overrides the manifest grid");
    run->add_option("--dem-threshold-m", dem_threshold, "Terrain obstacle elevation ceiling (m)");
    run->add_option("--top-k", top_k, "Quadrant plot subset size");
    run->add_option("--timeframes", timeframes, "OD timeframes to include")->delimiter(',');
    run->add_flag("--emit-intermediate", emit_intermediate, "Write per-stage diagnostics");
    run->add_flag("--gamma-sweep", gamma_sweep, "Emit destination-rank crossover table");

    auto* validate = app.add_subcommand("validate", "Validate a scenario manifest and its files");
    validate->add_option("--manifest", manifest, "Scenario manifest JSON")->required();

    vertisite::SyntheticOptions synth;
    auto* gen = app.add_subcommand("gen-synthetic", "Generate a deterministic synthetic scenario");
    gen->add_option("--seed", synth.seed, "Generator seed")->required();
    gen->add_option("--out", outdir, "Output directory")->required();
    gen->add_option("--cols", synth.n_cols, "Grid columns");
    gen->add_option("--rows", synth.n_rows, "Grid rows");
    gen->add_option("--cell-m", synth.cell_m, "Cell size (m)");
    gen->add_option("--facilities", synth.n_facilities, "Facility count");
    gen->add_option("--destinations", synth.n_destinations, "Destination count");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            vertisite::generate_synthetic_scenario(synth, outdir);
            std::cout << "wrote synthetic scenario to " << outdir << "\n";
            return kExitOk;
        }

        vertisite::ScenarioBundle bundle;
        try {
            bundle = vertisite::load_scenario(manifest);
        } catch (const vertisite::ValidationError& e) {
            std::cerr << "validation failed:\n";
            for (const auto& issue : e.issues()) std::cerr << "  " << issue << "\n";
            return kExitValidation;
        }

        if (validate->parsed()) {
            std::cout << "ok: " << bundle.facilities.size() << " facilities, "
                      << bundle.destinations.size() << " destinations, "
                      << bundle.constraint_polygons.size() << " constraint polygons\n";
            return kExitOk;
        }

        auto config = vertisite::RunConfig::from_params(bundle.params);
        if (gamma >= 0.0) config.gamma = gamma;
        if (buffer_m >= 0.0) config.buffer_m = buffer_m;
        if (range_km >= 0.0) config.range_km = range_km;
        if (cell_m >= 0.0) config.cell_m = cell_m;
        if (dem_threshold >= 0.0) config.dem_threshold_m = dem_threshold;
        if (top_k >= 0) config.top_k = top_k;
        if (!timeframes.empty()) config.timeframes = parse_timeframes(timeframes);
        config.emit_intermediate = emit_intermediate;
        config.gamma_sweep = gamma_sweep;

        try {
            config.validate();
        } catch (const vertisite::ValidationError& e) {
            std::cerr << "validation failed:\n";
            for (const auto& issue : e.issues()) std::cerr << "  " << issue << "\n";
            return kExitValidation;
        }

        const auto report = vertisite::run_pipeline(bundle, config);
        vertisite::emit_reports(report, outdir);
        std::cout << "facilities " << report.counts.facilities_in << " -> "
                  << report.counts.facilities_after_constraint << " -> "
                  << report.counts.facilities_after_alt << "; destinations "
                  << report.counts.destinations_in << " -> "
                  << report.counts.destinations_after_alt << "; covered pairs "
                  << report.counts.covered_pairs << "\n";
        std::cout << "content hash " << report.content_hash << "\n";
        return kExitOk;
    } catch (const vertisite::ValidationError& e) {
        std::cerr << "validation failed:\n";
        for (const auto& issue : e.issues()) std::cerr << "  " << issue << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
