#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <sys/wait.h>

#include "../src/report_render.hpp"
#include "vertisite/errors.hpp"
#include "vertisite/pipeline.hpp"

using namespace vertisite;

namespace {

const std::filesystem::path kFixture =
    std::filesystem::path(VERTISITE_DATA_DIR) / "sample_scenario" / "manifest.json";

constexpr double kSqrt2 = 1.41421356237309514547462185873882845044;

// Octile length in meters for a displacement measured in 100 m cells.
double octile_m(int dc, int dr) {
    const int lo = std::min(std::abs(dc), std::abs(dr));
    const int hi = std::max(std::abs(dc), std::abs(dr));
    return (kSqrt2 * lo + (hi - lo)) * 100.0;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& name) {
        path = std::filesystem::temp_directory_path() / name;
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

// Independent recomputation of the five destination scores from the raw sums.
struct Expected {
    std::array<double, 5> scaled_time;
    std::array<double, 5> scaled_od;
    std::array<double, 5> score;
};

Expected expected_scores(double gamma = 0.5) {
    const std::array<double, 5> rt = {71.696, 60.89, 131.452, 72.081, 73.346};
    const std::array<double, 5> ro = {1107, 3788, 80, 44, 199};
    Expected e;
    for (int i = 0; i < 5; ++i) {
        e.scaled_time[i] = (rt[i] - 60.89) / (131.452 - 60.89);
        e.scaled_od[i] = (ro[i] - 44) / (3788 - 44);
        e.score[i] = gamma * e.scaled_time[i] + (1 - gamma) * e.scaled_od[i];
    }
    return e;
}

} // namespace

TEST_CASE("end-to-end run on the bundled fixture") {
    const ScenarioBundle bundle = load_scenario(kFixture);
    const RunConfig config = RunConfig::from_params(bundle.params);
    const RunReport report = run_pipeline(bundle, config);

    // Stage counts: one facility lost to the prohibited square, one to the
    // missing alternative-transport node; one destination lost to the square.
    CHECK(report.counts.facilities_in == 6);
    CHECK(report.counts.facilities_after_constraint == 5);
    CHECK(report.counts.facilities_after_alt == 4);
    CHECK(report.counts.destinations_in == 6);
    CHECK(report.counts.destinations_after_constraint == 5);
    CHECK(report.counts.destinations_after_alt == 5);
    CHECK(report.counts.covered_pairs == 9);
    CHECK(report.counts.ranked == 4);
    CHECK(report.warnings.empty());

    REQUIRE(report.facility_exclusions.size() == 2);
    CHECK(report.facility_exclusions[0].id == "CAND_BLOCKED");
    CHECK(report.facility_exclusions[0].reason == ExclusionReason::CONSTRAINED);
    CHECK(report.facility_exclusions[1].id == "CAND_LONELY");
    CHECK(report.facility_exclusions[1].reason == ExclusionReason::NO_ALTERNATIVE);
    REQUIRE(report.destination_exclusions.size() == 1);
    CHECK(report.destination_exclusions[0].id == "F");
    CHECK(report.destination_exclusions[0].reason == ExclusionReason::CONSTRAINED);

    // Coverage sets and flight-path lengths (exact octile geometry).
    const auto& cov = report.coverage;
    REQUIRE(cov.of("CAND_EGUNPO").size() == 2);
    CHECK(cov.of("CAND_EGUNPO").at("A") == doctest::Approx(octile_m(10, 10)));
    CHECK(cov.of("CAND_EGUNPO").at("B") == doctest::Approx(octile_m(10, 240)));
    REQUIRE(cov.of("CAND_GUSEONG").size() == 2);
    CHECK(cov.of("CAND_GUSEONG").at("A") == doctest::Approx(octile_m(230, 50)));
    CHECK(cov.of("CAND_GUSEONG").at("D") == doctest::Approx(octile_m(270, 50)));
    REQUIRE(cov.of("CAND_ANSAN").size() == 2);
    CHECK(cov.of("CAND_ANSAN").at("A") == doctest::Approx(octile_m(30, 20)));
    CHECK(cov.of("CAND_ANSAN").at("B") == doctest::Approx(octile_m(30, 230)));
    REQUIRE(cov.of("CAND_HWASEONG").size() == 3);
    CHECK(cov.of("CAND_HWASEONG").at("A") == doctest::Approx(octile_m(80, 170)));
    CHECK(cov.of("CAND_HWASEONG").at("B") == doctest::Approx(octile_m(80, 80)));
    CHECK(cov.of("CAND_HWASEONG").at("C") == doctest::Approx(octile_m(170, 80)));
    // Just beyond the 30 km budget: Guseong to C needs 30.83 km.
    CHECK(cov.of("CAND_GUSEONG").count("C") == 0);

    // Destination desirability against an independent recomputation.
    const Expected e = expected_scores();
    REQUIRE(report.destination_scores.size() == 5);
    for (int i = 0; i < 5; ++i) {
        const auto& d = report.destination_scores[i];
        CHECK(d.dest_id == std::string(1, static_cast<char>('A' + i)));
        CHECK(d.scaled_time == doctest::Approx(e.scaled_time[i]).epsilon(1e-12));
        CHECK(d.scaled_od == doctest::Approx(e.scaled_od[i]).epsilon(1e-12));
        CHECK(d.score == doctest::Approx(e.score[i]).epsilon(1e-12));
    }

    // Final ranking and truncated display values.
    REQUIRE(report.ranking.size() == 4);
    CHECK(report.ranking[0].id == "CAND_EGUNPO");
    CHECK(report.ranking[0].display_score == doctest::Approx(153.04));
    CHECK(report.ranking[1].id == "CAND_GUSEONG");
    CHECK(report.ranking[1].display_score == doctest::Approx(142.36));
    CHECK(report.ranking[2].id == "CAND_ANSAN");
    CHECK(report.ranking[2].display_score == doctest::Approx(89.81));
    CHECK(report.ranking[3].id == "CAND_HWASEONG");
    CHECK(report.ranking[3].score == 0.0);
    CHECK(report.ranking[0].score ==
          doctest::Approx(213 * (e.score[0] + e.score[1])).epsilon(1e-12));

    // Quadrants over all four ranked candidates.
    REQUIRE(report.quadrants.entries.size() == 4);
    CHECK(report.quadrants.mean_num_bus == doctest::Approx(204.0));
    std::map<std::string, Quadrant> q;
    for (const auto& entry : report.quadrants.entries) q[entry.id] = entry.quadrant;
    // Means across the four ranked sites: num_bus 204, route-sum 0.73956.
    // E.Gunpo (213, 0.71853) -> IV; Ansan (125, 0.71853) -> III;
    // Hwaseong (0, 1.22334) -> II; Guseong (478, 0.29783) -> IV.
    CHECK(q.at("CAND_EGUNPO") == Quadrant::IV);
    CHECK(q.at("CAND_ANSAN") == Quadrant::III);
    CHECK(q.at("CAND_HWASEONG") == Quadrant::II);
    CHECK(q.at("CAND_GUSEONG") == Quadrant::IV);
}

TEST_CASE("repeat runs are bit-identical") {
    const ScenarioBundle bundle = load_scenario(kFixture);
    const RunConfig config = RunConfig::from_params(bundle.params);
    const RunReport r1 = run_pipeline(bundle, config);
    const RunReport r2 = run_pipeline(bundle, config);
    CHECK_FALSE(r1.content_hash.empty());
    CHECK(r1.content_hash == r2.content_hash);
    const auto f1 = detail::render_report_files(r1);
    const auto f2 = detail::render_report_files(r2);
    REQUIRE(f1.size() == f2.size());
    for (const auto& [name, content] : f1) REQUIRE(f2.at(name) == content);
    CHECK(f1.count("run.json") == 0); // the hash never covers the timestamped file
}

TEST_CASE("emit_reports writes the full report set") {
    const ScenarioBundle bundle = load_scenario(kFixture);
    RunConfig config = RunConfig::from_params(bundle.params);
    config.emit_intermediate = true;
    config.gamma_sweep = true;
    const RunReport report = run_pipeline(bundle, config);
    TempDir dir("vertisite_emit_test");
    emit_reports(report, dir.path);

    for (const char* name :
         {"ranking.csv", "destinations.csv", "coverage.geojson", "selected_cells.geojson",
          "quadrants.csv", "quadrant_plot.svg", "gamma_sweep.csv", "run.json",
          "intermediate/exclusions.csv", "intermediate/coverage.csv"})
        CHECK(std::filesystem::exists(dir.path / name));

    const std::string ranking = slurp(dir.path / "ranking.csv");
    CHECK(ranking.find("rank,id,name,type,num_bus,num_destinations,sum_score,score,"
                       "display_score\n") == 0);
    CHECK(ranking.find("1,CAND_EGUNPO,E.Gunpo T,TOLL_GATE,213,2,") != std::string::npos);
    CHECK(ranking.find("153.04") != std::string::npos);

    const std::string run_json = slurp(dir.path / "run.json");
    CHECK(run_json.find(report.content_hash) != std::string::npos);
    CHECK(run_json.find("\"timestamp\"") != std::string::npos);

    const std::string exclusions = slurp(dir.path / "intermediate/exclusions.csv");
    CHECK(exclusions.find("CAND_BLOCKED,facility,CONSTRAINED") != std::string::npos);
    CHECK(exclusions.find("CAND_LONELY,facility,NO_ALTERNATIVE") != std::string::npos);
    CHECK(exclusions.find("F,destination,CONSTRAINED") != std::string::npos);
}

TEST_CASE("gamma override changes scores as the convex weight dictates") {
    const ScenarioBundle bundle = load_scenario(kFixture);
    RunConfig config = RunConfig::from_params(bundle.params);
    config.gamma = 1.0;
    const RunReport report = run_pipeline(bundle, config);
    const Expected e = expected_scores(1.0);
    for (int i = 0; i < 5; ++i)
        CHECK(report.destination_scores[i].score ==
              doctest::Approx(e.scaled_time[i]).epsilon(1e-12));
    CHECK(e.score[1] == 0.0); // gamma=1 leaves only the time criterion
}

TEST_CASE("gamma sweep reports crossover points inside (0,1)") {
    const ScenarioBundle bundle = load_scenario(kFixture);
    RunConfig config = RunConfig::from_params(bundle.params);
    config.gamma_sweep = true;
    const RunReport report = run_pipeline(bundle, config);
    CHECK_FALSE(report.gamma_crossovers.empty());
    double prev = 0.0;
    for (const auto& c : report.gamma_crossovers) {
        CHECK(c.gamma_cross > 0.0);
        CHECK(c.gamma_cross < 1.0);
        CHECK(c.gamma_cross >= prev);
        prev = c.gamma_cross;
        // At the crossover the two destinations score identically.
        const Expected e = expected_scores(c.gamma_cross);
        const int a = c.dest_a[0] - 'A';
        const int b = c.dest_b[0] - 'A';
        CHECK(e.score[a] == doctest::Approx(e.score[b]).epsilon(1e-9));
    }
}

TEST_CASE("timeframe restriction drops OD volume outside the window") {
    const ScenarioBundle bundle = load_scenario(kFixture);
    RunConfig config = RunConfig::from_params(bundle.params);
    config.timeframes = {Timeframe::MORNING_PEAK};
    const RunReport report = run_pipeline(bundle, config);
    // Morning-peak volumes only: A 500, B 2000, C 80, D 44, E 100.
    CHECK(report.destination_scores[0].raw_od == doctest::Approx(500));
    CHECK(report.destination_scores[1].raw_od == doctest::Approx(2000));
    CHECK(report.destination_scores[4].raw_od == doctest::Approx(100));
}

TEST_CASE("cell size override rebuilds the grid over the same extent") {
    const ScenarioBundle bundle = load_scenario(kFixture);
    RunConfig config = RunConfig::from_params(bundle.params);
    config.cell_m = 200.0;
    const RunReport report = run_pipeline(bundle, config);
    CHECK(report.grid.cell_size == 200.0);
    CHECK(report.grid.n_cols == 350);
    CHECK(report.grid.n_rows == 350);
    // The same candidates survive; path lengths differ only through the
    // coarser discretization.
    CHECK(report.counts.facilities_after_alt == 4);
    CHECK(report.ranking[0].id == "CAND_EGUNPO");
}

TEST_CASE("degenerate scenarios run without scoring noise") {
    const ScenarioBundle loaded = load_scenario(kFixture);
    const RunConfig config = RunConfig::from_params(loaded.params);

    ScenarioBundle no_facilities = loaded;
    no_facilities.facilities.clear();
    const RunReport r = run_pipeline(no_facilities, config);
    CHECK(r.counts.facilities_in == 0);
    CHECK(r.ranking.empty());
    CHECK(r.quadrants.entries.empty());
    CHECK_FALSE(r.content_hash.empty());

    ScenarioBundle no_destinations = loaded;
    no_destinations.destinations.clear();
    const RunReport r2 = run_pipeline(no_destinations, config);
    CHECK(r2.destination_scores.empty());
    REQUIRE(r2.ranking.size() == 4);
    for (const auto& c : r2.ranking) CHECK(c.score == 0.0);
}

TEST_CASE("missing travel times abort the run with the gap spelled out") {
    ScenarioBundle bundle = load_scenario(kFixture);
    bundle.travel_times.clear();
    const RunConfig config = RunConfig::from_params(bundle.params);
    try {
        run_pipeline(bundle, config);
        FAIL("expected PipelineError");
    } catch (const PipelineError& e) {
        CHECK(std::string(e.what()).find("MISSING_PAIR") != std::string::npos);
    }
}

TEST_CASE("invalid run configuration is rejected before any work") {
    const ScenarioBundle bundle = load_scenario(kFixture);
    RunConfig config = RunConfig::from_params(bundle.params);
    config.gamma = 2.0;
    config.range_km = -1.0;
    config.top_k = 1;
    try {
        run_pipeline(bundle, config);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.issues().size() == 3);
    }
}

TEST_CASE("command line interface round trip") {
    const std::filesystem::path binary =
        std::filesystem::path(VERTISITE_BINARY_DIR) / "vertisite";
    if (!std::filesystem::exists(binary)) return; // library-only build

    TempDir dir("vertisite_cli_test");
    const auto run = [&](const std::string& args) {
        const std::string cmd = binary.string() + " " + args + " >" +
                                (dir.path / "stdout.txt").string() + " 2>" +
                                (dir.path / "stderr.txt").string();
        const int rc = std::system(cmd.c_str());
        return WEXITSTATUS(rc);
    };

    CHECK(run("validate --manifest " + kFixture.string()) == 0);
    CHECK(run("run --manifest " + kFixture.string() + " --out " +
              (dir.path / "out").string()) == 0);
    CHECK(std::filesystem::exists(dir.path / "out" / "ranking.csv"));
    CHECK(std::filesystem::exists(dir.path / "out" / "run.json"));
    CHECK(slurp(dir.path / "stdout.txt").find("content hash") != std::string::npos);

    // Bad inputs exit with the validation code, runtime gaps with the runtime code.
    CHECK(run("validate --manifest /nonexistent/manifest.json") == 2);
    CHECK(run("run --manifest " + kFixture.string() + " --gamma 3 --out " +
              (dir.path / "out2").string()) == 2);

    CHECK(run("gen-synthetic --seed 7 --cols 80 --rows 80 --facilities 12 "
              "--destinations 3 --out " +
              (dir.path / "synth").string()) == 0);
    CHECK(std::filesystem::exists(dir.path / "synth" / "manifest.json"));
    CHECK(run("validate --manifest " + (dir.path / "synth" / "manifest.json").string()) == 0);
}
