#include <chrono>
#include <fmt/chrono.h>
#include <cstdint>
#include <cstdio>
#include <fmt/format.h>
#include <fstream>

#include <json.hpp>

#include "report_render.hpp"
#include "vertisite/errors.hpp"

namespace vertisite::detail {

using nlohmann::json;

namespace {

std::string num(double v, const char* fmt = "%.10g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string ranking_csv(const RunReport& r) {
    std::string out = "rank,id,name,type,num_bus,num_destinations,sum_score,score,display_score\n";
    int rank = 1;
    for (const auto& c : r.ranking)
        out += fmt::format("{},{},{},{},{},{},{},{},{}\n", rank++, csv_field(c.id),
                           csv_field(c.name), to_string(c.type), c.num_bus, c.coverage.size(),
                           num(c.sum_score), num(c.score), num(c.display_score, "%.2f"));
    return out;
}

std::string destinations_csv(const RunReport& r) {
    std::string out = "id,name,raw_time,scaled_time,raw_od,scaled_od,score\n";
    for (const auto& d : r.destination_scores)
        out += fmt::format("{},{},{},{},{},{},{}\n", csv_field(d.dest_id), csv_field(d.name),
                           num(d.raw_time), num(d.scaled_time), num(d.raw_od), num(d.scaled_od),
                           num(d.score));
    return out;
}

std::string quadrants_csv(const RunReport& r) {
    std::string out = "id,num_bus,sum_score,quadrant\n";
    for (const auto& e : r.quadrants.entries)
        out += fmt::format("{},{},{},{}\n", csv_field(e.id), num(e.num_bus), num(e.sum_score),
                           to_string(e.quadrant));
    return out;
}

std::string gamma_sweep_csv(const RunReport& r) {
    std::string out = "dest_a,dest_b,gamma_cross\n";
    for (const auto& c : r.gamma_crossovers)
        out += fmt::format("{},{},{}\n", csv_field(c.dest_a), csv_field(c.dest_b),
                           num(c.gamma_cross));
    return out;
}

std::string coverage_geojson(const RunReport& r) {
    std::map<std::string, Point> cand_pos, dest_pos;
    for (const auto& c : r.kept_candidates) cand_pos[c.id] = c.position;
    for (const auto& d : r.kept_destinations) dest_pos[d.id] = d.position;
    json features = json::array();
    for (const auto& [cand_id, reach] : r.coverage.reach)
        for (const auto& [dest_id, length_m] : reach) {
            const Point a = cand_pos.at(cand_id);
            const Point b = dest_pos.at(dest_id);
            features.push_back({
                {"type", "Feature"},
                {"properties",
                 {{"candidate", cand_id}, {"destination", dest_id}, {"length_m", length_m}}},
                {"geometry",
                 {{"type", "LineString"},
                  {"coordinates", json::array({{a.x, a.y}, {b.x, b.y}})}}},
            });
        }
    json doc = {{"type", "FeatureCollection"}, {"features", features}};
    return doc.dump(2) + "\n";
}

std::string selected_cells_geojson(const RunReport& r) {
    const GridSpec& spec = r.selected.spec;
    json features = json::array();
    for (int row = 0; row < spec.n_rows; ++row)
        for (int col = 0; col < spec.n_cols; ++col) {
            if (!r.selected.at(Cell{col, row})) continue;
            const double x0 = spec.origin_x + col * spec.cell_size;
            const double y0 = spec.origin_y + row * spec.cell_size;
            const double x1 = x0 + spec.cell_size;
            const double y1 = y0 + spec.cell_size;
            features.push_back({
                {"type", "Feature"},
                {"properties", {{"col", col}, {"row", row}}},
                {"geometry",
                 {{"type", "Polygon"},
                  {"coordinates",
                   json::array({json::array(
                       {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}, {x0, y0}})})}}},
            });
        }
    json doc = {{"type", "FeatureCollection"}, {"features", features}};
    return doc.dump(2) + "\n";
}

std::string quadrant_plot_svg(const RunReport& r) {
    constexpr double kW = 640, kH = 480, kMargin = 60;
    const auto& q = r.quadrants;
    double max_x = 1.0, max_y = 1.0;
    for (const auto& e : q.entries) {
        max_x = std::max(max_x, e.num_bus);
        max_y = std::max(max_y, e.sum_score);
    }
    max_x *= 1.1;
    max_y *= 1.1;
    const auto sx = [&](double v) { return kMargin + v / max_x * (kW - 2 * kMargin); };
    const auto sy = [&](double v) { return kH - kMargin - v / max_y * (kH - 2 * kMargin); };

    std::string svg = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
        "viewBox=\"0 0 {} {}\">\n",
        num(kW), num(kH), num(kW), num(kH));
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += fmt::format(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        num(kMargin), num(kH - kMargin), num(kW - kMargin), num(kH - kMargin));
    svg += fmt::format(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        num(kMargin), num(kMargin), num(kMargin), num(kH - kMargin));
    if (!q.entries.empty()) {
        svg += fmt::format(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"gray\" "
            "stroke-dasharray=\"4\"/>\n",
            num(sx(q.mean_num_bus)), num(kMargin), num(sx(q.mean_num_bus)), num(kH - kMargin));
        svg += fmt::format(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"gray\" "
            "stroke-dasharray=\"4\"/>\n",
            num(kMargin), num(sy(q.mean_sum_score)), num(kW - kMargin), num(sy(q.mean_sum_score)));
    }
    for (const auto& e : q.entries) {
        svg += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"steelblue\"/>\n",
                           num(sx(e.num_bus)), num(sy(e.sum_score)));
        svg += fmt::format(
            "<text x=\"{}\" y=\"{}\" font-size=\"10\" font-family=\"sans-serif\">{} ({})</text>\n",
            num(sx(e.num_bus) + 6), num(sy(e.sum_score) - 4), e.id, to_string(e.quadrant));
    }
    svg += fmt::format(
        "<text x=\"{}\" y=\"{}\" font-size=\"12\" font-family=\"sans-serif\">number of bus "
        "routes</text>\n",
        num(kW / 2 - 60), num(kH - kMargin / 3));
    svg += fmt::format(
        "<text x=\"{}\" y=\"{}\" font-size=\"12\" font-family=\"sans-serif\" "
        "transform=\"rotate(-90 16 {})\">summed desirability</text>\n",
        num(16.0), num(kH / 2.0), num(kH / 2.0));
    svg += "</svg>\n";
    return svg;
}

std::string exclusions_csv(const RunReport& r) {
    std::string out = "id,stage,reason\n";
    for (const auto& e : r.facility_exclusions)
        out += fmt::format("{},facility,{}\n", csv_field(e.id), to_string(e.reason));
    for (const auto& e : r.destination_exclusions)
        out += fmt::format("{},destination,{}\n", csv_field(e.id), to_string(e.reason));
    return out;
}

std::string coverage_csv(const RunReport& r) {
    std::string out = "candidate_id,dest_id,length_m\n";
    for (const auto& [cand_id, reach] : r.coverage.reach)
        for (const auto& [dest_id, length_m] : reach)
            out += fmt::format("{},{},{}\n", csv_field(cand_id), csv_field(dest_id),
                               num(length_m));
    return out;
}

} // namespace

std::map<std::string, std::string> render_report_files(const RunReport& report) {
    std::map<std::string, std::string> files;
    files["ranking.csv"] = ranking_csv(report);
    files["destinations.csv"] = destinations_csv(report);
    files["quadrants.csv"] = quadrants_csv(report);
    files["coverage.geojson"] = coverage_geojson(report);
    files["selected_cells.geojson"] = selected_cells_geojson(report);
    files["quadrant_plot.svg"] = quadrant_plot_svg(report);
    if (report.config.gamma_sweep) files["gamma_sweep.csv"] = gamma_sweep_csv(report);
    if (report.config.emit_intermediate) {
        files["intermediate/exclusions.csv"] = exclusions_csv(report);
        files["intermediate/coverage.csv"] = coverage_csv(report);
    }
    return files;
}

std::string fnv1a_hex(const std::map<std::string, std::string>& files) {
    std::uint64_t h = 14695981039346656037ull;
    const auto mix = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= 0;
        h *= 1099511628211ull;
    };
    for (const auto& [name, content] : files) {
        mix(name);
        mix(content);
    }
    return fmt::format("{:016x}", h);
}

} // namespace vertisite::detail

namespace vertisite {

using nlohmann::json;

void emit_reports(const RunReport& report, const std::filesystem::path& outdir) {
    std::error_code ec;
    std::filesystem::create_directories(outdir, ec);
    if (ec) throw PipelineError(fmt::format("cannot create output directory '{}': {}",
                                            outdir.string(), ec.message()));

    const auto files = detail::render_report_files(report);
    for (const auto& [name, content] : files) {
        const auto path = outdir / name;
        std::filesystem::create_directories(path.parent_path(), ec);
        std::ofstream out(path, std::ios::binary);
        if (!out) throw PipelineError(fmt::format("cannot write '{}'", path.string()));
        out << content;
        if (!out) throw PipelineError(fmt::format("write failed for '{}'", path.string()));
    }

    json run;
    run["config"] = {
        {"gamma", report.config.gamma},
        {"buffer_m", report.config.buffer_m},
        {"range_km", report.config.range_km},
        {"cell_m", report.grid.cell_size},
        {"dem_threshold_m", report.config.dem_threshold_m},
        {"top_k", report.config.top_k},
    };
    json timeframes = json::array();
    for (const auto t : report.config.timeframes) timeframes.push_back(to_string(t));
    run["config"]["timeframes"] = timeframes;
    run["grid"] = {{"origin_x", report.grid.origin_x},
                   {"origin_y", report.grid.origin_y},
                   {"cell_m", report.grid.cell_size},
                   {"n_cols", report.grid.n_cols},
                   {"n_rows", report.grid.n_rows}};
    run["counts"] = {
        {"facilities_in", report.counts.facilities_in},
        {"facilities_after_constraint", report.counts.facilities_after_constraint},
        {"facilities_after_alt", report.counts.facilities_after_alt},
        {"destinations_in", report.counts.destinations_in},
        {"destinations_after_constraint", report.counts.destinations_after_constraint},
        {"destinations_after_alt", report.counts.destinations_after_alt},
        {"covered_pairs", report.counts.covered_pairs},
        {"ranked", report.counts.ranked},
    };
    run["quadrant_split"] = {{"mean_num_bus", report.quadrants.mean_num_bus},
                             {"mean_sum_score", report.quadrants.mean_sum_score}};
    run["warnings"] = report.warnings;
    run["content_hash"] = report.content_hash;
    const auto now = std::chrono::system_clock::now();
    run["timestamp"] = fmt::format("{:%FT%TZ}", std::chrono::floor<std::chrono::seconds>(now));

    std::ofstream out(outdir / "run.json", std::ios::binary);
    if (!out) throw PipelineError(fmt::format("cannot write '{}'", (outdir / "run.json").string()));
    out << run.dump(2) << "\n";
}

} // namespace vertisite
