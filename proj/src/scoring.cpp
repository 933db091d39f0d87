#include "vertisite/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "vertisite/errors.hpp"

namespace vertisite {

const char* to_string(Quadrant q) {
    switch (q) {
        case Quadrant::I: return "I";
        case Quadrant::II: return "II";
        case Quadrant::III: return "III";
        case Quadrant::IV: return "IV";
    }
    return "?";
}

std::map<TransportMode, TransportNode>
nearest_nodes_by_mode(const Destination& dest, const std::vector<TransportNode>& nodes) {
    std::map<TransportMode, TransportNode> nearest;
    for (const TransportNode& n : nodes) {
        auto it = nearest.find(n.mode);
        if (it == nearest.end()) {
            nearest.emplace(n.mode, n);
            continue;
        }
        const double d_new = distance(n.position, dest.position);
        const double d_old = distance(it->second.position, dest.position);
        if (d_new < d_old || (d_new == d_old && n.id < it->second.id)) it->second = n;
    }
    return nearest;
}

DestinationAggregate aggregate_destination(const std::string& dest_id,
                                           const std::vector<TransportNode>& nearest_nodes,
                                           const std::vector<TravelTimeRecord>& times,
                                           const std::vector<ODRecord>& ods,
                                           const std::set<Timeframe>& timeframes) {
    DestinationAggregate agg;
    std::vector<std::string> gaps;
    for (const TransportNode& node : nearest_nodes) {
        bool found = false;
        for (const TravelTimeRecord& t : times) {
            if (t.dest_id == dest_id && t.node_id == node.id) {
                agg.raw_time += t.minutes;
                found = true;
                break;
            }
        }
        if (!found)
            gaps.push_back(fmt::format("missing travel time for ({}, {})", dest_id, node.id));
        for (const ODRecord& od : ods)
            if (od.dest_id == dest_id && od.node_id == node.id && timeframes.contains(od.timeframe))
                agg.raw_od += od.volume;
    }
    if (!gaps.empty()) throw ValidationError(std::move(gaps));
    return agg;
}

std::vector<double> minmax_scale(const std::vector<double>& values) {
    if (values.empty()) throw ValidationError("minmax_scale: empty input");
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it, hi = *hi_it;
    std::vector<double> out(values.size(), 0.0);
    if (hi == lo) return out; // degenerate range: undifferentiated criterion
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - lo) / (hi - lo);
    return out;
}

double destination_score(double scaled_time, double scaled_od, double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw ValidationError(fmt::format("gamma must be in [0,1], got {}", gamma));
    return gamma * scaled_time + (1.0 - gamma) * scaled_od;
}

double truncate_display(double score) {
    return std::floor(score * 100.0) / 100.0;
}

ScoredCandidate transfer_score(const Candidate& candidate,
                               const std::map<std::string, double>& coverage,
                               const std::map<std::string, DestinationScore>& dest_scores) {
    ScoredCandidate sc;
    sc.id = candidate.id;
    sc.name = candidate.name;
    sc.type = candidate.type;
    sc.num_bus = candidate.num_bus_routes;
    for (const auto& [dest_id, length_m] : coverage) {
        auto it = dest_scores.find(dest_id);
        if (it == dest_scores.end())
            throw PipelineError(fmt::format("covered destination '{}' has no score", dest_id));
        sc.coverage.insert(dest_id);
        sc.sum_score += it->second.score;
    }
    sc.score = sc.num_bus * sc.sum_score;
    sc.display_score = truncate_display(sc.score);
    return sc;
}

std::vector<ScoredCandidate> rank_candidates(std::vector<ScoredCandidate> scored) {
    std::sort(scored.begin(), scored.end(), [](const ScoredCandidate& a, const ScoredCandidate& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.num_bus != b.num_bus) return a.num_bus > b.num_bus;
        return a.id < b.id;
    });
    return scored;
}

QuadrantResult classify_quadrants(const std::vector<ScoredCandidate>& ranked, int top_k) {
    if (top_k < 2) throw ValidationError(fmt::format("top_k must be >= 2, got {}", top_k));
    QuadrantResult result;
    std::size_t k = static_cast<std::size_t>(top_k);
    if (k > ranked.size()) {
        k = ranked.size();
        result.clamped = true;
        if (k < 2) return result;
    }
    double sum_x = 0.0, sum_y = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sum_x += ranked[i].num_bus;
        sum_y += ranked[i].sum_score;
    }
    result.mean_num_bus = sum_x / static_cast<double>(k);
    result.mean_sum_score = sum_y / static_cast<double>(k);
    for (std::size_t i = 0; i < k; ++i) {
        const ScoredCandidate& c = ranked[i];
        const bool right = c.num_bus >= result.mean_num_bus;
        const bool high = c.sum_score >= result.mean_sum_score;
        Quadrant q = right ? (high ? Quadrant::I : Quadrant::IV)
                           : (high ? Quadrant::II : Quadrant::III);
        result.entries.push_back({c.id, static_cast<double>(c.num_bus), c.sum_score, q});
    }
    return result;
}

} // namespace vertisite
