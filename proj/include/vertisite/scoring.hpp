#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "vertisite/coverage.hpp"
#include "vertisite/records.hpp"

namespace vertisite {

struct DestinationScore {
    std::string dest_id;
    std::string name;
    double raw_time = 0.0;
    double raw_od = 0.0;
    double scaled_time = 0.0;
    double scaled_od = 0.0;
    double score = 0.0;
    double gamma = 0.5;
};

struct ScoredCandidate {
    std::string id;
    std::string name;
    FacilityType type = FacilityType::TOLL_GATE;
    int num_bus = 0;
    std::set<std::string> coverage; // destination ids
    double sum_score = 0.0;
    double score = 0.0;          // full precision: num_bus * sum_score
    double display_score = 0.0;  // floor(score * 100) / 100
};

enum class Quadrant { I, II, III, IV };
const char* to_string(Quadrant q);

struct QuadrantEntry {
    std::string id;
    double num_bus = 0.0;
    double sum_score = 0.0;
    Quadrant quadrant = Quadrant::I;
};

struct QuadrantResult {
    std::vector<QuadrantEntry> entries; // in rank order over the classified subset
    double mean_num_bus = 0.0;
    double mean_sum_score = 0.0;
    bool clamped = false; // top_k exceeded the list length
};

// Nearest node per mode for one destination (Euclidean, ties by node id).
std::map<TransportMode, TransportNode>
nearest_nodes_by_mode(const Destination& dest, const std::vector<TransportNode>& nodes);

// Sums travel time over the given nodes and OD volume over nodes x timeframes.
// Travel-time records must exist for every (dest, node) pair; missing pairs are
// reported together. Absent OD rows contribute 0.
struct DestinationAggregate {
    double raw_time = 0.0;
    double raw_od = 0.0;
};
DestinationAggregate aggregate_destination(const std::string& dest_id,
                                           const std::vector<TransportNode>& nearest_nodes,
                                           const std::vector<TravelTimeRecord>& times,
                                           const std::vector<ODRecord>& ods,
                                           const std::set<Timeframe>& timeframes);

// x~ = (x - min) / (max - min); all zero when max == min. Empty input -> error.
std::vector<double> minmax_scale(const std::vector<double>& values);

// gamma * scaled_time + (1 - gamma) * scaled_od, gamma in [0,1].
double destination_score(double scaled_time, double scaled_od, double gamma);

double truncate_display(double score); // floor at 2 decimals

ScoredCandidate transfer_score(const Candidate& candidate,
                               const std::map<std::string, double>& coverage,
                               const std::map<std::string, DestinationScore>& dest_scores);

// Descending by score, ties by descending num_bus then ascending id.
std::vector<ScoredCandidate> rank_candidates(std::vector<ScoredCandidate> scored);

// Mean-split quadrants over the top_k by score: x = num_bus, y = sum_score;
// I: x>=mx, y>=my; II: x<mx, y>=my; III: x<mx, y<my; IV: x>=mx, y<my.
QuadrantResult classify_quadrants(const std::vector<ScoredCandidate>& ranked, int top_k);

} // namespace vertisite
