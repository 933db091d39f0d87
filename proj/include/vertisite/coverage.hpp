#pragma once

#include <map>
#include <string>

#include "vertisite/jps.hpp"
#include "vertisite/records.hpp"

namespace vertisite {

// candidate id -> destination id -> path length in meters (REACHED within range only)
struct CoverageSet {
    std::map<std::string, std::map<std::string, double>> reach;

    const std::map<std::string, double>& of(const std::string& candidate_id) const {
        static const std::map<std::string, double> kEmpty;
        auto it = reach.find(candidate_id);
        return it == reach.end() ? kEmpty : it->second;
    }
};

// Destination d is covered by candidate v iff the JPS path length <= range_km*1000
// (closed at the budget). Pairs whose octile lower bound already exceeds the
// budget are excluded without a search.
CoverageSet compute_coverage(const NavGrid& grid, const CandidateSet& candidates,
                             const std::vector<Destination>& destinations, double range_km);

} // namespace vertisite
