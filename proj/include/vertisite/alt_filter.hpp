#pragma once

#include <string>
#include <vector>

#include "vertisite/grid.hpp"
#include "vertisite/records.hpp"

namespace vertisite {

enum class ExclusionReason { CONSTRAINED, NO_ALTERNATIVE };

const char* to_string(ExclusionReason r);

struct Exclusion {
    std::string id;
    ExclusionReason reason;
};

template <typename T>
struct FilterResult {
    std::vector<T> kept;
    std::vector<Exclusion> excluded;
};

// Keeps a candidate iff its cell is selected and at least one alternative-mode
// node lies within radius_m (closed ball). Exclusions carry the reason.
FilterResult<Candidate> filter_alternatives(const CandidateSet& candidates,
                                            const SelectedLayer& selected,
                                            const std::vector<AltNode>& alt_nodes,
                                            double radius_m);

// Same rule applied to destination vertiports.
FilterResult<Destination> filter_alternatives(const std::vector<Destination>& destinations,
                                              const SelectedLayer& selected,
                                              const std::vector<AltNode>& alt_nodes,
                                              double radius_m);

} // namespace vertisite
