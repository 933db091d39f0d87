#include "vertisite/alt_filter.hpp"

#include <fmt/format.h>

#include "vertisite/errors.hpp"
#include "vertisite/spatial_index.hpp"

namespace vertisite {

const char* to_string(ExclusionReason r) {
    switch (r) {
        case ExclusionReason::CONSTRAINED: return "CONSTRAINED";
        case ExclusionReason::NO_ALTERNATIVE: return "NO_ALTERNATIVE";
    }
    return "?";
}

namespace {

template <typename T>
FilterResult<T> filter_impl(const std::vector<T>& items, const SelectedLayer& selected,
                            const std::vector<AltNode>& alt_nodes, double radius_m) {
    if (!(radius_m > 0.0)) throw ValidationError("buffer radius must be > 0");
    SpatialIndex index(alt_nodes, radius_m);
    FilterResult<T> result;
    for (const T& item : items) {
        if (!selected.spec.contains(item.position))
            throw ValidationError(fmt::format("'{}' at ({}, {}) is outside the grid extent",
                                              item.id, item.position.x, item.position.y));
        if (selected.at(selected.spec.cell_of(item.position)) != 1) {
            result.excluded.push_back({item.id, ExclusionReason::CONSTRAINED});
        } else if (!index.any_within(item.position, radius_m)) {
            result.excluded.push_back({item.id, ExclusionReason::NO_ALTERNATIVE});
        } else {
            result.kept.push_back(item);
        }
    }
    return result;
}

} // namespace

FilterResult<Candidate> filter_alternatives(const CandidateSet& candidates,
                                            const SelectedLayer& selected,
                                            const std::vector<AltNode>& alt_nodes,
                                            double radius_m) {
    return filter_impl(candidates, selected, alt_nodes, radius_m);
}

FilterResult<Destination> filter_alternatives(const std::vector<Destination>& destinations,
                                              const SelectedLayer& selected,
                                              const std::vector<AltNode>& alt_nodes,
                                              double radius_m) {
    return filter_impl(destinations, selected, alt_nodes, radius_m);
}

} // namespace vertisite
