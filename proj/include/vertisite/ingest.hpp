#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vertisite/geometry.hpp"
#include "vertisite/grid.hpp"
#include "vertisite/records.hpp"

namespace vertisite {

struct ScenarioParams {
    double gamma = 0.5;
    double buffer_m = 450.0;
    double range_km = 30.0;
    double dem_threshold_m = 300.0;
    std::set<Timeframe> timeframes = {Timeframe::MORNING_PEAK, Timeframe::EVENING_PEAK,
                                      Timeframe::OFF_PEAK};
    int top_k = 10;
};

// Answers travel time in minutes for a (destination, transport node) pair.
// Implementations memoize: identical queries return identical values in a run.
class TravelTimeProvider {
public:
    virtual ~TravelTimeProvider() = default;
    virtual double query(const std::string& dest_id, const std::string& node_id) = 0;
};

class FileTravelTimeProvider : public TravelTimeProvider {
public:
    explicit FileTravelTimeProvider(const std::vector<TravelTimeRecord>& records);
    double query(const std::string& dest_id, const std::string& node_id) override;

private:
    std::map<std::pair<std::string, std::string>, double> table_;
};

struct PositionLookup {
    std::map<std::string, Point> destinations;
    std::map<std::string, Point> nodes;
};

// POSTs {"origin":{"x":..,"y":..},"destination":{"x":..,"y":..}} to the endpoint
// and reads {"minutes": <real>}. Transient failures retried up to 3 times with
// backoff; per-pair results cached. API key read from VERTISITE_API_KEY and sent
// as a Bearer token when present.
class HttpTravelTimeProvider : public TravelTimeProvider {
public:
    HttpTravelTimeProvider(std::string endpoint, PositionLookup lookup);
    double query(const std::string& dest_id, const std::string& node_id) override;

private:
    std::string host_;
    std::string path_;
    PositionLookup lookup_;
    std::mutex mu_;
    std::map<std::pair<std::string, std::string>, double> cache_;
};

struct ScenarioBundle {
    GridSpec grid;
    CandidateSet facilities;
    std::vector<Destination> destinations;
    PolygonSet constraint_polygons;
    std::optional<DemRaster> dem;
    std::vector<AltNode> alt_nodes;
    std::vector<TransportNode> transport_nodes;
    std::vector<TravelTimeRecord> travel_times;
    std::vector<ODRecord> od_records;
    ScenarioParams params;

    std::shared_ptr<TravelTimeProvider> make_file_provider() const;
    PositionLookup position_lookup() const;
};

// Loads and fully validates a scenario from a JSON manifest. Reports every
// violation found (file/line context), not just the first.
ScenarioBundle load_scenario(const std::filesystem::path& manifest_path);

// Individual format readers, exposed for reuse and tests.
PolygonSet read_constraints_geojson(const std::filesystem::path& path);
DemRaster read_ascii_grid(const std::filesystem::path& path);

} // namespace vertisite
