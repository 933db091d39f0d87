#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vertisite/geometry.hpp"

namespace vertisite {

enum class FacilityType { TOLL_GATE, REST_AREA, EX_HUB };
enum class AltKind { TAXI_ROAD, SUBWAY };
enum class TransportMode { BUS, RAIL, SUBWAY };
enum class Timeframe { MORNING_PEAK, EVENING_PEAK, OFF_PEAK };

std::optional<FacilityType> parse_facility_type(const std::string& s);
std::optional<AltKind> parse_alt_kind(const std::string& s);
std::optional<TransportMode> parse_transport_mode(const std::string& s);
std::optional<Timeframe> parse_timeframe(const std::string& s);

const char* to_string(FacilityType t);
const char* to_string(AltKind k);
const char* to_string(TransportMode m);
const char* to_string(Timeframe t);

inline constexpr int kNumTransportModes = 3;
inline constexpr int kNumTimeframes = 3;

// A highway facility considered as a vertiport site.
struct Candidate {
    std::string id;
    std::string name;
    FacilityType type = FacilityType::TOLL_GATE;
    Point position;
    int num_bus_routes = 0;
};

using CandidateSet = std::vector<Candidate>;

// An industrial park served as a UAM destination.
struct Destination {
    std::string id;
    std::string name;
    Point position;
};

struct AltNode {
    std::string id;
    AltKind kind = AltKind::TAXI_ROAD;
    Point position;
};

struct TransportNode {
    std::string id;
    TransportMode mode = TransportMode::BUS;
    Point position;
};

struct TravelTimeRecord {
    std::string dest_id;
    std::string node_id;
    double minutes = 0.0;
};

struct ODRecord {
    std::string dest_id;
    std::string node_id;
    Timeframe timeframe = Timeframe::MORNING_PEAK;
    double volume = 0.0;
};

} // namespace vertisite
