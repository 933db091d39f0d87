#include "vertisite/records.hpp"

namespace vertisite {

std::optional<FacilityType> parse_facility_type(const std::string& s) {
    if (s == "TOLL_GATE") return FacilityType::TOLL_GATE;
    if (s == "REST_AREA") return FacilityType::REST_AREA;
    if (s == "EX_HUB") return FacilityType::EX_HUB;
    return std::nullopt;
}

std::optional<AltKind> parse_alt_kind(const std::string& s) {
    if (s == "TAXI_ROAD") return AltKind::TAXI_ROAD;
    if (s == "SUBWAY") return AltKind::SUBWAY;
    return std::nullopt;
}

std::optional<TransportMode> parse_transport_mode(const std::string& s) {
    if (s == "BUS") return TransportMode::BUS;
    if (s == "RAIL") return TransportMode::RAIL;
    if (s == "SUBWAY") return TransportMode::SUBWAY;
    return std::nullopt;
}

std::optional<Timeframe> parse_timeframe(const std::string& s) {
    if (s == "MORNING_PEAK") return Timeframe::MORNING_PEAK;
    if (s == "EVENING_PEAK") return Timeframe::EVENING_PEAK;
    if (s == "OFF_PEAK") return Timeframe::OFF_PEAK;
    return std::nullopt;
}

const char* to_string(FacilityType t) {
    switch (t) {
        case FacilityType::TOLL_GATE: return "TOLL_GATE";
        case FacilityType::REST_AREA: return "REST_AREA";
        case FacilityType::EX_HUB: return "EX_HUB";
    }
    return "?";
}

const char* to_string(AltKind k) {
    switch (k) {
        case AltKind::TAXI_ROAD: return "TAXI_ROAD";
        case AltKind::SUBWAY: return "SUBWAY";
    }
    return "?";
}

const char* to_string(TransportMode m) {
    switch (m) {
        case TransportMode::BUS: return "BUS";
        case TransportMode::RAIL: return "RAIL";
        case TransportMode::SUBWAY: return "SUBWAY";
    }
    return "?";
}

const char* to_string(Timeframe t) {
    switch (t) {
        case Timeframe::MORNING_PEAK: return "MORNING_PEAK";
        case Timeframe::EVENING_PEAK: return "EVENING_PEAK";
        case Timeframe::OFF_PEAK: return "OFF_PEAK";
    }
    return "?";
}

} // namespace vertisite
