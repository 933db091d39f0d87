#pragma once

#include <map>
#include <string>

#include "vertisite/pipeline.hpp"

namespace vertisite::detail {

// Renders every report file except run.json, keyed by relative filename.
// The content hash is computed over this map, so rendering must be deterministic.
std::map<std::string, std::string> render_report_files(const RunReport& report);

std::string fnv1a_hex(const std::map<std::string, std::string>& files);

} // namespace vertisite::detail
