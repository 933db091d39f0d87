#include <chrono>
#include <cstdlib>
#include <fmt/format.h>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "vertisite/errors.hpp"
#include "vertisite/ingest.hpp"

namespace vertisite {

using nlohmann::json;

namespace {

// Splits "http://host:port/path" into host:port and path.
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
    std::string rest = endpoint;
    const auto scheme = rest.find("://");
    std::string prefix;
    if (scheme != std::string::npos) {
        prefix = rest.substr(0, scheme + 3);
        rest = rest.substr(scheme + 3);
    }
    const auto slash = rest.find('/');
    if (slash == std::string::npos) return {prefix + rest, "/"};
    return {prefix + rest.substr(0, slash), rest.substr(slash)};
}

} // namespace

HttpTravelTimeProvider::HttpTravelTimeProvider(std::string endpoint, PositionLookup lookup)
    : lookup_(std::move(lookup)) {
    std::tie(host_, path_) = split_endpoint(endpoint);
}

double HttpTravelTimeProvider::query(const std::string& dest_id, const std::string& node_id) {
    {
        std::lock_guard lock(mu_);
        auto it = cache_.find({dest_id, node_id});
        if (it != cache_.end()) return it->second;
    }

    auto d_it = lookup_.destinations.find(dest_id);
    auto n_it = lookup_.nodes.find(node_id);
    if (d_it == lookup_.destinations.end() || n_it == lookup_.nodes.end())
        throw PipelineError(fmt::format("unknown pair ({}, {}) for travel time lookup",
                                        dest_id, node_id));

    json body = {
        {"origin", {{"x", n_it->second.x}, {"y", n_it->second.y}}},
        {"destination", {{"x", d_it->second.x}, {"y", d_it->second.y}}},
    };

    httplib::Client client(host_);
    client.set_connection_timeout(5);
    httplib::Headers headers;
    if (const char* key = std::getenv("VERTISITE_API_KEY"))
        headers.emplace("Authorization", std::string("Bearer ") + key);

    std::string last_error;
    for (int attempt = 0; attempt < 3; ++attempt) {
        if (attempt > 0)
            std::this_thread::sleep_for(std::chrono::milliseconds(100 << attempt));
        auto res = client.Post(path_, headers, body.dump(), "application/json");
        if (!res) {
            last_error = fmt::format("attempt {}: transport error", attempt + 1);
            continue;
        }
        if (res->status >= 500) {
            last_error = fmt::format("attempt {}: HTTP {}", attempt + 1, res->status);
            continue;
        }
        if (res->status != 200)
            throw PipelineError(fmt::format("travel time request for ({}, {}) failed: HTTP {}",
                                            dest_id, node_id, res->status));
        try {
            json reply = json::parse(res->body);
            const double minutes = reply.at("minutes").get<double>();
            std::lock_guard lock(mu_);
            cache_[{dest_id, node_id}] = minutes;
            return minutes;
        } catch (const json::exception& e) {
            throw PipelineError(fmt::format(
                "malformed travel time response for ({}, {}): {} (payload: {:.120})", dest_id,
                node_id, e.what(), res->body));
        }
    }
    throw PipelineError(fmt::format("travel time request for ({}, {}) aborted after 3 attempts ({})",
                                    dest_id, node_id, last_error));
}

} // namespace vertisite
