#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "vertisite/errors.hpp"
#include "vertisite/records.hpp"

namespace vertisite {

// Bucket-grid index over point nodes. Bucket side equals the query radius,
// so a radius query touches at most 3x3 buckets.
class SpatialIndex {
public:
    SpatialIndex(std::vector<AltNode> nodes, double radius_m)
        : nodes_(std::move(nodes)), radius_(radius_m) {
        if (!(radius_m > 0.0)) throw ValidationError("spatial index radius must be > 0");
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            buckets_[key(nodes_[i].position)].push_back(i);
    }

    double radius() const { return radius_; }

    // Exactly the nodes with ||n.position - center|| <= radius_m, sorted by id.
    std::vector<AltNode> radius_query(const Point& center, double radius_m) const {
        if (!(radius_m > 0.0)) throw ValidationError("radius_query radius must be > 0");
        std::vector<AltNode> out;
        // Bucket side is radius_; widen the ring if queried with a larger radius.
        const int reach = std::max(1, static_cast<int>(std::ceil(radius_m / radius_)));
        const auto [cx, cy] = coords(center);
        for (std::int64_t bx = cx - reach; bx <= cx + reach; ++bx) {
            for (std::int64_t by = cy - reach; by <= cy + reach; ++by) {
                auto it = buckets_.find(pack(bx, by));
                if (it == buckets_.end()) continue;
                for (std::size_t i : it->second)
                    if (distance(nodes_[i].position, center) <= radius_m)
                        out.push_back(nodes_[i]);
            }
        }
        std::sort(out.begin(), out.end(),
                  [](const AltNode& a, const AltNode& b) { return a.id < b.id; });
        return out;
    }

    bool any_within(const Point& center, double radius_m) const {
        const int reach = std::max(1, static_cast<int>(std::ceil(radius_m / radius_)));
        const auto [cx, cy] = coords(center);
        for (std::int64_t bx = cx - reach; bx <= cx + reach; ++bx) {
            for (std::int64_t by = cy - reach; by <= cy + reach; ++by) {
                auto it = buckets_.find(pack(bx, by));
                if (it == buckets_.end()) continue;
                for (std::size_t i : it->second)
                    if (distance(nodes_[i].position, center) <= radius_m) return true;
            }
        }
        return false;
    }

private:
    std::pair<std::int64_t, std::int64_t> coords(const Point& p) const {
        return {static_cast<std::int64_t>(std::floor(p.x / radius_)),
                static_cast<std::int64_t>(std::floor(p.y / radius_))};
    }

    static std::uint64_t pack(std::int64_t x, std::int64_t y) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
               static_cast<std::uint32_t>(y);
    }

    std::uint64_t key(const Point& p) const {
        const auto [x, y] = coords(p);
        return pack(x, y);
    }

    std::vector<AltNode> nodes_;
    double radius_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
};

} // namespace vertisite
