#include "sknn/neighbors.hpp"

#include <algorithm>
#include <stdexcept>

namespace sknn {

NeighborSet knn_query2(const Dataset& data, std::span<const double> query, std::size_t k,
                       const DistanceConfig& cfg, std::optional<std::size_t> exclude,
                       std::optional<std::size_t> exclude2, int skip_feature) {
    if (data.size() == 0) {
        throw std::invalid_argument("knn_query: dataset is empty");
    }
    if (k == 0) {
        throw std::invalid_argument("knn_query: k must be >= 1");
    }
    cfg.validate(data.dim());

    NeighborSet out;
    out.k = k;
    out.entries.reserve(data.size());
    for (std::size_t id = 0; id < data.size(); ++id) {
        if ((exclude && *exclude == id) || (exclude2 && *exclude2 == id)) continue;
        out.entries.push_back({id, combined_distance(data.row(id), query, cfg, skip_feature)});
    }
    auto by_distance_then_id = [](const Neighbor& a, const Neighbor& b) {
        return a.distance < b.distance || (a.distance == b.distance && a.id < b.id);
    };
    const std::size_t keep = std::min(k, out.entries.size());
    std::partial_sort(out.entries.begin(), out.entries.begin() + static_cast<std::ptrdiff_t>(keep),
                      out.entries.end(), by_distance_then_id);
    out.entries.resize(keep);
    return out;
}

NeighborSet knn_query(const Dataset& data, std::span<const double> query, std::size_t k,
                      const DistanceConfig& cfg, std::optional<std::size_t> exclude,
                      int skip_feature) {
    return knn_query2(data, query, k, cfg, exclude, std::nullopt, skip_feature);
}

}  // namespace sknn
