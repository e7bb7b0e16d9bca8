#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sknn/dataset.hpp"
#include "sknn/distance.hpp"

namespace sknn {

struct Neighbor {
    std::size_t id;
    double distance;
};

/// Exact nearest neighbors, ascending by (distance, id). Holds
/// min(k, available) entries.
struct NeighborSet {
    std::vector<Neighbor> entries;
    std::size_t k = 0;
};

/// Brute-force exact k-NN under combined_distance. `exclude` omits one case
/// id (leave-one-out); `skip_feature` removes a feature from the metric.
/// k larger than the available pool returns the whole pool. Deterministic:
/// ties are broken by ascending case id.
NeighborSet knn_query(const Dataset& data, std::span<const double> query, std::size_t k,
                      const DistanceConfig& cfg, std::optional<std::size_t> exclude = {},
                      int skip_feature = -1);

/// Same, with a second excluded id (used when scoring an in-model point's
/// neighborhood while that point itself is held out).
NeighborSet knn_query2(const Dataset& data, std::span<const double> query, std::size_t k,
                       const DistanceConfig& cfg, std::optional<std::size_t> exclude,
                       std::optional<std::size_t> exclude2, int skip_feature = -1);

}  // namespace sknn
