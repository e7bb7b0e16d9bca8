#include "sknn/anomaly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sknn/neighbors.hpp"

namespace sknn {

namespace {

/// phi vector over the model plus one appended query, touching only the
/// contributions the insertion changes. A case's neighborhood changes only
/// when the query lands nearer than its current k-th neighbor.
std::vector<double> phis_with_query(const Dataset& data, std::span<const double> query,
                                    std::size_t k, const DistanceConfig& cfg) {
    const std::size_t n = data.size();
    std::vector<double> phis(n + 1);
    for (std::size_t id = 0; id < n; ++id) {
        NeighborSet nb = knn_query(data, data.row(id), k, cfg, id);
        const double d_query = combined_distance(data.row(id), query, cfg);
        if (nb.entries.size() < k || d_query < nb.entries.back().distance) {
            // The query joins this neighborhood; it displaces the old k-th
            // entry only when the set was already full.
            double inv_sum = 1.0 / d_query;
            const std::size_t keep =
                nb.entries.size() < k ? nb.entries.size() : nb.entries.size() - 1;
            for (std::size_t j = 0; j < keep; ++j) inv_sum += 1.0 / nb.entries[j].distance;
            phis[id] = static_cast<double>(keep + 1) / inv_sum;
        } else {
            phis[id] = distance_contribution(nb);
        }
    }
    phis[n] = distance_contribution(knn_query(data, query, k, cfg));
    return phis;
}

}  // namespace

double familiarity_of_query(const Dataset& data, std::span<const double> query, std::size_t k,
                            const DistanceConfig& cfg) {
    if (data.size() < 2) {
        throw std::invalid_argument("familiarity: need at least two cases in the model");
    }
    std::vector<double> phis = phis_with_query(data, query, k, cfg);
    return familiarity_from_phis(phis).back();
}

AnomalyVerdict detect(const Dataset& data, std::span<const double> query, DetectionMode mode,
                      double threshold, std::size_t k, const DistanceConfig& cfg,
                      std::optional<std::size_t> exclude) {
    AnomalyVerdict verdict;
    verdict.mode = mode;
    verdict.threshold = threshold;
    if (mode == DetectionMode::Similarity) {
        verdict.score = similarity_conviction(data, query, k, cfg, exclude).pi_s;
    } else {
        verdict.score = familiarity_of_query(data, query, k, cfg);
    }
    verdict.is_anomaly = verdict.score < threshold;
    return verdict;
}

}  // namespace sknn
