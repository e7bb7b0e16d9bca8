#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "sknn/conviction.hpp"
#include "sknn/dataset.hpp"
#include "sknn/distance.hpp"

namespace sknn {

enum class DetectionMode { Similarity, Familiarity };

struct AnomalyVerdict {
    double score = 0.0;
    DetectionMode mode = DetectionMode::Similarity;
    bool is_anomaly = false;
    double threshold = 0.7;
};

/// Conviction-thresholded anomaly detection. Similarity mode compares the
/// query's similarity conviction to the threshold and expects an
/// inlier-trained model. Familiarity mode appends the query to the model as
/// a temporary case (per-query scratch phi vector, shared data untouched),
/// recomputes only the contributions the insertion changes, and scores the
/// query's familiarity conviction over the n+1 points. A query is anomalous
/// iff score < threshold.
AnomalyVerdict detect(const Dataset& data, std::span<const double> query, DetectionMode mode,
                      double threshold, std::size_t k, const DistanceConfig& cfg,
                      std::optional<std::size_t> exclude = {});

/// Familiarity conviction of an out-of-model query via temporary insertion.
/// Exposed separately so `explain` can attach pi_f to a ConvictionReport.
double familiarity_of_query(const Dataset& data, std::span<const double> query, std::size_t k,
                            const DistanceConfig& cfg);

}  // namespace sknn
