#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sknn/conviction.hpp"
#include "sknn/dataset.hpp"
#include "sknn/distance.hpp"
#include "sknn/residuals.hpp"

namespace sknn {

struct Prediction {
    /// Predicted label token or real value.
    Value value;
    /// Encoded form of `value`.
    double encoded = 0.0;
    /// (case id, normalized inverse-distance weight), ascending by distance;
    /// weights sum to 1.
    std::vector<std::pair<std::size_t, double>> influences;
    std::optional<double> residual_conviction;
};

/// Default neighbor count: ceil(sqrt(N)) clamped to [1, 30].
std::size_t default_k(std::size_t n);

/// Inverse-distance-weighted vote over the k nearest neighbors, measured
/// over the non-target features. Ties go to the lexicographically smallest
/// label token. Requires a nominal (or ordinal) target.
Prediction classify(const Dataset& data, std::span<const double> query, std::size_t k,
                    const DistanceConfig& cfg);

/// Inverse-distance-weighted mean of neighbor targets. Requires a
/// continuous target.
Prediction regress(const Dataset& data, std::span<const double> query, std::size_t k,
                   const DistanceConfig& cfg);

/// Task-appropriate prediction plus residual conviction for the target
/// feature, when the query carries an observed target value (non-NaN slot)
/// and the fit has an error cache.
Prediction predict_with_explanation(const Dataset& data, const ResidualFit& fit,
                                    std::span<const double> query, std::size_t k,
                                    const DistanceConfig& cfg);

}  // namespace sknn
