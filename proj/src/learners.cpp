#include "sknn/learners.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "sknn/neighbors.hpp"

namespace sknn {

std::size_t default_k(std::size_t n) {
    auto k = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    return std::clamp<std::size_t>(k, 1, 30);
}

namespace {

std::size_t require_target(const Dataset& data, bool want_continuous, const char* op) {
    if (!data.target()) {
        throw ConfigError(std::string(op) + ": dataset has no designated target feature");
    }
    const std::size_t t = *data.target();
    const bool is_continuous = data.spec(t).type == FeatureType::Continuous;
    if (want_continuous && !is_continuous) {
        throw ConfigError(std::string(op) + ": target \"" + data.spec(t).name +
                          "\" is not continuous");
    }
    if (!want_continuous && is_continuous) {
        throw ConfigError(std::string(op) + ": target \"" + data.spec(t).name +
                          "\" is not categorical");
    }
    return t;
}

/// Neighbors over the non-target features plus the normalized
/// inverse-distance influence weights shared by both learners.
std::pair<NeighborSet, std::vector<std::pair<std::size_t, double>>> neighborhood(
    const Dataset& data, std::span<const double> query, std::size_t k, const DistanceConfig& cfg,
    std::size_t target) {
    NeighborSet nb = knn_query(data, query, k, cfg, std::nullopt, static_cast<int>(target));
    double inv_sum = 0.0;
    for (const auto& e : nb.entries) inv_sum += 1.0 / e.distance;
    std::vector<std::pair<std::size_t, double>> influences;
    influences.reserve(nb.entries.size());
    for (const auto& e : nb.entries) {
        influences.emplace_back(e.id, (1.0 / e.distance) / inv_sum);
    }
    return {std::move(nb), std::move(influences)};
}

}  // namespace

Prediction classify(const Dataset& data, std::span<const double> query, std::size_t k,
                    const DistanceConfig& cfg) {
    const std::size_t target = require_target(data, /*want_continuous=*/false, "classify");
    auto [nb, influences] = neighborhood(data, query, k, cfg, target);

    // score(c) = sum of 1/d over neighbors labelled c; ties to the
    // lexicographically smallest token. Ranks order identically to tokens
    // only for ordinal targets, so compare tokens explicitly.
    std::map<double, double> scores;
    for (const auto& e : nb.entries) {
        scores[data.at(e.id, target)] += 1.0 / e.distance;
    }
    const auto& categories = data.spec(target).categories;
    double best_rank = -1.0, best_score = -1.0;
    for (const auto& [rank, score] : scores) {
        if (score > best_score ||
            (score == best_score &&
             categories[static_cast<std::size_t>(rank)] <
                 categories[static_cast<std::size_t>(best_rank)])) {
            best_score = score;
            best_rank = rank;
        }
    }

    Prediction out;
    out.encoded = best_rank;
    out.value = data.decode_cell(target, best_rank);
    out.influences = std::move(influences);
    return out;
}

Prediction regress(const Dataset& data, std::span<const double> query, std::size_t k,
                   const DistanceConfig& cfg) {
    const std::size_t target = require_target(data, /*want_continuous=*/true, "regress");
    auto [nb, influences] = neighborhood(data, query, k, cfg, target);

    double estimate = 0.0;
    for (const auto& [id, w] : influences) {
        estimate += w * data.at(id, target);
    }

    Prediction out;
    out.encoded = estimate;
    out.value = estimate;
    out.influences = std::move(influences);
    return out;
}

Prediction predict_with_explanation(const Dataset& data, const ResidualFit& fit,
                                    std::span<const double> query, std::size_t k,
                                    const DistanceConfig& cfg) {
    if (!data.target()) {
        throw ConfigError("predict: dataset has no designated target feature");
    }
    const std::size_t target = *data.target();
    const bool continuous = data.spec(target).type == FeatureType::Continuous;
    Prediction out = continuous ? regress(data, query, k, cfg) : classify(data, query, k, cfg);
    if (!std::isnan(query[target])) {
        out.residual_conviction =
            residual_conviction(data, fit, query, target, out.encoded, k, cfg);
    }
    return out;
}

}  // namespace sknn
