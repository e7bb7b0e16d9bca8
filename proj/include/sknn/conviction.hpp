#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sknn/dataset.hpp"
#include "sknn/distance.hpp"
#include "sknn/neighbors.hpp"
#include "sknn/residuals.hpp"

namespace sknn {

/// Scale context for converting distance contributions to surprisal.
struct SurprisalContext {
    /// p-norm of the residual vector (1/lambda); strictly positive.
    double r_norm = 1.0;
    std::size_t k = 1;
};

struct ConvictionReport {
    double phi = 0.0;
    double surprisal = 0.0;
    std::optional<double> pi_f;
    double pi_s = 0.0;
    double expected_phi = 0.0;
};

/// Harmonic mean of the neighbor distances: ((1/k) sum 1/d_j)^-1.
double distance_contribution(const NeighborSet& neighbors);

/// Self-information of a distance contribution: I = phi / r_norm, the
/// negative log of exp(-phi / r_norm).
double self_information(double phi, const SurprisalContext& ctx);

/// Normalize distance contributions into the discrete distribution
/// l(i) = phi_i / sum_j phi_j.
std::vector<double> point_probabilities(std::span<const double> phis);

/// Distance contribution of every in-model case over its k nearest
/// neighbors, self excluded.
std::vector<double> all_distance_contributions(const Dataset& data, const DistanceConfig& cfg,
                                               std::size_t k);

/// Familiarity convictions from a precomputed phi vector: for each j, the
/// mean KL distortion of the contribution distribution over the distortion
/// when l(j) is replaced by the uniform mass 1/n (both renormalized). A
/// perfectly uniform distribution yields all ones.
std::vector<double> familiarity_from_phis(std::span<const double> phis);

/// KL divergences D_j themselves. Exposed for anomaly scoring and tests.
std::vector<double> familiarity_divergences(std::span<const double> phis);

/// Familiarity conviction of every case in the model.
std::vector<double> familiarity_conviction(const Dataset& data, const DistanceConfig& cfg,
                                           std::size_t k);

/// Similarity conviction of a query: expected distance contribution of its
/// local model (the mean of its neighbors' own contributions) over the
/// query's observed contribution. Pass `exclude` when the query is an
/// in-model case; that id is then held out of every neighbor search.
/// Requires at least k+1 usable cases.
ConvictionReport similarity_conviction(const Dataset& data, std::span<const double> query,
                                       std::size_t k, const DistanceConfig& cfg,
                                       std::optional<std::size_t> exclude = {});

/// Residual conviction for one feature of a prediction: mean cached
/// leave-one-out error of the feature across the query's neighbors, over the
/// observed absolute prediction error (floored at residual_floor, capped at
/// 1e6). `observed` and `predicted` are encoded values. Requires the fit's
/// error cache.
double residual_conviction(const Dataset& data, const ResidualFit& fit,
                           std::span<const double> query, std::size_t feature,
                           double predicted, std::size_t k, const DistanceConfig& cfg);

/// Cap applied to residual conviction when the observed error hits the floor.
inline constexpr double kResidualConvictionCap = 1e6;

}  // namespace sknn
