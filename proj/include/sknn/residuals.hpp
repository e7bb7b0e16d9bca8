#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sknn/dataset.hpp"
#include "sknn/distance.hpp"

namespace sknn {

/// Result of the iterative residual <-> metric feedback loop.
struct ResidualFit {
    /// Final per-feature residuals, floored, in feature units.
    std::vector<double> residuals;
    /// Final per-feature weights (1/r^p_eff; normalized to sum 1 at p = 0).
    std::vector<double> weights;
    std::size_t iterations_run = 0;
    /// Max relative residual change per iteration; length == iterations_run.
    std::vector<double> history;
    bool converged = false;
    /// Per-feature effective floors: max(1e-12, 1e-6 x initial MAD).
    std::vector<double> floors;
    /// |observed - predicted| per case and feature from the final pass,
    /// row-major n x dim. The residual-conviction cache.
    std::vector<double> loo_abs_errors;

    bool has_error_cache() const { return !loo_abs_errors.empty(); }
};

/// Leave-one-out prediction of one feature of one case from the remaining
/// features: inverse-distance-weighted mean for continuous features,
/// inverse-distance-weighted mode for nominal/ordinal (ties to the lowest
/// rank). Returns the encoded value.
double loo_predict_encoded(const Dataset& data, std::size_t case_id, std::size_t feature,
                           std::size_t k, const DistanceConfig& cfg);

/// Boundary-format variant of loo_predict_encoded.
Value loo_predict_feature(const Dataset& data, std::size_t case_id, std::size_t feature,
                          std::size_t k, const DistanceConfig& cfg);

/// Mean absolute leave-one-out deviation per feature, over all cases or a
/// seeded uniform sample of `sample` cases. Nominal deviations are 0/1
/// mismatch; ordinal deviations are rank distances. Returns raw (unfloored)
/// residuals. When `abs_errors` is non-null and the full set is used, it
/// receives the per-case deviation matrix (row-major n x dim).
std::vector<double> compute_feature_residuals(const Dataset& data, std::size_t k,
                                              const DistanceConfig& cfg,
                                              std::optional<std::size_t> sample = {},
                                              std::uint64_t seed = 0,
                                              std::vector<double>* abs_errors = nullptr);

/// Inverse-residual weights w_i = 1 / r_i^p_eff with p_eff = p for p > 0 and
/// p_eff = 1 for p = 0; the p = 0 weights are normalized to sum 1.
std::vector<double> irw_weights(std::span<const double> residuals, double p);

/// Per-feature MAD-from-median scale (continuous/ordinal) or mean mismatch
/// against the mode (nominal). Seeds the residual loop and the floors.
std::vector<double> initial_dispersion(const Dataset& data);

/// Iterate: residuals under the current metric, then weights, starting from
/// MAD-from-median residuals with uniform weights. Stops when the max
/// relative residual change drops below tol or after max_iter passes.
/// Non-convergence is reported through `converged`, not an error.
ResidualFit fit_residuals_iterative(const Dataset& data, std::size_t k, std::size_t max_iter,
                                    double tol, std::uint64_t seed = 0, double p = 0.0);

/// DistanceConfig carrying a fit's residuals and weights.
DistanceConfig config_from_fit(const Dataset& data, const ResidualFit& fit, double p);

}  // namespace sknn
