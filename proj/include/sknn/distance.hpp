#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sknn/dataset.hpp"

namespace sknn {

/// Settings for the numerical double integral behind lk_numeric_oracle.
/// half_width_multiple is the integration half-width in units of b beyond
/// both means; nodes_per_axis is the total quadrature node budget per axis.
struct QuadratureSettings {
    double half_width_multiple = 24.0;
    std::size_t nodes_per_axis = 2048;
};

/// Per-query metric configuration: Lebesgue parameter p (p = 0 selects the
/// geometric-mean limit), per-feature weights and Laplace scales. Residuals
/// are stored already floored; weights are stored normalized to sum 1 when
/// p == 0.
struct DistanceConfig {
    double p = 0.0;
    std::vector<FeatureType> types;
    std::vector<double> weights;
    std::vector<double> residuals;
    double residual_floor = 1e-12;

    /// Unit weights, residual 1 per feature. A starting point; callers
    /// normally overwrite residuals/weights from a ResidualFit.
    static DistanceConfig for_dataset(const Dataset& data, double p = 0.0);

    /// Store residuals elementwise-floored at max(floors[i], residual_floor).
    /// Pass an empty span to floor at residual_floor only.
    void set_residuals(std::vector<double> raw, std::span<const double> floors = {});

    /// Store weights; normalizes to sum 1 when p == 0.
    void set_weights(std::vector<double> w);

    /// Throws std::invalid_argument unless the config is usable for `dim`
    /// features (arity, positivity, normalization).
    void validate(std::size_t dim) const;
};

/// Expected |X - Y| for two Laplace distributions with shared scale b and
/// means mu apart: mu + e^(-mu/b) (3b + mu) / 2. Strictly positive, even at
/// mu = 0 where it equals 1.5 b.
double lk_laplace(double mu, double b);

/// Quadrature evaluation of the defining double integral
/// (integral of |x-y| f(x) g(y) with f = Laplace(0, b), g = Laplace(mu, b)).
/// Test-support oracle for lk_laplace; composite Gauss-Legendre with panel
/// splits at the density and |x-y| kinks.
double lk_numeric_oracle(double mu, double b, const QuadratureSettings& quad = {});

/// Raw per-feature difference: |a-b| for continuous, 0/1 equality for
/// nominal, rank distance for ordinal. Token arguments are validated.
double feature_difference(const FeatureSpec& spec, const Value& a, const Value& b);

/// Difference of two already-encoded cells.
double encoded_difference(FeatureType type, double a, double b);

/// The combined metric over encoded rows:
///   p = 0: (prod_i lk(d_i, r_i)^{w_i})^(1/m), weights summing to 1,
///          evaluated in log space;
///   p > 0: (sum_i w_i lk(d_i, r_i)^p)^(1/p).
/// skip_feature (when >= 0) removes one feature from the metric: for p = 0
/// the remaining weights are renormalized and the root uses the reduced
/// count. Always strictly positive.
double combined_distance(std::span<const double> x, std::span<const double> y,
                         const DistanceConfig& cfg);
double combined_distance(std::span<const double> x, std::span<const double> y,
                         const DistanceConfig& cfg, int skip_feature);

/// p-norm of the config's residual vector, with p = 1 substituted when the
/// metric runs at p = 0.
double residual_norm(const DistanceConfig& cfg);

}  // namespace sknn
