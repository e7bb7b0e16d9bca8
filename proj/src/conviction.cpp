#include "sknn/conviction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sknn {

double distance_contribution(const NeighborSet& neighbors) {
    if (neighbors.entries.empty()) {
        throw std::invalid_argument("distance_contribution: empty neighbor set");
    }
    double inv_sum = 0.0;
    for (const auto& e : neighbors.entries) {
        inv_sum += 1.0 / e.distance;
    }
    return static_cast<double>(neighbors.entries.size()) / inv_sum;
}

double self_information(double phi, const SurprisalContext& ctx) {
    if (!(ctx.r_norm > 0.0)) {
        throw std::invalid_argument("self_information: r_norm must be positive");
    }
    return phi / ctx.r_norm;
}

std::vector<double> point_probabilities(std::span<const double> phis) {
    if (phis.empty()) {
        throw std::invalid_argument("point_probabilities: no contributions");
    }
    double sum = 0.0;
    for (double p : phis) sum += p;
    if (!(sum > 0.0)) {
        throw std::invalid_argument("point_probabilities: contributions sum to zero");
    }
    std::vector<double> out(phis.size());
    for (std::size_t i = 0; i < phis.size(); ++i) out[i] = phis[i] / sum;
    return out;
}

std::vector<double> all_distance_contributions(const Dataset& data, const DistanceConfig& cfg,
                                               std::size_t k) {
    if (data.size() < 2) {
        throw std::invalid_argument("all_distance_contributions: need at least two cases");
    }
    std::vector<double> phis(data.size());
    for (std::size_t id = 0; id < data.size(); ++id) {
        phis[id] = distance_contribution(knn_query(data, data.row(id), k, cfg, id));
    }
    return phis;
}

std::vector<double> familiarity_divergences(std::span<const double> phis) {
    const std::size_t n = phis.size();
    const std::vector<double> l = point_probabilities(phis);
    const double uniform = 1.0 / static_cast<double>(n);
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        // Replace l(j) by the uniform expectation 1/n and renormalize, then
        // D_KL(L || L_j) over the shared support.
        const double z = 1.0 - l[j] + uniform;
        double d = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double q = (i == j ? uniform : l[i]) / z;
            d += l[i] * std::log(l[i] / q);
        }
        // Gibbs: nonnegative up to rounding.
        out[j] = std::max(d, 0.0);
    }
    return out;
}

std::vector<double> familiarity_from_phis(std::span<const double> phis) {
    const std::vector<double> div = familiarity_divergences(phis);
    double mean = 0.0;
    for (double d : div) mean += d;
    mean /= static_cast<double>(div.size());

    std::vector<double> out(div.size());
    for (std::size_t j = 0; j < div.size(); ++j) {
        if (div[j] > 0.0) {
            out[j] = mean / div[j];
        } else if (mean <= 0.0) {
            // Perfectly uniform contribution distribution: every case is
            // exactly as familiar as expected.
            out[j] = 1.0;
        } else {
            out[j] = std::numeric_limits<double>::infinity();
        }
    }
    return out;
}

std::vector<double> familiarity_conviction(const Dataset& data, const DistanceConfig& cfg,
                                           std::size_t k) {
    return familiarity_from_phis(all_distance_contributions(data, cfg, k));
}

ConvictionReport similarity_conviction(const Dataset& data, std::span<const double> query,
                                       std::size_t k, const DistanceConfig& cfg,
                                       std::optional<std::size_t> exclude) {
    const std::size_t pool = data.size() - (exclude ? 1 : 0);
    if (pool < k + 1) {
        throw std::invalid_argument("similarity_conviction: needs at least " +
                                    std::to_string(k + 1) + " cases besides the query, have " +
                                    std::to_string(pool));
    }
    ConvictionReport report;
    NeighborSet nb = knn_query(data, query, k, cfg, exclude);
    report.phi = distance_contribution(nb);
    report.surprisal = self_information(report.phi, {residual_norm(cfg), k});

    double sum = 0.0;
    for (const auto& e : nb.entries) {
        NeighborSet own = knn_query2(data, data.row(e.id), k, cfg, e.id, exclude);
        sum += distance_contribution(own);
    }
    report.expected_phi = sum / static_cast<double>(nb.entries.size());
    report.pi_s = report.expected_phi / report.phi;
    return report;
}

double residual_conviction(const Dataset& data, const ResidualFit& fit,
                           std::span<const double> query, std::size_t feature,
                           double predicted, std::size_t k, const DistanceConfig& cfg) {
    if (!fit.has_error_cache()) {
        throw ConfigError("residual_conviction: no cached leave-one-out errors; run fit first");
    }
    const std::size_t m = data.dim();
    NeighborSet nb = knn_query(data, query, k, cfg, std::nullopt, static_cast<int>(feature));
    double local = 0.0;
    for (const auto& e : nb.entries) {
        local += fit.loo_abs_errors[e.id * m + feature];
    }
    local /= static_cast<double>(nb.entries.size());

    const double observed =
        encoded_difference(data.spec(feature).type, query[feature], predicted);
    const double denom = std::max(observed, cfg.residual_floor);
    return std::min(local / denom, kResidualConvictionCap);
}

}  // namespace sknn
