#include "sknn/residuals.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "sknn/neighbors.hpp"
#include "sknn/rng.hpp"

namespace sknn {

namespace {

/// Compensated accumulator; keeps LOO means order-insensitive to ~1 ulp.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double v) {
        double y = v - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

double median_of(std::vector<double> v) {
    const std::size_t n = v.size();
    std::sort(v.begin(), v.end());
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::vector<double> initial_dispersion(const Dataset& data) {
    const std::size_t n = data.size();
    const std::size_t m = data.dim();
    std::vector<double> out(m, 0.0);
    std::vector<double> col(n);
    for (std::size_t f = 0; f < m; ++f) {
        for (std::size_t j = 0; j < n; ++j) col[j] = data.at(j, f);
        if (data.spec(f).type == FeatureType::Nominal) {
            // 0/1 deviation analog: share of values off the mode.
            std::map<double, std::size_t> counts;
            for (double v : col) ++counts[v];
            std::size_t mode_count = 0;
            for (const auto& [v, c] : counts) mode_count = std::max(mode_count, c);
            out[f] = static_cast<double>(n - mode_count) / static_cast<double>(n);
        } else {
            const double med = median_of(col);
            std::vector<double> dev(n);
            for (std::size_t j = 0; j < n; ++j) dev[j] = std::abs(col[j] - med);
            out[f] = median_of(std::move(dev));
        }
    }
    return out;
}

double loo_predict_encoded(const Dataset& data, std::size_t case_id, std::size_t feature,
                           std::size_t k, const DistanceConfig& cfg) {
    if (data.size() < 2) {
        throw std::invalid_argument("loo_predict: need at least two cases");
    }
    NeighborSet nb =
        knn_query(data, data.row(case_id), k, cfg, case_id, static_cast<int>(feature));
    if (data.spec(feature).type == FeatureType::Continuous) {
        double num = 0.0, den = 0.0;
        for (const auto& e : nb.entries) {
            const double w = 1.0 / e.distance;
            num += w * data.at(e.id, feature);
            den += w;
        }
        return num / den;
    }
    // Inverse-distance-weighted mode; ties to the lowest rank.
    std::map<double, double> scores;
    for (const auto& e : nb.entries) {
        scores[data.at(e.id, feature)] += 1.0 / e.distance;
    }
    double best_rank = 0.0, best_score = -1.0;
    for (const auto& [rank, score] : scores) {
        if (score > best_score) {
            best_score = score;
            best_rank = rank;
        }
    }
    return best_rank;
}

Value loo_predict_feature(const Dataset& data, std::size_t case_id, std::size_t feature,
                          std::size_t k, const DistanceConfig& cfg) {
    return data.decode_cell(feature, loo_predict_encoded(data, case_id, feature, k, cfg));
}

std::vector<double> compute_feature_residuals(const Dataset& data, std::size_t k,
                                              const DistanceConfig& cfg,
                                              std::optional<std::size_t> sample,
                                              std::uint64_t seed,
                                              std::vector<double>* abs_errors) {
    const std::size_t n = data.size();
    const std::size_t m = data.dim();
    if (n < 2) {
        throw std::invalid_argument("compute_feature_residuals: need at least two cases");
    }

    std::vector<std::size_t> ids;
    if (sample && *sample < n) {
        ids = sample_indices(n, *sample, seed);
        std::sort(ids.begin(), ids.end());
    } else {
        ids.resize(n);
        for (std::size_t j = 0; j < n; ++j) ids[j] = j;
    }

    const bool cache = abs_errors != nullptr && ids.size() == n;
    if (cache) abs_errors->assign(n * m, 0.0);

    std::vector<double> out(m, 0.0);
    for (std::size_t f = 0; f < m; ++f) {
        const FeatureType type = data.spec(f).type;
        KahanSum acc;
        for (std::size_t j : ids) {
            const double pred = loo_predict_encoded(data, j, f, k, cfg);
            const double err = encoded_difference(type, data.at(j, f), pred);
            if (cache) (*abs_errors)[j * m + f] = err;
            acc.add(err);
        }
        out[f] = acc.sum / static_cast<double>(ids.size());
    }
    return out;
}

std::vector<double> irw_weights(std::span<const double> residuals, double p) {
    const double p_eff = p > 0.0 ? p : 1.0;
    std::vector<double> w(residuals.size());
    for (std::size_t i = 0; i < residuals.size(); ++i) {
        if (!(residuals[i] > 0.0)) {
            throw std::invalid_argument("irw_weights: residuals must be floored positive");
        }
        w[i] = 1.0 / std::pow(residuals[i], p_eff);
    }
    if (p == 0.0) {
        double sum = 0.0;
        for (double wi : w) sum += wi;
        for (double& wi : w) wi /= sum;
    }
    return w;
}

ResidualFit fit_residuals_iterative(const Dataset& data, std::size_t k, std::size_t max_iter,
                                    double tol, std::uint64_t seed, double p) {
    if (max_iter < 1) throw std::invalid_argument("fit_residuals_iterative: max_iter must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("fit_residuals_iterative: tol must be positive");

    ResidualFit fit;
    const std::size_t m = data.dim();
    const std::vector<double> mad = initial_dispersion(data);
    fit.floors.resize(m);
    for (std::size_t f = 0; f < m; ++f) fit.floors[f] = std::max(1e-12, 1e-6 * mad[f]);

    DistanceConfig cfg = DistanceConfig::for_dataset(data, p);
    cfg.set_residuals(mad, fit.floors);
    cfg.set_weights(std::vector<double>(m, 1.0));

    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        std::vector<double> raw =
            compute_feature_residuals(data, k, cfg, std::nullopt, seed, &fit.loo_abs_errors);
        std::vector<double> floored = raw;
        for (std::size_t f = 0; f < m; ++f) floored[f] = std::max(floored[f], fit.floors[f]);

        double change = 0.0;
        for (std::size_t f = 0; f < m; ++f) {
            const double prev = std::max(cfg.residuals[f], cfg.residual_floor);
            change = std::max(change, std::abs(floored[f] - cfg.residuals[f]) / prev);
        }
        fit.history.push_back(change);
        ++fit.iterations_run;

        cfg.set_residuals(floored, fit.floors);
        cfg.set_weights(irw_weights(cfg.residuals, p));

        if (change < tol) {
            fit.converged = true;
            break;
        }
    }
    fit.residuals = cfg.residuals;
    fit.weights = cfg.weights;
    return fit;
}

DistanceConfig config_from_fit(const Dataset& data, const ResidualFit& fit, double p) {
    DistanceConfig cfg = DistanceConfig::for_dataset(data, p);
    cfg.set_residuals(fit.residuals, fit.floors);
    cfg.set_weights(fit.weights);
    return cfg;
}

}  // namespace sknn
