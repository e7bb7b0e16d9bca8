#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sknn/anomaly.hpp"
#include "sknn/conviction.hpp"
#include "sknn/dataset.hpp"
#include "sknn/distance.hpp"
#include "sknn/learners.hpp"
#include "sknn/residuals.hpp"

namespace sknn {

/// Convenience bundle: a dataset plus its fitted metric and residual cache.
/// This is the surface the CLI and the Python bindings drive; the free
/// functions underneath remain directly usable.
class Model {
public:
    explicit Model(Dataset data, double p = 0.0);

    /// Run the residual/weight feedback loop. k = 0 selects
    /// default_k(N). Returns the fit summary (also kept internally).
    const ResidualFit& fit(std::size_t k = 0, std::size_t max_iter = 10, double tol = 0.01,
                           std::uint64_t seed = 0);

    bool fitted() const { return fitted_; }
    const Dataset& data() const { return data_; }
    const DistanceConfig& config() const { return cfg_; }
    const ResidualFit& residual_fit() const;
    double p() const { return cfg_.p; }
    std::size_t fit_k() const { return fit_k_; }

    /// Encode a boundary-format row (target slot may be absent -> NaN).
    std::vector<double> encode(const std::vector<Value>& values) const {
        return data_.encode_row(values, /*allow_missing_target=*/true);
    }

    Prediction classify(std::span<const double> query, std::size_t k = 0) const;
    Prediction regress(std::span<const double> query, std::size_t k = 0) const;
    Prediction predict(std::span<const double> query, std::size_t k = 0) const;

    ConvictionReport explain(std::span<const double> query, std::size_t k = 0,
                             std::optional<std::size_t> exclude = {}) const;
    std::vector<double> familiarity(std::size_t k = 0) const;
    AnomalyVerdict detect(std::span<const double> query, DetectionMode mode,
                          double threshold = 0.7, std::size_t k = 0,
                          std::optional<std::size_t> exclude = {}) const;

private:
    std::size_t effective_k(std::size_t k) const;
    void require_fitted() const;

    Dataset data_;
    DistanceConfig cfg_;
    ResidualFit fit_;
    std::size_t fit_k_ = 0;
    bool fitted_ = false;
};

}  // namespace sknn
