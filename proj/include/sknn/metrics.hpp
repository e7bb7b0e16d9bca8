#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sknn {

struct ClassificationMetrics {
    double accuracy = 0.0;
    double precision = 0.0;  // macro over classes present in truth
    double recall = 0.0;     // macro over classes present in truth
    double mcc = 0.0;        // generalized multiclass correlation
};

struct RegressionMetrics {
    double r2 = 0.0;  // NaN when the truth vector is constant
    double mae = 0.0;
    double mse = 0.0;
    double spearman = 0.0;  // average ranks for ties
};

ClassificationMetrics classification_metrics(std::span<const std::string> truth,
                                             std::span<const std::string> predicted);

RegressionMetrics regression_metrics(std::span<const double> truth,
                                     std::span<const double> predicted);

/// F1 with anomaly as the positive class; 0 when precision + recall is 0.
double f1_binary(std::span<const bool> truth, std::span<const bool> predicted);

/// Average ranks (1-based, ties averaged).
std::vector<double> average_ranks(std::span<const double> values);

}  // namespace sknn
