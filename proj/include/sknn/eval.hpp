#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sknn/dataset.hpp"

namespace sknn {

/// Per-seed evaluation outcome. Rows align with metric_names; means are
/// arithmetic means of the rows.
struct EvalReport {
    std::string task;  // "classification" or "regression"
    std::vector<std::string> metric_names;
    std::vector<std::uint64_t> seeds;
    std::vector<std::vector<double>> rows;
    std::vector<double> means;
};

struct EvalConfig {
    std::size_t k = 0;      // 0 selects default_k(train size)
    std::size_t fit_k = 0;  // 0 follows k
    std::size_t max_iter = 10;
    double tol = 0.01;
    double p = 0.0;
    double split = 0.75;  // train fraction, in (0, 1)
    std::vector<std::uint64_t> seeds;
};

/// Train ids for one seeded split; the complement is the test set. Both come
/// back sorted ascending. Classification targets split stratified by label,
/// regression targets split plain; every class keeps at least one train
/// case, and no side is empty when N >= 2.
std::vector<std::size_t> train_split(const Dataset& data, double frac, std::uint64_t seed);

/// Seeded repeats of split -> fit on train -> score test, aggregated into an
/// EvalReport. Classification reports accuracy / macro precision / macro
/// recall / MCC; regression reports R2 / MAE / MSE / Spearman.
EvalReport evaluate(const Dataset& data, const EvalConfig& cfg);

}  // namespace sknn
