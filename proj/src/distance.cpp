#include "sknn/distance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sknn {

double lk_laplace(double mu, double b) {
    if (!(b > 0.0)) {
        throw std::domain_error("lk_laplace: scale b must be positive (apply the residual floor)");
    }
    if (mu < 0.0) mu = -mu;
    return mu + 0.5 * std::exp(-mu / b) * (3.0 * b + mu);
}

namespace {

/// Nodes and weights of n-point Gauss-Legendre on [-1, 1], by Newton
/// iteration on the Legendre polynomial.
void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-based initial guess.
        double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * static_cast<double>(j) + 1.0) * x * p1 -
                      static_cast<double>(j) * p2) /
                     (static_cast<double>(j) + 1.0);
            }
            pp = static_cast<double>(n) * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

struct Axis {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Composite Gauss-Legendre axis over [lo, hi], split exactly at the given
/// interior kinks so each panel sees a smooth integrand. Panels are
/// distributed across segments proportional to length, at least one each,
/// totalling about `total_nodes` / nodes_per_panel panels.
Axis composite_axis(double lo, double hi, std::vector<double> kinks, std::size_t total_nodes) {
    constexpr std::size_t kPanelNodes = 16;
    static thread_local std::vector<double> ref_nodes, ref_weights;
    if (ref_nodes.size() != kPanelNodes) gauss_legendre(kPanelNodes, ref_nodes, ref_weights);

    std::vector<double> bounds{lo, hi};
    for (double kink : kinks) {
        if (kink > lo && kink < hi) bounds.push_back(kink);
    }
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

    const std::size_t total_panels = std::max<std::size_t>(1, total_nodes / kPanelNodes);
    const double span = hi - lo;

    Axis axis;
    axis.nodes.reserve(total_nodes + kPanelNodes * bounds.size());
    axis.weights.reserve(axis.nodes.capacity());
    for (std::size_t s = 0; s + 1 < bounds.size(); ++s) {
        const double a = bounds[s], b = bounds[s + 1];
        auto panels = static_cast<std::size_t>(
            std::ceil(static_cast<double>(total_panels) * (b - a) / span));
        panels = std::max<std::size_t>(panels, 1);
        const double h = (b - a) / static_cast<double>(panels);
        for (std::size_t p = 0; p < panels; ++p) {
            const double c = a + (static_cast<double>(p) + 0.5) * h;
            for (std::size_t q = 0; q < kPanelNodes; ++q) {
                axis.nodes.push_back(c + 0.5 * h * ref_nodes[q]);
                axis.weights.push_back(0.5 * h * ref_weights[q]);
            }
        }
    }
    return axis;
}

}  // namespace

double lk_numeric_oracle(double mu, double b, const QuadratureSettings& quad) {
    if (!(b > 0.0)) {
        throw std::domain_error("lk_numeric_oracle: scale b must be positive");
    }
    mu = std::abs(mu);
    const double w = quad.half_width_multiple * b;
    const double lo = -w;
    const double hi = mu + w;
    const double inv2b = 1.0 / (2.0 * b);

    // Outer integral over y against g = Laplace(mu, b). The inner integral
    // I(y) = int |x-y| f(x) dx is smooth away from y = 0 and y = mu.
    Axis outer = composite_axis(lo, hi, {0.0, mu}, quad.nodes_per_axis);
    double total = 0.0;
    for (std::size_t j = 0; j < outer.nodes.size(); ++j) {
        const double y = outer.nodes[j];
        const double gy = inv2b * std::exp(-std::abs(y - mu) / b);
        // Inner integral over x against f = Laplace(0, b); kinks at the
        // density peak and at the |x - y| crease.
        Axis inner = composite_axis(lo, hi, {0.0, y}, quad.nodes_per_axis);
        double acc = 0.0;
        for (std::size_t i = 0; i < inner.nodes.size(); ++i) {
            const double x = inner.nodes[i];
            acc += std::abs(x - y) * inv2b * std::exp(-std::abs(x) / b) * inner.weights[i];
        }
        total += acc * gy * outer.weights[j];
    }
    return total;
}

double feature_difference(const FeatureSpec& spec, const Value& a, const Value& b) {
    switch (spec.type) {
        case FeatureType::Continuous: {
            if (!std::holds_alternative<double>(a) || !std::holds_alternative<double>(b)) {
                throw std::domain_error("feature_difference: continuous feature \"" + spec.name +
                                        "\" compared with a token");
            }
            return std::abs(std::get<double>(a) - std::get<double>(b));
        }
        case FeatureType::Nominal: {
            if (!std::holds_alternative<std::string>(a) || !std::holds_alternative<std::string>(b)) {
                throw std::domain_error("feature_difference: nominal feature \"" + spec.name +
                                        "\" compared with a real");
            }
            spec.rank_of(std::get<std::string>(a));
            spec.rank_of(std::get<std::string>(b));
            return std::get<std::string>(a) == std::get<std::string>(b) ? 0.0 : 1.0;
        }
        case FeatureType::Ordinal: {
            if (!std::holds_alternative<std::string>(a) || !std::holds_alternative<std::string>(b)) {
                throw std::domain_error("feature_difference: ordinal feature \"" + spec.name +
                                        "\" compared with a real");
            }
            auto ra = static_cast<double>(spec.rank_of(std::get<std::string>(a)));
            auto rb = static_cast<double>(spec.rank_of(std::get<std::string>(b)));
            return std::abs(ra - rb);
        }
    }
    throw std::logic_error("feature_difference: unreachable");
}

double encoded_difference(FeatureType type, double a, double b) {
    if (type == FeatureType::Nominal) {
        return a == b ? 0.0 : 1.0;
    }
    return std::abs(a - b);
}

DistanceConfig DistanceConfig::for_dataset(const Dataset& data, double p) {
    DistanceConfig cfg;
    cfg.p = p;
    cfg.types.reserve(data.dim());
    for (const auto& s : data.specs()) cfg.types.push_back(s.type);
    cfg.residuals.assign(data.dim(), 1.0);
    cfg.set_weights(std::vector<double>(data.dim(), 1.0));
    return cfg;
}

void DistanceConfig::set_residuals(std::vector<double> raw, std::span<const double> floors) {
    for (std::size_t i = 0; i < raw.size(); ++i) {
        double floor = residual_floor;
        if (!floors.empty()) floor = std::max(floor, floors[i]);
        raw[i] = std::max(raw[i], floor);
    }
    residuals = std::move(raw);
}

void DistanceConfig::set_weights(std::vector<double> w) {
    if (p == 0.0) {
        double sum = std::accumulate(w.begin(), w.end(), 0.0);
        if (!(sum > 0.0)) {
            throw std::invalid_argument("weights must have a positive sum");
        }
        for (double& wi : w) wi /= sum;
    }
    weights = std::move(w);
}

void DistanceConfig::validate(std::size_t dim) const {
    if (p < 0.0) throw std::invalid_argument("p must be >= 0");
    if (types.size() != dim || weights.size() != dim || residuals.size() != dim) {
        throw std::invalid_argument("config arity does not match the feature count");
    }
    for (double r : residuals) {
        if (!(r >= residual_floor) || !(r > 0.0)) {
            throw std::invalid_argument("residuals must be floored positive");
        }
    }
    for (double w : weights) {
        if (!(w >= 0.0)) throw std::invalid_argument("weights must be nonnegative");
    }
    if (p == 0.0) {
        double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
        if (std::abs(sum - 1.0) > 1e-9) {
            throw std::invalid_argument("p = 0 weights must sum to 1");
        }
    }
}

double combined_distance(std::span<const double> x, std::span<const double> y,
                         const DistanceConfig& cfg) {
    return combined_distance(x, y, cfg, -1);
}

double combined_distance(std::span<const double> x, std::span<const double> y,
                         const DistanceConfig& cfg, int skip_feature) {
    const std::size_t m = cfg.types.size();
    if (x.size() != m || y.size() != m) {
        throw std::domain_error("combined_distance: arity mismatch");
    }
    if (cfg.p == 0.0) {
        // Geometric form in log space: exp(sum w_i ln lk_i / m_active).
        double log_sum = 0.0;
        double w_active = 0.0;
        std::size_t m_active = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (static_cast<int>(i) == skip_feature) continue;
            const double d = encoded_difference(cfg.types[i], x[i], y[i]);
            log_sum += cfg.weights[i] * std::log(lk_laplace(d, cfg.residuals[i]));
            w_active += cfg.weights[i];
            ++m_active;
        }
        if (m_active == 0) throw std::domain_error("combined_distance: no active features");
        if (skip_feature >= 0 && w_active > 0.0) log_sum /= w_active;
        return std::exp(log_sum / static_cast<double>(m_active));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (static_cast<int>(i) == skip_feature) continue;
        if (cfg.weights[i] == 0.0) continue;
        const double d = encoded_difference(cfg.types[i], x[i], y[i]);
        sum += cfg.weights[i] * std::pow(lk_laplace(d, cfg.residuals[i]), cfg.p);
    }
    if (!(sum > 0.0)) throw std::domain_error("combined_distance: no active features");
    return std::pow(sum, 1.0 / cfg.p);
}

double residual_norm(const DistanceConfig& cfg) {
    const double p_eff = cfg.p > 0.0 ? cfg.p : 1.0;
    double sum = 0.0;
    for (double r : cfg.residuals) sum += std::pow(r, p_eff);
    return std::pow(sum, 1.0 / p_eff);
}

}  // namespace sknn
