#include "vpp/quantiles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vpp/errors.hpp"

namespace vpp::forecast {

const char* variable_name(Variable v) {
    switch (v) {
        case Variable::price: return "price";
        case Variable::temperature: return "temperature";
        case Variable::irradiance: return "irradiance";
        case Variable::wind: return "wind";
    }
    return "?";
}

QuantileGrid QuantileGrid::deciles() {
    QuantileGrid g;
    for (int i = 1; i <= 9; ++i) g.levels.push_back(i / 10.0);
    return g;
}

void QuantileGrid::validate() const {
    if (levels.empty()) throw ValidationError("quantile grid is empty");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!(levels[i] > 0 && levels[i] < 1)) {
            throw ValidationError("quantile levels must be in (0, 1)");
        }
        if (i > 0 && !(levels[i] > levels[i - 1])) {
            throw ValidationError("quantile levels must be strictly increasing");
        }
    }
}

std::vector<double> quantile_weights(WeightScheme scheme, std::size_t count) {
    if (count == 0) throw ValidationError("need at least one quantile level");
    std::vector<double> w(count);
    if (scheme == WeightScheme::uniform) {
        std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(count));
        return w;
    }
    // Symmetric integer ramp peaking at the central level(s).
    const double peak = std::ceil(count / 2.0);
    const double mid = (count + 1) / 2.0;
    double total = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        w[i] = peak - std::abs(static_cast<double>(i + 1) - mid);
        total += w[i];
    }
    for (auto& x : w) x /= total;
    return w;
}

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> support,
                                             std::vector<double> weights) {
    if (support.size() != weights.size() || support.empty()) {
        throw ValidationError("support/weight size mismatch");
    }
    std::vector<std::size_t> order(support.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });

    double total = 0.0;
    for (std::size_t k : order) {
        const double s = support[k];
        const double w = weights[k];
        if (!std::isfinite(s)) throw ValidationError("non-finite support point");
        if (!(w >= 0)) throw ValidationError("negative weight");
        if (!support_.empty() && support_.back() == s) {
            weights_.back() += w;
        } else {
            support_.push_back(s);
            weights_.push_back(w);
        }
        total += w;
    }
    if (!(total > 0)) throw ValidationError("weights must not all be zero");
    for (auto& w : weights_) w /= total;
}

double EmpiricalDistribution::mean() const {
    double m = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i) {
        m += weights_[i] * support_[i];
    }
    return m;
}

void QuantileForecast::repair_crossings() {
    for (Eigen::Index r = 0; r < values.rows(); ++r) {
        std::vector<double> row(values.cols());
        for (Eigen::Index c = 0; c < values.cols(); ++c) row[c] = values(r, c);
        std::sort(row.begin(), row.end());
        for (Eigen::Index c = 0; c < values.cols(); ++c) values(r, c) = row[c];
    }
}

EmpiricalDistribution QuantileForecast::distribution(
    int step, WeightScheme scheme) const {
    if (step < 0 || step >= horizon) {
        throw ValidationError("horizon step out of range");
    }
    std::vector<double> support(grid.size());
    for (std::size_t c = 0; c < grid.size(); ++c) {
        support[c] = values(step, static_cast<Eigen::Index>(c));
    }
    return EmpiricalDistribution(std::move(support),
                                 quantile_weights(scheme, grid.size()));
}

double QuantileForecast::point(int step, WeightScheme scheme) const {
    return distribution(step, scheme).mean();
}

double empirical_quantile(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw ValidationError("empty sample");
    if (sorted.size() == 1) return sorted[0];
    const double h = std::clamp(q, 0.0, 1.0) * (sorted.size() - 1);
    const std::size_t i = static_cast<std::size_t>(h);
    if (i + 1 >= sorted.size()) return sorted.back();
    const double frac = h - static_cast<double>(i);
    return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

}  // namespace vpp::forecast
