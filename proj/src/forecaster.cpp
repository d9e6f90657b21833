#include "vpp/forecaster.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "vpp/errors.hpp"

namespace vpp::forecast {

namespace {
constexpr std::int64_t kHour = 3600;
constexpr int kPeriod = 24;
// Below this clear-sky level the clearness index is meaningless (sunrise and
// sunset slivers); treat the hour as dark.
constexpr double kNightClearSkyWm2 = 1.0;
}  // namespace

QuantileForecast persistence_quantile_forecast(std::span<const double> history,
                                               int horizon,
                                               const QuantileGrid& grid,
                                               int lookback_days,
                                               Variable variable,
                                               std::int64_t issue_time) {
    grid.validate();
    if (horizon < 1 || horizon > kPeriod) {
        throw ValidationError("horizon must be in 1..24 steps");
    }
    if (lookback_days < 1) throw ValidationError("lookback must be >= 1 day");

    const std::size_t need =
        static_cast<std::size_t>(kPeriod) * (lookback_days + 1);
    if (history.size() < need) {
        throw ValidationError(
            "insufficient history: need " + std::to_string(need) +
            " hourly samples, have " + std::to_string(history.size()));
    }

    const std::size_t n = history.size();
    QuantileForecast fc;
    fc.variable = variable;
    fc.issue_time = issue_time;
    fc.horizon = horizon;
    fc.grid = grid;
    fc.values.resize(horizon, static_cast<Eigen::Index>(grid.size()));

    std::vector<double> pool;
    pool.reserve(lookback_days);
    for (int h = 1; h <= horizon; ++h) {
        // Value observed one period before the target.
        const double point = history[n - 1 + h - kPeriod];

        // Persistence errors at the same horizon offset on previous days.
        pool.clear();
        for (int d = 1; d <= lookback_days; ++d) {
            const std::size_t s = n - 1 + h - kPeriod * d;
            // s <= n-1 holds for d >= 1 since h <= kPeriod.
            pool.push_back(history[s] - history[s - kPeriod]);
        }
        std::sort(pool.begin(), pool.end());

        for (std::size_t c = 0; c < grid.size(); ++c) {
            fc.values(h - 1, static_cast<Eigen::Index>(c)) =
                point + empirical_quantile(pool, grid.levels[c]);
        }
    }
    fc.repair_crossings();
    return fc;
}

PersistenceForecaster::PersistenceForecaster(QuantileGrid grid,
                                             int lookback_days,
                                             ClearSkyModel clear_sky)
    : grid_(std::move(grid)),
      lookback_days_(lookback_days),
      clear_sky_(clear_sky) {
    grid_.validate();
}

QuantileForecast PersistenceForecaster::forecast(
    Variable variable, std::span<const double> history,
    std::int64_t issue_time, int horizon) const {
    if (variable != Variable::irradiance) {
        return persistence_quantile_forecast(history, horizon, grid_,
                                             lookback_days_, variable,
                                             issue_time);
    }

    // Convert the observed irradiance to a clearness index.
    std::vector<double> k_hist(history.size());
    for (std::size_t i = 0; i < history.size(); ++i) {
        const std::int64_t t =
            issue_time - static_cast<std::int64_t>(history.size() - 1 - i) * kHour;
        const double cs = clear_sky_.irradiance_wm2(t);
        k_hist[i] = cs > kNightClearSkyWm2
                        ? std::clamp(history[i] / cs, 0.0, 1.2)
                        : 0.0;
    }
    QuantileForecast fc = persistence_quantile_forecast(
        k_hist, horizon, grid_, lookback_days_, variable, issue_time);

    for (int h = 0; h < horizon; ++h) {
        const double cs = clear_sky_.irradiance_wm2(issue_time + (h + 1) * kHour);
        fc.values.row(h) = clearness_backtransform(fc.values.row(h), cs);
    }
    return fc;
}

PerfectForecaster::PerfectForecaster(QuantileGrid grid, TruthFn truth)
    : grid_(std::move(grid)), truth_(std::move(truth)) {
    grid_.validate();
    if (!truth_) throw ValidationError("perfect forecaster needs a truth source");
}

QuantileForecast PerfectForecaster::forecast(Variable variable,
                                             std::span<const double>,
                                             std::int64_t issue_time,
                                             int horizon) const {
    QuantileForecast fc;
    fc.variable = variable;
    fc.issue_time = issue_time;
    fc.horizon = horizon;
    fc.grid = grid_;
    fc.values.resize(horizon, static_cast<Eigen::Index>(grid_.size()));
    for (int h = 0; h < horizon; ++h) {
        const double v = truth_(variable, issue_time + (h + 1) * kHour);
        fc.values.row(h).setConstant(v);
    }
    return fc;
}

}  // namespace vpp::forecast
