#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "vpp/clearsky.hpp"
#include "vpp/quantiles.hpp"

namespace vpp::forecast {

// Quantile forecast of the next `horizon` hours from observed history.
// `history` is the hourly series ending at issue_time (its last element is
// the observation taken at issue_time); row h of the result targets
// issue_time + (h+1)*3600, so row 0 is one hour ahead.
class Forecaster {
public:
    virtual ~Forecaster() = default;
    virtual QuantileForecast forecast(Variable variable,
                                      std::span<const double> history,
                                      std::int64_t issue_time,
                                      int horizon) const = 0;
};

// Seasonal-persistence baseline: the point forecast repeats the value
// observed 24 hours before the target, and quantile offsets come from the
// empirical distribution of recent 24 h persistence errors, pooled per
// horizon step. Needs lookback+1 days of history.
QuantileForecast persistence_quantile_forecast(std::span<const double> history,
                                               int horizon,
                                               const QuantileGrid& grid,
                                               int lookback_days,
                                               Variable variable,
                                               std::int64_t issue_time);

class PersistenceForecaster : public Forecaster {
public:
    PersistenceForecaster(QuantileGrid grid, int lookback_days,
                          ClearSkyModel clear_sky);

    // Irradiance is forecast through the clearness index: the observed series
    // is divided by deterministic clear-sky irradiance, the index is forecast
    // by persistence, and rows are scaled back with the future clear-sky
    // values. Other variables are forecast directly.
    QuantileForecast forecast(Variable variable,
                              std::span<const double> history,
                              std::int64_t issue_time,
                              int horizon) const override;

    int lookback_days() const { return lookback_days_; }

private:
    QuantileGrid grid_;
    int lookback_days_;
    ClearSkyModel clear_sky_;
};

// Oracle forecaster: every quantile equals the realized future value. Used by
// the perfect-information controller and by equivalence tests.
class PerfectForecaster : public Forecaster {
public:
    using TruthFn = std::function<double(Variable, std::int64_t)>;

    PerfectForecaster(QuantileGrid grid, TruthFn truth);

    QuantileForecast forecast(Variable variable,
                              std::span<const double> history,
                              std::int64_t issue_time,
                              int horizon) const override;

private:
    QuantileGrid grid_;
    TruthFn truth_;
};

}  // namespace vpp::forecast
