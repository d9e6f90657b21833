#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace vpp::forecast {

// Haurwitz clear-sky global horizontal irradiance for a fixed site. Zero when
// the sun is at or below the horizon.
struct ClearSkyModel {
    double lat_deg = 59.91;  // Oslo
    double lon_deg = 10.75;

    double irradiance_wm2(std::int64_t unix_utc) const;
};

double clear_sky_irradiance(std::int64_t unix_utc, double lat_deg,
                            double lon_deg);

// The Haurwitz formula itself: 1098 * sin(el) * exp(-0.057 / sin(el)) above
// the horizon, zero otherwise.
double haurwitz_ghi_wm2(double elevation_deg);

// Scale a clearness-index quantile row back to irradiance. Index values are
// clamped into [0, 1.2] first; the positive scale preserves row ordering.
Eigen::VectorXd clearness_backtransform(const Eigen::VectorXd& k_row,
                                        double clear_sky_wm2);

}  // namespace vpp::forecast
