#include "vpp/clearsky.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vpp/solar.hpp"

namespace vpp::forecast {

double haurwitz_ghi_wm2(double elevation_deg) {
    if (elevation_deg <= 0.0) return 0.0;
    const double s = std::sin(elevation_deg * std::numbers::pi / 180.0);
    return 1098.0 * s * std::exp(-0.057 / s);
}

double clear_sky_irradiance(std::int64_t unix_utc, double lat_deg,
                            double lon_deg) {
    const auto sun = core::solar_position(unix_utc, lat_deg, lon_deg);
    return haurwitz_ghi_wm2(sun.elevation_deg);
}

double ClearSkyModel::irradiance_wm2(std::int64_t unix_utc) const {
    return clear_sky_irradiance(unix_utc, lat_deg, lon_deg);
}

Eigen::VectorXd clearness_backtransform(const Eigen::VectorXd& k_row,
                                        double clear_sky_wm2) {
    Eigen::VectorXd out(k_row.size());
    for (Eigen::Index i = 0; i < k_row.size(); ++i) {
        out[i] = std::clamp(k_row[i], 0.0, 1.2) * clear_sky_wm2;
    }
    return out;
}

}  // namespace vpp::forecast
