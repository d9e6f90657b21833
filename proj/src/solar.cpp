#include "vpp/solar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vpp/errors.hpp"
#include "vpp/time.hpp"

namespace vpp::core {

namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;
}  // namespace

SolarAngles solar_position(std::int64_t unix_utc, double lat_deg,
                           double lon_deg) {
    const int doy = day_of_year(unix_utc);
    const double hour = fractional_hour(unix_utc);

    // Fractional year in radians.
    const double g = 2.0 * std::numbers::pi / 365.0 *
                     (doy - 1 + (hour - 12.0) / 24.0);

    const double decl = 0.006918 - 0.399912 * std::cos(g) +
                        0.070257 * std::sin(g) - 0.006758 * std::cos(2 * g) +
                        0.000907 * std::sin(2 * g) -
                        0.002697 * std::cos(3 * g) + 0.00148 * std::sin(3 * g);

    const double eqtime_min =
        229.18 * (0.000075 + 0.001868 * std::cos(g) - 0.032077 * std::sin(g) -
                  0.014615 * std::cos(2 * g) - 0.040849 * std::sin(2 * g));

    const double true_solar_min = hour * 60.0 + eqtime_min + 4.0 * lon_deg;
    double ha_deg = true_solar_min / 4.0 - 180.0;
    // Wrap into [-180, 180).
    ha_deg = ha_deg - 360.0 * std::floor((ha_deg + 180.0) / 360.0);

    const double lat = lat_deg * kDegToRad;
    const double ha = ha_deg * kDegToRad;

    const double cos_zen = std::sin(lat) * std::sin(decl) +
                           std::cos(lat) * std::cos(decl) * std::cos(ha);
    const double zen = std::acos(std::clamp(cos_zen, -1.0, 1.0));

    const double az_south = std::atan2(
        std::sin(ha), std::cos(ha) * std::sin(lat) -
                          std::tan(decl) * std::cos(lat));
    double az_deg = 180.0 + az_south * kRadToDeg;
    az_deg = az_deg - 360.0 * std::floor(az_deg / 360.0);

    return {90.0 - zen * kRadToDeg, az_deg};
}

double solar_gains_kw(double irradiance_wm2, double elevation_deg,
                      double azimuth_deg, double window_azimuth_deg,
                      double window_area_m2) {
    if (irradiance_wm2 < 0) {
        throw ValidationError("irradiance must be >= 0");
    }
    const double sin_el = std::sin(elevation_deg * kDegToRad);
    const double cos_rel =
        std::cos((azimuth_deg - window_azimuth_deg) * kDegToRad);
    const double watts = irradiance_wm2 * window_area_m2 *
                         std::max(0.0, sin_el) * std::max(0.0, cos_rel);
    return watts / 1000.0;
}

}  // namespace vpp::core
