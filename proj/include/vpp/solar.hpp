#pragma once

#include <cstdint>

namespace vpp::core {

struct SolarAngles {
    double elevation_deg;  // above the horizon, in [-90, 90]
    double azimuth_deg;    // clockwise from north, in [0, 360)
};

// Sun position from the NOAA low-accuracy ephemeris (declination, equation of
// time, hour angle). Good to a few tenths of a degree; refraction ignored.
SolarAngles solar_position(std::int64_t unix_utc, double lat_deg,
                           double lon_deg);

// Window heat gain in kW from horizontal irradiance, sun geometry and window
// orientation. Both angular factors clamp at zero.
double solar_gains_kw(double irradiance_wm2, double elevation_deg,
                      double azimuth_deg, double window_azimuth_deg,
                      double window_area_m2);

}  // namespace vpp::core
