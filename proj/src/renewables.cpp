#include "vpp/renewables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vpp/errors.hpp"

namespace vpp::core {

void PvParams::validate() const {
    if (!(eta > 0 && eta < 1)) {
        throw ValidationError("pv.eta must be in (0, 1)");
    }
    if (!(area_m2 > 0)) throw ValidationError("pv.area must be > 0");
    if (gamma_t_per_c < 0 || k_t < 0) {
        throw ValidationError("pv temperature coefficients must be >= 0");
    }
}

void WindParams::validate() const {
    if (!(rho_air_kg_m3 > 0)) throw ValidationError("wind.rho_air must be > 0");
    if (!(rotor_radius_m > 0)) {
        throw ValidationError("wind.rotor_radius must be > 0");
    }
    if (!(eta > 0)) throw ValidationError("wind.eta must be > 0");
    if (eta >= 0.593) {
        throw ValidationError("wind.eta exceeds the Betz limit");
    }
}

double pv_power_kw(const PvParams& p, double irradiance_wm2, double t_air_c) {
    if (irradiance_wm2 < 0) {
        throw ValidationError("irradiance must be >= 0");
    }
    const double t_cell = t_air_c + p.k_t * irradiance_wm2;
    const double derate = 1.0 - p.gamma_t_per_c * (t_cell - p.t_ref_c);
    const double watts = p.eta * p.area_m2 * irradiance_wm2 * derate;
    return std::max(0.0, watts) / 1000.0;
}

double wind_power_kw(const WindParams& p, double wind_ms) {
    if (wind_ms < 0) throw ValidationError("wind speed must be >= 0");
    const double swept = std::numbers::pi * p.rotor_radius_m * p.rotor_radius_m;
    const double watts =
        0.5 * p.rho_air_kg_m3 * swept * p.eta * wind_ms * wind_ms * wind_ms;
    return watts / 1000.0;
}

}  // namespace vpp::core
