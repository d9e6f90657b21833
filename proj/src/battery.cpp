#include "vpp/battery.hpp"

#include <string>

#include "vpp/errors.hpp"

namespace vpp::core {

void BatteryParams::validate() const {
    if (!(eta_charge > 0 && eta_charge <= 1.0)) {
        throw ValidationError("battery.eta_ch must be in (0, 1]");
    }
    if (!(eta_discharge > 0 && eta_discharge <= 1.0)) {
        throw ValidationError("battery.eta_dis must be in (0, 1]");
    }
    if (!(capacity_kwh > 0)) {
        throw ValidationError("battery.capacity must be > 0");
    }
    if (!(0 <= soc_min_kwh && soc_min_kwh < soc_max_kwh &&
          soc_max_kwh <= capacity_kwh)) {
        throw ValidationError(
            "battery SoC bounds must satisfy 0 <= min < max <= capacity");
    }
    if (p_charge_max_kw < 0 || p_discharge_max_kw < 0) {
        throw ValidationError("battery power limits must be >= 0");
    }
    if (deg_cost_eur_per_kwh < 0) {
        throw ValidationError("battery.c_deg must be >= 0");
    }
}

BatteryParams BatteryParams::scaled(int count) const {
    BatteryParams s = *this;
    s.capacity_kwh *= count;
    s.soc_min_kwh *= count;
    s.soc_max_kwh *= count;
    s.p_charge_max_kw *= count;
    s.p_discharge_max_kw *= count;
    return s;
}

double battery_step(double soc_kwh, double p_charge_kw, double p_discharge_kw,
                    const BatteryParams& p, double tau_h) {
    if (p_charge_kw < 0 || p_charge_kw > p.p_charge_max_kw) {
        throw ValidationError("charge power " + std::to_string(p_charge_kw) +
                              " kW outside [0, " +
                              std::to_string(p.p_charge_max_kw) + "]");
    }
    if (p_discharge_kw < 0 || p_discharge_kw > p.p_discharge_max_kw) {
        throw ValidationError("discharge power " +
                              std::to_string(p_discharge_kw) +
                              " kW outside [0, " +
                              std::to_string(p.p_discharge_max_kw) + "]");
    }
    return soc_kwh + p.eta_charge * p_charge_kw * tau_h -
           p_discharge_kw * tau_h / p.eta_discharge;
}

}  // namespace vpp::core
