#pragma once

namespace vpp::core {

struct BatteryParams {
    double eta_charge = 0.95;
    double eta_discharge = 0.95;
    double capacity_kwh = 100.0;
    double soc_min_kwh = 20.0;
    double soc_max_kwh = 90.0;
    double p_charge_max_kw = 20.0;
    double p_discharge_max_kw = 20.0;
    double deg_cost_eur_per_kwh = 0.01;  // throughput-proportional wear cost

    void validate() const;

    // The same cell scaled to `count` identical units operated as one.
    BatteryParams scaled(int count) const;
};

// SoC update over one step of tau hours. Charging loses eta_charge on the way
// in, discharging pays 1/eta_discharge on the way out. Throws on power bounds
// outside [0, max].
double battery_step(double soc_kwh, double p_charge_kw, double p_discharge_kw,
                    const BatteryParams& p, double tau_h);

}  // namespace vpp::core
