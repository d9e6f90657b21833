#pragma once

#include <string>
#include <vector>

#include "vpp/battery.hpp"
#include "vpp/building.hpp"
#include "vpp/grid.hpp"
#include "vpp/mpc_types.hpp"
#include "vpp/quantiles.hpp"
#include "vpp/renewables.hpp"

namespace vpp::io {

struct SimParams {
    int horizon_hours = 24;
    int lookback_days = 10;
    double tau_h = 1.0;
    double comfort_weight = 100.0;       // w_T
    double slack_weight_factor = 1e4;    // band slack penalty = factor * w_T
    double latitude_deg = 59.91;
    double longitude_deg = 10.75;
    forecast::WeightScheme weight_scheme = forecast::WeightScheme::triangular;

    void validate() const;
};

struct RunParams {
    std::vector<mpc::ControllerKind> controllers = {
        mpc::ControllerKind::perfect_forecast,
        mpc::ControllerKind::point_forecast,
        mpc::ControllerKind::dist_robust};
    std::vector<double> epsilons = {0.25, 0.5, 1.0, 2.0};
    mpc::UncertaintyRegime regime = mpc::UncertaintyRegime::full;
    int days = 7;
    std::uint64_t seed = 42;
    std::string profile = "spring";

    void validate() const;
};

// Full experiment parameterization. Defaults reproduce the reference plant:
// 25 buildings, 15 batteries, 5 PV units, 7 turbines at the Oslo site.
struct ExperimentConfig {
    core::BuildingParams building;
    core::BatteryParams battery;  // one unit; SoC bounds derived from fractions
    double soc_min_frac = 0.2;
    double soc_max_frac = 0.9;
    core::PvParams pv;
    core::WindParams wind;
    core::PriceParams price;
    core::FleetConfig fleet;
    SimParams sim;
    RunParams run;

    // Battery bank aggregated across the fleet.
    core::BatteryParams battery_fleet() const;

    void validate() const;  // throws ValidationError naming the key
};

ExperimentConfig default_config();

// Defaults overlaid with `key = value` lines from the file. Unknown keys and
// out-of-range values are rejected with the offending key named.
ExperimentConfig load_config(const std::string& path);

// Apply one override; exposed for CLI flag handling.
void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                        const std::string& value);

// Resolved parameter listing, one `key = value` per line.
std::string config_to_text(const ExperimentConfig& cfg);
std::string config_to_json(const ExperimentConfig& cfg);

}  // namespace vpp::io
