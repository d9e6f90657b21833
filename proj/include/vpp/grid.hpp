#pragma once

namespace vpp::core {

// Effective tariff around the spot price: imports pay a relative markup,
// exports earn a relative discount, so sell < spot < buy whenever spot > 0.
struct PriceParams {
    double import_markup = 0.05;   // delta_s
    double export_factor = 0.90;   // beta_sell

    void validate() const;
};

struct EffectivePrices {
    double buy_eur_per_kwh;
    double sell_eur_per_kwh;
};

EffectivePrices effective_prices(double spot_eur_per_kwh,
                                 const PriceParams& p);

// Net grid exchange in kW; positive means export to the grid.
double grid_exchange_kw(double p_renewable_kw, double p_load_kw,
                        double p_battery_kw);

// Deterministic occupancy-driven internal heat gains, 0.3-0.8 kW:
// night floor, daytime base, evening peak.
double internal_gains_kw(int hour_of_day);

// Counts of identical units aggregated into the plant.
struct FleetConfig {
    int n_buildings = 25;
    int n_batteries = 15;
    int n_pv = 5;
    int n_wind = 7;

    void validate() const;
};

}  // namespace vpp::core
