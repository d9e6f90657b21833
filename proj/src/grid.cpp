#include "vpp/grid.hpp"

#include "vpp/errors.hpp"

namespace vpp::core {

void PriceParams::validate() const {
    if (!(import_markup > 0)) {
        throw ValidationError("grid.delta_s must be > 0");
    }
    if (!(export_factor > 0 && export_factor < 1)) {
        throw ValidationError("grid.beta_sell must be in (0, 1)");
    }
}

EffectivePrices effective_prices(double spot_eur_per_kwh,
                                 const PriceParams& p) {
    return {(1.0 + p.import_markup) * spot_eur_per_kwh,
            p.export_factor * spot_eur_per_kwh};
}

double grid_exchange_kw(double p_renewable_kw, double p_load_kw,
                        double p_battery_kw) {
    return p_renewable_kw - p_load_kw - p_battery_kw;
}

double internal_gains_kw(int hour_of_day) {
    if (hour_of_day < 0 || hour_of_day > 23) {
        throw ValidationError("hour_of_day must be in 0..23");
    }
    if (hour_of_day < 6) return 0.3;
    if (hour_of_day < 17) return 0.5;
    if (hour_of_day < 22) return 0.8;
    return 0.5;
}

void FleetConfig::validate() const {
    if (n_buildings < 0 || n_batteries < 0 || n_pv < 0 || n_wind < 0) {
        throw ValidationError("fleet counts must be >= 0");
    }
}

}  // namespace vpp::core
