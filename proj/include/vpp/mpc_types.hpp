#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vpp/building.hpp"
#include "vpp/quantiles.hpp"

namespace vpp::mpc {

enum class ControllerKind {
    perfect_forecast,  // knows all future signals
    point_forecast,    // plans on point forecasts, no robustness
    dist_robust        // point forecasts plus a Wasserstein price term
};

enum class UncertaintyRegime {
    full,       // controller sees forecasts of weather and price
    price_only  // controller sees true weather, forecast price
};

ControllerKind controller_kind_from_string(const std::string& s);
UncertaintyRegime regime_from_string(const std::string& s);
const char* to_string(ControllerKind k);
const char* to_string(UncertaintyRegime r);

struct ControllerMode {
    ControllerKind kind = ControllerKind::point_forecast;
    double epsilon = 0.0;  // ambiguity radius, meaningful for dist_robust only
    UncertaintyRegime regime = UncertaintyRegime::full;

    void validate() const;
    std::string label() const;  // "pf", "fc", "dr(eps=0.5)"
};

// Plant state between closed-loop steps. Buildings in the fleet are identical
// and start identical, so one representative building carries them all.
struct VppState {
    core::BuildingState building;
    double soc_kwh = 0.0;
    double hvac_prev_kw = 0.0;  // previously applied net thermal power
    std::int64_t time = 0;      // start of the hour about to be decided
};

// Everything the optimizer needs about one future hour, after the
// forecast/truth split implied by the controller mode has been applied.
struct HorizonStep {
    forecast::EmpiricalDistribution price{{0.0}, {1.0}};
    double price_point = 0.0;  // expectation of `price`
    double t0_c = 0.0;
    double ghi_wm2 = 0.0;
    double wind_ms = 0.0;
    double qsol_kw = 0.0;    // window gains, per building
    double p_ren_kw = 0.0;   // fleet PV + wind
    double q_ihg_kw = 0.0;   // internal gains, per building
    double tz_set_c = 20.0;
};

struct HorizonData {
    std::vector<HorizonStep> steps;
    double tau_h = 1.0;
};

struct ControlInput {
    double q_heat_kw = 0.0;
    double q_cool_kw = 0.0;
    double p_ch_kw = 0.0;
    double p_dis_kw = 0.0;
    double p_imp_kw = 0.0;
    double p_exp_kw = 0.0;

    double q_hvac_kw() const { return q_heat_kw - q_cool_kw; }
};

// One closed-loop step: what was applied, what the plant did, what it earned.
struct StepRecord {
    std::int64_t time = 0;
    ControlInput applied;
    core::BuildingState building_after;
    double soc_after_kwh = 0.0;
    double t0_c = 0.0;  // realized exogenous signals
    double ghi_wm2 = 0.0;
    double wind_ms = 0.0;
    double price_eur_kwh = 0.0;
    double p_ren_kw = 0.0;
    double p_load_kw = 0.0;
    double p_grid_kw = 0.0;  // positive = export
    double balance_residual_kw = 0.0;
    double revenue_eur = 0.0;       // realized market revenue of this hour
    double comfort_cost_eur = 0.0;  // fleet-weighted setpoint deviation
    double degradation_cost_eur = 0.0;
    double comfort_slack_c = 0.0;  // realized band violation, degrees
    double price_exposure_kwh = 0.0;  // tau-scaled net import exposure a_k
    int solver_iterations = 0;
    bool solver_polished = false;
    double solver_primal_residual = 0.0;
    double solver_dual_residual = 0.0;
    double plan_objective_eur = 0.0;  // optimal cost of the horizon problem
};

struct TrajectoryLog {
    ControllerMode mode;
    std::vector<StepRecord> steps;
};

// Total realized market revenue; comfort and degradation are reported
// separately, not netted into this.
double realized_revenue(const TrajectoryLog& log);
double total_comfort_cost(const TrajectoryLog& log);
double total_degradation_cost(const TrajectoryLog& log);

}  // namespace vpp::mpc
