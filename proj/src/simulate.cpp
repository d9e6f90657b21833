#include "vpp/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "vpp/battery.hpp"
#include "vpp/errors.hpp"
#include "vpp/grid.hpp"
#include "vpp/renewables.hpp"
#include "vpp/solar.hpp"
#include "vpp/time.hpp"

namespace vpp::mpc {

namespace {
constexpr std::int64_t kHour = 3600;

const std::vector<double>& series_of(const io::Scenario& sc,
                                     forecast::Variable v) {
    switch (v) {
        case forecast::Variable::price: return sc.price_eur_kwh;
        case forecast::Variable::temperature: return sc.t0_c;
        case forecast::Variable::irradiance: return sc.ghi_wm2;
        case forecast::Variable::wind: return sc.wind_ms;
    }
    throw ValidationError("unknown variable");
}

}  // namespace

qp::SolverSettings SimOptions::mpc_solver_defaults() {
    qp::SolverSettings s;
    s.tol_primal = 1e-6;
    s.tol_dual = 1e-6;
    s.max_iter = 400000;
    s.polish = true;
    return s;
}

MpcController::MpcController(const io::ExperimentConfig& cfg,
                             const ControllerMode& mode,
                             const io::Scenario& scenario,
                             const SimOptions& opts)
    : cfg_(cfg),
      mode_(mode),
      scenario_(scenario),
      opts_(opts),
      solver_(opts.solver) {
    mode_.validate();
    cfg_.validate();
    plant_ = core::make_state_space(cfg_.building, cfg_.sim.tau_h);
    battery_ = cfg_.battery_fleet();

    const forecast::QuantileGrid grid = forecast::QuantileGrid::deciles();
    learned_ = opts_.forecaster;
    if (!learned_) {
        learned_ = std::make_shared<forecast::PersistenceForecaster>(
            grid, cfg_.sim.lookback_days,
            forecast::ClearSkyModel{scenario_.lat_deg, scenario_.lon_deg});
    }
    perfect_ = std::make_shared<forecast::PerfectForecaster>(
        grid, [&sc = scenario_](forecast::Variable v, std::int64_t t) {
            const std::int64_t i = (t - sc.start_time) / kHour;
            if (i < 0 || i >= static_cast<std::int64_t>(sc.size())) {
                throw ValidationError("scenario is missing " +
                                      format_iso8601_utc(t));
            }
            return series_of(sc, v)[static_cast<std::size_t>(i)];
        });

    state_.building = {20.0, 20.0, 20.0};
    state_.soc_kwh = 0.5 * (battery_.soc_min_kwh + battery_.soc_max_kwh);
    state_.hvac_prev_kw = 0.0;
}

void MpcController::reset(const VppState& s) {
    state_ = s;
    have_prev_ = false;
}

HorizonData MpcController::build_horizon(int t) const {
    const int h = cfg_.sim.horizon_hours;
    if (t + h > static_cast<int>(scenario_.size())) {
        throw ValidationError(
            "scenario is missing " +
            format_iso8601_utc(scenario_.time_at(scenario_.size())) +
            " needed by the horizon at " +
            format_iso8601_utc(scenario_.time_at(static_cast<std::size_t>(t))));
    }

    const bool perfect_all = mode_.kind == ControllerKind::perfect_forecast;
    const bool perfect_weather =
        perfect_all || mode_.regime == UncertaintyRegime::price_only;

    const auto& price_fc = perfect_all ? perfect_ : learned_;
    const auto& weather_fc = perfect_weather ? perfect_ : learned_;

    const std::int64_t issue = scenario_.time_at(static_cast<std::size_t>(t - 1));
    auto history = [&](forecast::Variable v) {
        const auto& full = series_of(scenario_, v);
        return std::span<const double>(full.data(), static_cast<std::size_t>(t));
    };

    using forecast::Variable;
    const auto fc_price = price_fc->forecast(Variable::price,
                                             history(Variable::price), issue, h);
    const auto fc_temp = weather_fc->forecast(
        Variable::temperature, history(Variable::temperature), issue, h);
    const auto fc_ghi = weather_fc->forecast(
        Variable::irradiance, history(Variable::irradiance), issue, h);
    const auto fc_wind = weather_fc->forecast(Variable::wind,
                                              history(Variable::wind), issue, h);

    const auto scheme = cfg_.sim.weight_scheme;
    HorizonData hd;
    hd.tau_h = cfg_.sim.tau_h;
    hd.steps.reserve(static_cast<std::size_t>(h));
    for (int k = 0; k < h; ++k) {
        const std::int64_t when = scenario_.time_at(static_cast<std::size_t>(t + k));
        HorizonStep st;

        // Spot prices below zero are outside the plant's market model; clamp
        // stray negative forecast quantiles.
        Eigen::VectorXd prow = fc_price.row(k).cwiseMax(0.0);
        std::vector<double> support(prow.data(), prow.data() + prow.size());
        st.price = forecast::EmpiricalDistribution(
            support, forecast::quantile_weights(scheme, support.size()));
        st.price_point = st.price.mean();

        st.t0_c = fc_temp.point(k, scheme);
        st.ghi_wm2 = std::max(0.0, fc_ghi.point(k, scheme));
        st.wind_ms = std::max(0.0, fc_wind.point(k, scheme));

        const auto sun =
            core::solar_position(when, scenario_.lat_deg, scenario_.lon_deg);
        st.qsol_kw = core::solar_gains_kw(
            st.ghi_wm2, sun.elevation_deg, sun.azimuth_deg,
            cfg_.building.window_azimuth_deg, cfg_.building.window_area_m2);
        st.p_ren_kw =
            cfg_.fleet.n_pv * core::pv_power_kw(cfg_.pv, st.ghi_wm2, st.t0_c) +
            cfg_.fleet.n_wind * core::wind_power_kw(cfg_.wind, st.wind_ms);
        st.q_ihg_kw = core::internal_gains_kw(hour_of_day(when));
        st.tz_set_c = cfg_.building.setpoint_at_hour(hour_of_day(when));
        hd.steps.push_back(std::move(st));
    }
    return hd;
}

StepRecord MpcController::step(int t) {
    if (t < 1) throw ValidationError("step index must leave observed history");
    const auto hd = build_horizon(t);
    const auto mp = assemble(state_, hd, mode_, cfg_);

    solver_.setup(mp.qp);
    if (have_prev_) {
        solver_.warm_start(shift_primal(mp.layout, prev_x_),
                           shift_dual(mp.layout, prev_y_));
    }
    auto sol = solver_.solve();
    if (sol.status != qp::SolveStatus::solved) {
        throw SolverError("mpc solve failed at " +
                          format_iso8601_utc(scenario_.time_at(static_cast<std::size_t>(t))) +
                          ": " + qp::to_string(sol.status) + " after " +
                          std::to_string(sol.iterations) +
                          " iterations (primal " +
                          std::to_string(sol.primal_residual) + ", dual " +
                          std::to_string(sol.dual_residual) + ")");
    }
    prev_x_ = sol.x;
    prev_y_ = sol.y;
    have_prev_ = true;

    const MpcLayout& L = mp.layout;
    const double tau = hd.tau_h;

    // The optimizer's first input, cleaned up to exact actuator limits: the
    // solver is only accurate to its tolerances, while the plant model and
    // the closed-loop audits are exact.
    double net = std::clamp(sol.x[L.qh(0)], 0.0, cfg_.building.hvac_max_kw) -
                 std::clamp(sol.x[L.qc(0)], 0.0, cfg_.building.hvac_max_kw);
    net = std::clamp(net, state_.hvac_prev_kw - cfg_.building.ramp_down_kw * tau,
                     state_.hvac_prev_kw + cfg_.building.ramp_up_kw * tau);
    net = std::clamp(net, -cfg_.building.hvac_max_kw, cfg_.building.hvac_max_kw);

    double pch = std::clamp(sol.x[L.pch(0)], 0.0, battery_.p_charge_max_kw);
    double pdis = std::clamp(sol.x[L.pdis(0)], 0.0, battery_.p_discharge_max_kw);
    if (battery_.eta_charge > 0) {
        pch = std::min(pch, std::max(0.0, (battery_.soc_max_kwh - state_.soc_kwh) /
                                              (battery_.eta_charge * tau)));
    }
    pdis = std::min(pdis, std::max(0.0, (state_.soc_kwh - battery_.soc_min_kwh) *
                                            battery_.eta_discharge / tau));

    ControlInput applied;
    applied.q_heat_kw = std::max(net, 0.0);
    applied.q_cool_kw = std::max(-net, 0.0);
    applied.p_ch_kw = pch;
    applied.p_dis_kw = pdis;

    // Realized exogenous signals drive the plant; grid exchange is the
    // recourse that closes the power balance.
    const std::size_t ti = static_cast<std::size_t>(t);
    const double t0 = scenario_.t0_c[ti];
    const double ghi = scenario_.ghi_wm2[ti];
    const double wind = scenario_.wind_ms[ti];
    const double price = scenario_.price_eur_kwh[ti];
    const std::int64_t when = scenario_.time_at(ti);

    const double p_ren =
        cfg_.fleet.n_pv * core::pv_power_kw(cfg_.pv, ghi, t0) +
        cfg_.fleet.n_wind * core::wind_power_kw(cfg_.wind, wind);
    const double p_load =
        cfg_.fleet.n_buildings * std::abs(net) / cfg_.building.cop;
    const double p_bat = pch - pdis;
    const double p_grid = core::grid_exchange_kw(p_ren, p_load, p_bat);
    applied.p_exp_kw = std::max(p_grid, 0.0);
    applied.p_imp_kw = std::max(-p_grid, 0.0);

    const auto sun = core::solar_position(when, scenario_.lat_deg, scenario_.lon_deg);
    const double qsol = core::solar_gains_kw(
        ghi, sun.elevation_deg, sun.azimuth_deg,
        cfg_.building.window_azimuth_deg, cfg_.building.window_area_m2);
    const double qihg = core::internal_gains_kw(hour_of_day(when));

    StepRecord rec;
    rec.time = when;
    rec.applied = applied;
    rec.t0_c = t0;
    rec.ghi_wm2 = ghi;
    rec.wind_ms = wind;
    rec.price_eur_kwh = price;
    rec.p_ren_kw = p_ren;
    rec.p_load_kw = p_load;
    rec.p_grid_kw = p_grid;
    rec.balance_residual_kw =
        std::abs(p_ren - p_load - p_bat - (applied.p_exp_kw - applied.p_imp_kw));

    state_.building = core::building_step(state_.building, {t0, qsol, qihg, net},
                                          plant_);
    double soc_next = core::battery_step(state_.soc_kwh, pch, pdis, battery_, tau);
    // Guard fp dust on an exactly-binding cap.
    soc_next = std::clamp(soc_next, battery_.soc_min_kwh, battery_.soc_max_kwh);
    state_.soc_kwh = soc_next;
    state_.hvac_prev_kw = net;
    state_.time = when + kHour;

    rec.building_after = state_.building;
    rec.soc_after_kwh = state_.soc_kwh;

    const auto tariff = core::effective_prices(price, cfg_.price);
    rec.revenue_eur = tau * (tariff.sell_eur_per_kwh * applied.p_exp_kw -
                             tariff.buy_eur_per_kwh * applied.p_imp_kw);
    rec.price_exposure_kwh =
        tau * ((1.0 + cfg_.price.import_markup) * applied.p_imp_kw -
               cfg_.price.export_factor * applied.p_exp_kw);
    rec.degradation_cost_eur =
        battery_.deg_cost_eur_per_kwh * (pch + pdis) * tau;

    const double tz = state_.building.tz_c;
    const double dev = tz - hd.steps[0].tz_set_c;
    rec.comfort_cost_eur =
        cfg_.sim.comfort_weight * cfg_.fleet.n_buildings * dev * dev;
    rec.comfort_slack_c = std::max(0.0, cfg_.building.tz_min_c - tz) +
                          std::max(0.0, tz - cfg_.building.tz_max_c);

    rec.solver_iterations = sol.iterations;
    rec.solver_polished = sol.polished;
    rec.solver_primal_residual = sol.primal_residual;
    rec.solver_dual_residual = sol.dual_residual;
    rec.plan_objective_eur = sol.objective + mp.objective_offset;
    return rec;
}

TrajectoryLog simulate(const io::Scenario& scenario,
                       const io::ExperimentConfig& cfg,
                       const ControllerMode& mode, SimOptions opts) {
    scenario.validate();
    const int warmup = 24 * (cfg.sim.lookback_days + 1);
    const int start = opts.start_index >= 0 ? opts.start_index : warmup;
    if (start < 1) throw ValidationError("start index must be >= 1");

    const int avail = static_cast<int>(scenario.size()) - start -
                      cfg.sim.horizon_hours + 1;
    const int steps = opts.steps >= 0 ? opts.steps : avail;
    if (steps < 1) {
        throw ValidationError("scenario too short: no controllable steps before " +
                              format_iso8601_utc(scenario.time_at(scenario.size())));
    }
    if (steps > avail) {
        throw ValidationError(
            "scenario is missing " +
            format_iso8601_utc(scenario.time_at(scenario.size())) +
            " needed for " + std::to_string(steps) + " steps");
    }
    const bool needs_history = mode.kind != ControllerKind::perfect_forecast &&
                               !opts.forecaster;
    if (needs_history && start < warmup) {
        throw ValidationError("start index " + std::to_string(start) +
                              " leaves less than the " +
                              std::to_string(cfg.sim.lookback_days) +
                              "-day forecaster lookback");
    }

    MpcController controller(cfg, mode, scenario, opts);
    VppState init = controller.state();
    init.time = scenario.time_at(static_cast<std::size_t>(start));
    controller.reset(init);

    TrajectoryLog log;
    log.mode = mode;
    log.steps.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        StepRecord rec = controller.step(start + i);
        if (rec.balance_residual_kw > 1e-9) {
            throw Error("power balance residual " +
                        std::to_string(rec.balance_residual_kw) + " at " +
                        format_iso8601_utc(rec.time));
        }
        log.steps.push_back(std::move(rec));
    }
    return log;
}

}  // namespace vpp::mpc
