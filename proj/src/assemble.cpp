#include "vpp/assemble.hpp"

#include <cmath>
#include <string>

#include "vpp/errors.hpp"

namespace vpp::mpc {

void ControllerMode::validate() const {
    if (kind == ControllerKind::dist_robust) {
        if (!(epsilon >= 0)) {
            throw ValidationError("ambiguity radius must be >= 0");
        }
    } else if (epsilon != 0.0) {
        throw ValidationError("epsilon is only meaningful for the dr controller");
    }
}

std::string ControllerMode::label() const {
    switch (kind) {
        case ControllerKind::perfect_forecast: return "pf";
        case ControllerKind::point_forecast: return "fc";
        case ControllerKind::dist_robust: {
            char buf[48];
            std::snprintf(buf, sizeof(buf), "dr(eps=%g)", epsilon);
            return buf;
        }
    }
    return "?";
}

ControllerKind controller_kind_from_string(const std::string& s) {
    if (s == "pf") return ControllerKind::perfect_forecast;
    if (s == "fc") return ControllerKind::point_forecast;
    if (s == "dr") return ControllerKind::dist_robust;
    throw ValidationError("unknown controller '" + s + "' (expected pf|fc|dr)");
}

UncertaintyRegime regime_from_string(const std::string& s) {
    if (s == "full") return UncertaintyRegime::full;
    if (s == "price-only" || s == "price_only") {
        return UncertaintyRegime::price_only;
    }
    throw ValidationError("unknown regime '" + s + "' (expected full|price-only)");
}

const char* to_string(ControllerKind k) {
    switch (k) {
        case ControllerKind::perfect_forecast: return "pf";
        case ControllerKind::point_forecast: return "fc";
        case ControllerKind::dist_robust: return "dr";
    }
    return "?";
}

const char* to_string(UncertaintyRegime r) {
    return r == UncertaintyRegime::full ? "full" : "price-only";
}

double realized_revenue(const TrajectoryLog& log) {
    double total = 0.0;
    for (const auto& s : log.steps) total += s.revenue_eur;
    return total;
}

double total_comfort_cost(const TrajectoryLog& log) {
    double total = 0.0;
    for (const auto& s : log.steps) total += s.comfort_cost_eur;
    return total;
}

double total_degradation_cost(const TrajectoryLog& log) {
    double total = 0.0;
    for (const auto& s : log.steps) total += s.degradation_cost_eur;
    return total;
}

MpcProblem assemble(const VppState& state, const HorizonData& horizon,
                    const ControllerMode& mode,
                    const io::ExperimentConfig& cfg) {
    mode.validate();
    const int h = static_cast<int>(horizon.steps.size());
    if (h < 1) throw ValidationError("empty horizon");
    const double tau = horizon.tau_h;
    if (!(tau > 0)) throw ValidationError("tau must be > 0");

    MpcProblem mp;
    mp.layout.horizon = h;
    mp.layout.epigraph =
        mode.kind == ControllerKind::dist_robust && mode.epsilon > 0.0;
    const MpcLayout& L = mp.layout;

    const auto ss = core::make_state_space(cfg.building, tau);
    const auto bat = cfg.battery_fleet();
    const double n_build = cfg.fleet.n_buildings;
    const double w_comfort = cfg.sim.comfort_weight * n_build;
    const double w_slack = cfg.sim.slack_weight_factor * cfg.sim.comfort_weight;
    const double load_per_q = n_build / cfg.building.cop;
    const double buy_scale = 1.0 + cfg.price.import_markup;
    const double sell_scale = cfg.price.export_factor;

    const int n = L.num_vars();
    const int m = L.num_constraints();
    qp::QpProblem& qp = mp.qp;
    qp.p = Eigen::MatrixXd::Zero(n, n);
    qp.q = Eigen::VectorXd::Zero(n);
    qp.a = Eigen::MatrixXd::Zero(m, n);
    qp.lower = Eigen::VectorXd::Constant(m, -qp::kInf);
    qp.upper = Eigen::VectorXd::Constant(m, qp::kInf);

    const Eigen::Vector3d x0 = state.building.vec();

    for (int k = 0; k < h; ++k) {
        const HorizonStep& st = horizon.steps[static_cast<std::size_t>(k)];

        // Thermal dynamics x_{k+1} = Ad x_k + Bd u_k, exogenous inputs on the
        // right-hand side.
        for (int j = 0; j < 3; ++j) {
            const int r = L.row_dyn(k, j);
            qp.a(r, L.t1(k + 1) + j) = 1.0;
            qp.a(r, L.qh(k)) = -ss.bd(j, 3);
            qp.a(r, L.qc(k)) = ss.bd(j, 3);
            double rhs = ss.bd(j, 0) * st.t0_c + ss.bd(j, 1) * st.qsol_kw +
                         ss.bd(j, 2) * st.q_ihg_kw;
            if (k == 0) {
                rhs += ss.ad.row(j).dot(x0);
            } else {
                for (int jj = 0; jj < 3; ++jj) {
                    qp.a(r, L.t1(k) + jj) = -ss.ad(j, jj);
                }
            }
            qp.lower[r] = qp.upper[r] = rhs;
        }

        // Battery SoC dynamics.
        {
            const int r = L.row_soc(k);
            qp.a(r, L.soc(k + 1)) = 1.0;
            qp.a(r, L.pch(k)) = -tau * bat.eta_charge;
            qp.a(r, L.pdis(k)) = tau / bat.eta_discharge;
            if (k == 0) {
                qp.lower[r] = qp.upper[r] = state.soc_kwh;
            } else {
                qp.a(r, L.soc(k)) = -1.0;
                qp.lower[r] = qp.upper[r] = 0.0;
            }
        }

        // Plant-wide power balance: load + charge - discharge - import +
        // export = renewables.
        {
            const int r = L.row_balance(k);
            qp.a(r, L.qh(k)) = load_per_q;
            qp.a(r, L.qc(k)) = load_per_q;
            qp.a(r, L.pch(k)) = 1.0;
            qp.a(r, L.pdis(k)) = -1.0;
            qp.a(r, L.pimp(k)) = -1.0;
            qp.a(r, L.pexp(k)) = 1.0;
            qp.lower[r] = qp.upper[r] = st.p_ren_kw;
        }

        // HVAC ramp on the net thermal power, anchored on the last applied
        // value at k = 0.
        {
            const int r = L.row_ramp(k);
            qp.a(r, L.qh(k)) = 1.0;
            qp.a(r, L.qc(k)) = -1.0;
            double anchor = 0.0;
            if (k == 0) {
                anchor = state.hvac_prev_kw;
            } else {
                qp.a(r, L.qh(k - 1)) = -1.0;
                qp.a(r, L.qc(k - 1)) = 1.0;
            }
            qp.lower[r] = anchor - cfg.building.ramp_down_kw * tau;
            qp.upper[r] = anchor + cfg.building.ramp_up_kw * tau;
        }

        // Input boxes.
        auto box = [&](int var, int col, double lo, double hi) {
            const int r = L.row_input_box(var, k);
            qp.a(r, col) = 1.0;
            qp.lower[r] = lo;
            qp.upper[r] = hi;
        };
        box(0, L.qh(k), 0.0, cfg.building.hvac_max_kw);
        box(1, L.qc(k), 0.0, cfg.building.hvac_max_kw);
        box(2, L.pch(k), 0.0, bat.p_charge_max_kw);
        box(3, L.pdis(k), 0.0, bat.p_discharge_max_kw);
        box(4, L.pimp(k), 0.0, qp::kInf);
        box(5, L.pexp(k), 0.0, qp::kInf);
        box(6, L.slack_lo(k), 0.0, qp::kInf);
        box(7, L.slack_hi(k), 0.0, qp::kInf);

        // Objective: expected market cost, degradation, band slack penalty.
        qp.q[L.pimp(k)] += tau * buy_scale * st.price_point;
        qp.q[L.pexp(k)] -= tau * sell_scale * st.price_point;
        qp.q[L.pch(k)] += bat.deg_cost_eur_per_kwh * tau;
        qp.q[L.pdis(k)] += bat.deg_cost_eur_per_kwh * tau;
        qp.q[L.slack_lo(k)] += w_slack;
        qp.q[L.slack_hi(k)] += w_slack;

        if (L.epigraph) {
            // t_k bounds the absolute tau-scaled market exposure.
            const int rlo = L.row_epi_lo(k);
            qp.a(rlo, L.epi(k)) = 1.0;
            qp.a(rlo, L.pimp(k)) = -tau * buy_scale;
            qp.a(rlo, L.pexp(k)) = tau * sell_scale;
            qp.lower[rlo] = 0.0;

            const int rhi = L.row_epi_hi(k);
            qp.a(rhi, L.epi(k)) = 1.0;
            qp.a(rhi, L.pimp(k)) = tau * buy_scale;
            qp.a(rhi, L.pexp(k)) = -tau * sell_scale;
            qp.lower[rhi] = 0.0;

            qp.q[L.epi(k)] += mode.epsilon;
        }
    }

    // Comfort band (soft) and quadratic setpoint tracking on the zone
    // temperature of every decided hour.
    for (int k = 1; k <= h; ++k) {
        const HorizonStep& st = horizon.steps[static_cast<std::size_t>(k - 1)];
        const int rlo = L.row_comfort_lo(k);
        qp.a(rlo, L.tz(k)) = 1.0;
        qp.a(rlo, L.slack_lo(k - 1)) = 1.0;
        qp.lower[rlo] = cfg.building.tz_min_c;

        const int rhi = L.row_comfort_hi(k);
        qp.a(rhi, L.tz(k)) = 1.0;
        qp.a(rhi, L.slack_hi(k - 1)) = -1.0;
        qp.upper[rhi] = cfg.building.tz_max_c;

        const int rsoc = L.row_soc_box(k);
        qp.a(rsoc, L.soc(k)) = 1.0;
        qp.lower[rsoc] = bat.soc_min_kwh;
        qp.upper[rsoc] = bat.soc_max_kwh;

        qp.p(L.tz(k), L.tz(k)) = 2.0 * w_comfort;
        qp.q[L.tz(k)] -= 2.0 * w_comfort * st.tz_set_c;
        mp.objective_offset += w_comfort * st.tz_set_c * st.tz_set_c;
    }

    qp.var_names.resize(static_cast<std::size_t>(n));
    auto name = [&](int col, const char* base, int k) {
        qp.var_names[static_cast<std::size_t>(col)] =
            std::string(base) + "[" + std::to_string(k) + "]";
    };
    for (int k = 0; k < h; ++k) {
        name(L.qh(k), "q_heat", k);
        name(L.qc(k), "q_cool", k);
        name(L.pch(k), "p_ch", k);
        name(L.pdis(k), "p_dis", k);
        name(L.pimp(k), "p_imp", k);
        name(L.pexp(k), "p_exp", k);
        name(L.slack_lo(k), "slack_lo", k);
        name(L.slack_hi(k), "slack_hi", k);
        if (L.epigraph) name(L.epi(k), "t", k);
    }
    for (int k = 1; k <= h; ++k) {
        name(L.t1(k), "T1", k);
        name(L.t2(k), "T2", k);
        name(L.tz(k), "Tz", k);
        name(L.soc(k), "soc", k);
    }

    qp.validate();
    return mp;
}

Eigen::VectorXd shift_primal(const MpcLayout& layout, const Eigen::VectorXd& x) {
    const int h = layout.horizon;
    const int ni = layout.inputs_per_step();
    Eigen::VectorXd out = x;
    for (int k = 0; k + 1 < h; ++k) {
        out.segment(k * ni, ni) = x.segment((k + 1) * ni, ni);
    }
    for (int k = 1; k < h; ++k) {
        out.segment(layout.t1(k), 4) = x.segment(layout.t1(k + 1), 4);
    }
    return out;
}

Eigen::VectorXd shift_dual(const MpcLayout& layout, const Eigen::VectorXd& y) {
    const int h = layout.horizon;
    Eigen::VectorXd out = y;
    auto shift_block = [&](auto row_of, int k_first, int k_last) {
        for (int k = k_first; k < k_last; ++k) {
            out[row_of(k)] = y[row_of(k + 1)];
        }
    };
    for (int j = 0; j < 3; ++j) {
        shift_block([&](int k) { return layout.row_dyn(k, j); }, 0, h - 1);
    }
    shift_block([&](int k) { return layout.row_soc(k); }, 0, h - 1);
    shift_block([&](int k) { return layout.row_balance(k); }, 0, h - 1);
    shift_block([&](int k) { return layout.row_ramp(k); }, 0, h - 1);
    shift_block([&](int k) { return layout.row_comfort_lo(k); }, 1, h);
    shift_block([&](int k) { return layout.row_comfort_hi(k); }, 1, h);
    shift_block([&](int k) { return layout.row_soc_box(k); }, 1, h);
    for (int var = 0; var < 8; ++var) {
        shift_block([&](int k) { return layout.row_input_box(var, k); }, 0,
                    h - 1);
    }
    if (layout.epigraph) {
        shift_block([&](int k) { return layout.row_epi_lo(k); }, 0, h - 1);
        shift_block([&](int k) { return layout.row_epi_hi(k); }, 0, h - 1);
    }
    return out;
}

}  // namespace vpp::mpc
