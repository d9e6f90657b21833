#include "vpp/results.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "vpp/errors.hpp"
#include "vpp/time.hpp"

namespace vpp::io {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

struct SummaryRow {
    std::string controller;
    std::string regime;
    std::string epsilon;
    double revenue;
    std::optional<double> delta_pct;
    double comfort;
    double degradation;
};

std::vector<SummaryRow> summarize(const std::vector<mpc::TrajectoryLog>& logs) {
    std::vector<SummaryRow> rows;
    for (const auto& log : logs) {
        SummaryRow r;
        r.controller = mpc::to_string(log.mode.kind);
        r.regime = mpc::to_string(log.mode.regime);
        r.epsilon = log.mode.kind == mpc::ControllerKind::dist_robust
                        ? fmt(log.mode.epsilon)
                        : "";
        r.revenue = mpc::realized_revenue(log);
        r.comfort = mpc::total_comfort_cost(log);
        r.degradation = mpc::total_degradation_cost(log);
        rows.push_back(std::move(r));
    }
    // Relative gap against the fc baseline of the same regime.
    for (auto& r : rows) {
        for (const auto& base : rows) {
            if (base.controller == "fc" && base.regime == r.regime &&
                base.revenue != 0.0) {
                r.delta_pct =
                    100.0 * (r.revenue - base.revenue) / std::abs(base.revenue);
            }
        }
    }
    return rows;
}

}  // namespace

void write_timeseries_csv(const mpc::TrajectoryLog& log,
                          const std::string& path) {
    if (log.steps.empty()) throw ValidationError("empty trajectory log");
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "timestamp,q_heat_kw,q_cool_kw,p_ch_kw,p_dis_kw,p_imp_kw,p_exp_kw,"
           "soc_kwh,t1_c,t2_c,tz_c,t0_c,ghi_wm2,wind_ms,price_eur_kwh,"
           "p_ren_kw,p_load_kw,p_grid_kw,revenue_eur,comfort_cost_eur,"
           "degradation_cost_eur,comfort_slack_c,price_exposure_kwh,"
           "balance_residual_kw,solver_iterations\n";
    for (const auto& s : log.steps) {
        out << format_iso8601_utc(s.time) << ',' << fmt(s.applied.q_heat_kw)
            << ',' << fmt(s.applied.q_cool_kw) << ',' << fmt(s.applied.p_ch_kw)
            << ',' << fmt(s.applied.p_dis_kw) << ',' << fmt(s.applied.p_imp_kw)
            << ',' << fmt(s.applied.p_exp_kw) << ',' << fmt(s.soc_after_kwh)
            << ',' << fmt(s.building_after.t1_c) << ','
            << fmt(s.building_after.t2_c) << ',' << fmt(s.building_after.tz_c)
            << ',' << fmt(s.t0_c) << ',' << fmt(s.ghi_wm2) << ','
            << fmt(s.wind_ms) << ',' << fmt(s.price_eur_kwh) << ','
            << fmt(s.p_ren_kw) << ',' << fmt(s.p_load_kw) << ','
            << fmt(s.p_grid_kw) << ',' << fmt(s.revenue_eur) << ','
            << fmt(s.comfort_cost_eur) << ',' << fmt(s.degradation_cost_eur)
            << ',' << fmt(s.comfort_slack_c) << ','
            << fmt(s.price_exposure_kwh) << ',' << fmt(s.balance_residual_kw)
            << ',' << s.solver_iterations << '\n';
    }
    if (!out.good()) throw IoError("failed writing " + path);
}

void write_summary_csv(const std::vector<mpc::TrajectoryLog>& logs,
                       const std::string& path) {
    if (logs.empty()) throw ValidationError("no runs to summarize");
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "controller,regime,epsilon,revenue_eur,delta_vs_fc_pct,"
           "comfort_cost_eur,degradation_cost_eur\n";
    for (const auto& r : summarize(logs)) {
        out << r.controller << ',' << r.regime << ',' << r.epsilon << ','
            << fmt(r.revenue) << ','
            << (r.delta_pct ? fmt(*r.delta_pct) : std::string()) << ','
            << fmt(r.comfort) << ',' << fmt(r.degradation) << '\n';
    }
    if (!out.good()) throw IoError("failed writing " + path);
}

std::string summary_table(const std::vector<mpc::TrajectoryLog>& logs) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof(line), "%-10s %-11s %-8s %14s %12s %14s %14s\n",
                  "controller", "regime", "eps", "revenue[EUR]", "dRev[%]",
                  "comfort[EUR]", "degr[EUR]");
    out << line;
    for (const auto& r : summarize(logs)) {
        std::snprintf(line, sizeof(line),
                      "%-10s %-11s %-8s %14.2f %12s %14.2f %14.2f\n",
                      r.controller.c_str(), r.regime.c_str(),
                      r.epsilon.empty() ? "-" : r.epsilon.c_str(), r.revenue,
                      r.delta_pct
                          ? (fmt(std::round(*r.delta_pct * 100) / 100)).c_str()
                          : "-",
                      r.comfort, r.degradation);
        out << line;
    }
    return out.str();
}

std::string run_slug(const mpc::ControllerMode& mode) {
    std::string s = mpc::to_string(mode.kind);
    if (mode.kind == mpc::ControllerKind::dist_robust) {
        s += "_eps" + fmt(mode.epsilon);
    }
    s += std::string("_") +
         (mode.regime == mpc::UncertaintyRegime::full ? "full" : "price-only");
    return s;
}

void write_results(const std::vector<mpc::TrajectoryLog>& logs,
                   const std::string& summary_path, const std::string& out_dir) {
    write_summary_csv(logs, summary_path);
    for (const auto& log : logs) {
        write_timeseries_csv(log,
                             out_dir + "/timeseries_" + run_slug(log.mode) +
                                 ".csv");
    }
}

}  // namespace vpp::io
