#include "vpp/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "vpp/errors.hpp"

namespace vpp::io {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0') {
        throw ValidationError("config key " + key + ": bad number '" + v + "'");
    }
    return x;
}

long long parse_int(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0') {
        throw ValidationError("config key " + key + ": bad integer '" + v + "'");
    }
    return x;
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : v) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string& key,
                                  const std::string& value)>;

Setter num(double ExperimentConfig::* field) {
    return [field](ExperimentConfig& c, const std::string& k,
                   const std::string& v) { c.*field = parse_double(k, v); };
}

template <typename Sub>
Setter num(Sub ExperimentConfig::* sub, double Sub::* field) {
    return [sub, field](ExperimentConfig& c, const std::string& k,
                        const std::string& v) {
        c.*sub.*field = parse_double(k, v);
    };
}

template <typename Sub>
Setter integer(Sub ExperimentConfig::* sub, int Sub::* field) {
    return [sub, field](ExperimentConfig& c, const std::string& k,
                        const std::string& v) {
        c.*sub.*field = static_cast<int>(parse_int(k, v));
    };
}

const std::map<std::string, Setter>& setters() {
    using C = ExperimentConfig;
    static const std::map<std::string, Setter> table = {
        {"building.c1", num(&C::building, &core::BuildingParams::c1_kwh_per_c)},
        {"building.c2", num(&C::building, &core::BuildingParams::c2_kwh_per_c)},
        {"building.cz", num(&C::building, &core::BuildingParams::cz_kwh_per_c)},
        {"building.r", num(&C::building, &core::BuildingParams::r_c_per_kw)},
        {"building.ha", num(&C::building, &core::BuildingParams::ha_kw_per_c)},
        {"building.a_win",
         num(&C::building, &core::BuildingParams::window_area_m2)},
        {"building.alpha_win",
         num(&C::building, &core::BuildingParams::window_azimuth_deg)},
        {"building.cop", num(&C::building, &core::BuildingParams::cop)},
        {"building.q_max", num(&C::building, &core::BuildingParams::hvac_max_kw)},
        {"building.ramp_up",
         num(&C::building, &core::BuildingParams::ramp_up_kw)},
        {"building.ramp_down",
         num(&C::building, &core::BuildingParams::ramp_down_kw)},
        {"building.tz_min", num(&C::building, &core::BuildingParams::tz_min_c)},
        {"building.tz_max", num(&C::building, &core::BuildingParams::tz_max_c)},
        {"building.tz_set",
         [](C& c, const std::string& k, const std::string& v) {
             std::vector<double> sched;
             for (const auto& item : split_list(v)) {
                 sched.push_back(parse_double(k, item));
             }
             c.building.tz_set_c = std::move(sched);
         }},
        {"battery.eta_ch", num(&C::battery, &core::BatteryParams::eta_charge)},
        {"battery.eta_dis",
         num(&C::battery, &core::BatteryParams::eta_discharge)},
        {"battery.capacity",
         num(&C::battery, &core::BatteryParams::capacity_kwh)},
        {"battery.soc_min_frac", num(&C::soc_min_frac)},
        {"battery.soc_max_frac", num(&C::soc_max_frac)},
        {"battery.p_ch_max",
         num(&C::battery, &core::BatteryParams::p_charge_max_kw)},
        {"battery.p_dis_max",
         num(&C::battery, &core::BatteryParams::p_discharge_max_kw)},
        {"battery.c_deg",
         num(&C::battery, &core::BatteryParams::deg_cost_eur_per_kwh)},
        {"pv.eta", num(&C::pv, &core::PvParams::eta)},
        {"pv.area", num(&C::pv, &core::PvParams::area_m2)},
        {"pv.gamma_t", num(&C::pv, &core::PvParams::gamma_t_per_c)},
        {"pv.k_t", num(&C::pv, &core::PvParams::k_t)},
        {"pv.t_ref", num(&C::pv, &core::PvParams::t_ref_c)},
        {"wind.rho_air", num(&C::wind, &core::WindParams::rho_air_kg_m3)},
        {"wind.rotor_radius",
         num(&C::wind, &core::WindParams::rotor_radius_m)},
        {"wind.eta", num(&C::wind, &core::WindParams::eta)},
        {"grid.delta_s", num(&C::price, &core::PriceParams::import_markup)},
        {"grid.beta_sell", num(&C::price, &core::PriceParams::export_factor)},
        {"fleet.n_buildings",
         integer(&C::fleet, &core::FleetConfig::n_buildings)},
        {"fleet.n_batteries",
         integer(&C::fleet, &core::FleetConfig::n_batteries)},
        {"fleet.n_pv", integer(&C::fleet, &core::FleetConfig::n_pv)},
        {"fleet.n_wind", integer(&C::fleet, &core::FleetConfig::n_wind)},
        {"sim.horizon_hours", integer(&C::sim, &SimParams::horizon_hours)},
        {"sim.lookback_days", integer(&C::sim, &SimParams::lookback_days)},
        {"sim.tau_hours", num(&C::sim, &SimParams::tau_h)},
        {"sim.comfort_weight", num(&C::sim, &SimParams::comfort_weight)},
        {"sim.slack_weight_factor",
         num(&C::sim, &SimParams::slack_weight_factor)},
        {"sim.latitude", num(&C::sim, &SimParams::latitude_deg)},
        {"sim.longitude", num(&C::sim, &SimParams::longitude_deg)},
        {"sim.weight_scheme",
         [](C& c, const std::string& k, const std::string& v) {
             if (v == "uniform") {
                 c.sim.weight_scheme = forecast::WeightScheme::uniform;
             } else if (v == "triangular") {
                 c.sim.weight_scheme = forecast::WeightScheme::triangular;
             } else {
                 throw ValidationError("config key " + k +
                                       ": expected uniform|triangular");
             }
         }},
        {"run.controllers",
         [](C& c, const std::string&, const std::string& v) {
             c.run.controllers.clear();
             for (const auto& item : split_list(v)) {
                 c.run.controllers.push_back(
                     mpc::controller_kind_from_string(item));
             }
         }},
        {"run.epsilon",
         [](C& c, const std::string& k, const std::string& v) {
             c.run.epsilons.clear();
             for (const auto& item : split_list(v)) {
                 c.run.epsilons.push_back(parse_double(k, item));
             }
         }},
        {"run.regime",
         [](C& c, const std::string&, const std::string& v) {
             c.run.regime = mpc::regime_from_string(v);
         }},
        {"run.days",
         [](C& c, const std::string& k, const std::string& v) {
             c.run.days = static_cast<int>(parse_int(k, v));
         }},
        {"run.seed",
         [](C& c, const std::string& k, const std::string& v) {
             c.run.seed = static_cast<std::uint64_t>(parse_int(k, v));
         }},
        {"run.profile",
         [](C& c, const std::string&, const std::string& v) {
             c.run.profile = v;  // checked in validate()
         }},
    };
    return table;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace

void SimParams::validate() const {
    if (horizon_hours < 1 || horizon_hours > 24) {
        throw ValidationError("sim.horizon_hours must be in 1..24");
    }
    if (lookback_days < 1) {
        throw ValidationError("sim.lookback_days must be >= 1");
    }
    if (!(tau_h > 0)) throw ValidationError("sim.tau_hours must be > 0");
    if (comfort_weight < 0) {
        throw ValidationError("sim.comfort_weight must be >= 0");
    }
    if (slack_weight_factor < 0) {
        throw ValidationError("sim.slack_weight_factor must be >= 0");
    }
    if (latitude_deg < -90 || latitude_deg > 90) {
        throw ValidationError("sim.latitude must be in [-90, 90]");
    }
    if (longitude_deg < -180 || longitude_deg > 180) {
        throw ValidationError("sim.longitude must be in [-180, 180]");
    }
}

void RunParams::validate() const {
    if (controllers.empty()) {
        throw ValidationError("run.controllers must name at least one controller");
    }
    if (days < 1) throw ValidationError("run.days must be >= 1");
    for (double e : epsilons) {
        if (!(e >= 0)) throw ValidationError("run.epsilon values must be >= 0");
    }
    if (profile != "spring" && profile != "autumn") {
        throw ValidationError("run.profile must be spring|autumn");
    }
}

core::BatteryParams ExperimentConfig::battery_fleet() const {
    core::BatteryParams b = battery;
    b.soc_min_kwh = soc_min_frac * b.capacity_kwh;
    b.soc_max_kwh = soc_max_frac * b.capacity_kwh;
    return b.scaled(fleet.n_batteries);
}

void ExperimentConfig::validate() const {
    building.validate();
    if (!(soc_min_frac >= 0 && soc_min_frac < soc_max_frac &&
          soc_max_frac <= 1.0)) {
        throw ValidationError(
            "battery.soc_min_frac/soc_max_frac must satisfy 0 <= min < max <= 1");
    }
    core::BatteryParams unit = battery;
    unit.soc_min_kwh = soc_min_frac * unit.capacity_kwh;
    unit.soc_max_kwh = soc_max_frac * unit.capacity_kwh;
    unit.validate();
    pv.validate();
    wind.validate();
    price.validate();
    fleet.validate();
    sim.validate();
    run.validate();
}

ExperimentConfig default_config() { return ExperimentConfig{}; }

void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                        const std::string& value) {
    const auto& table = setters();
    const auto it = table.find(key);
    if (it == table.end()) {
        throw ValidationError("unknown config key '" + key + "'");
    }
    it->second(cfg, key, value);
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path);

    ExperimentConfig cfg = default_config();
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ValidationError(path + ":" + std::to_string(lineno) +
                                  ": expected 'key = value'");
        }
        apply_config_entry(cfg, trim(line.substr(0, eq)),
                           trim(line.substr(eq + 1)));
    }
    cfg.validate();
    return cfg;
}

std::string config_to_text(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "building.c1 = " << fmt(c.building.c1_kwh_per_c) << "\n";
    out << "building.c2 = " << fmt(c.building.c2_kwh_per_c) << "\n";
    out << "building.cz = " << fmt(c.building.cz_kwh_per_c) << "\n";
    out << "building.r = " << fmt(c.building.r_c_per_kw) << "\n";
    out << "building.ha = " << fmt(c.building.ha_kw_per_c) << "\n";
    out << "building.a_win = " << fmt(c.building.window_area_m2) << "\n";
    out << "building.alpha_win = " << fmt(c.building.window_azimuth_deg) << "\n";
    out << "building.cop = " << fmt(c.building.cop) << "\n";
    out << "building.q_max = " << fmt(c.building.hvac_max_kw) << "\n";
    out << "building.ramp_up = " << fmt(c.building.ramp_up_kw) << "\n";
    out << "building.ramp_down = " << fmt(c.building.ramp_down_kw) << "\n";
    out << "building.tz_min = " << fmt(c.building.tz_min_c) << "\n";
    out << "building.tz_max = " << fmt(c.building.tz_max_c) << "\n";
    out << "building.tz_set = ";
    for (std::size_t i = 0; i < c.building.tz_set_c.size(); ++i) {
        out << (i ? "," : "") << fmt(c.building.tz_set_c[i]);
    }
    out << "\n";
    out << "battery.eta_ch = " << fmt(c.battery.eta_charge) << "\n";
    out << "battery.eta_dis = " << fmt(c.battery.eta_discharge) << "\n";
    out << "battery.capacity = " << fmt(c.battery.capacity_kwh) << "\n";
    out << "battery.soc_min_frac = " << fmt(c.soc_min_frac) << "\n";
    out << "battery.soc_max_frac = " << fmt(c.soc_max_frac) << "\n";
    out << "battery.p_ch_max = " << fmt(c.battery.p_charge_max_kw) << "\n";
    out << "battery.p_dis_max = " << fmt(c.battery.p_discharge_max_kw) << "\n";
    out << "battery.c_deg = " << fmt(c.battery.deg_cost_eur_per_kwh) << "\n";
    out << "pv.eta = " << fmt(c.pv.eta) << "\n";
    out << "pv.area = " << fmt(c.pv.area_m2) << "\n";
    out << "pv.gamma_t = " << fmt(c.pv.gamma_t_per_c) << "\n";
    out << "pv.k_t = " << fmt(c.pv.k_t) << "\n";
    out << "pv.t_ref = " << fmt(c.pv.t_ref_c) << "\n";
    out << "wind.rho_air = " << fmt(c.wind.rho_air_kg_m3) << "\n";
    out << "wind.rotor_radius = " << fmt(c.wind.rotor_radius_m) << "\n";
    out << "wind.eta = " << fmt(c.wind.eta) << "\n";
    out << "grid.delta_s = " << fmt(c.price.import_markup) << "\n";
    out << "grid.beta_sell = " << fmt(c.price.export_factor) << "\n";
    out << "fleet.n_buildings = " << c.fleet.n_buildings << "\n";
    out << "fleet.n_batteries = " << c.fleet.n_batteries << "\n";
    out << "fleet.n_pv = " << c.fleet.n_pv << "\n";
    out << "fleet.n_wind = " << c.fleet.n_wind << "\n";
    out << "sim.horizon_hours = " << c.sim.horizon_hours << "\n";
    out << "sim.lookback_days = " << c.sim.lookback_days << "\n";
    out << "sim.tau_hours = " << fmt(c.sim.tau_h) << "\n";
    out << "sim.comfort_weight = " << fmt(c.sim.comfort_weight) << "\n";
    out << "sim.slack_weight_factor = " << fmt(c.sim.slack_weight_factor)
        << "\n";
    out << "sim.latitude = " << fmt(c.sim.latitude_deg) << "\n";
    out << "sim.longitude = " << fmt(c.sim.longitude_deg) << "\n";
    out << "sim.weight_scheme = "
        << (c.sim.weight_scheme == forecast::WeightScheme::uniform
                ? "uniform"
                : "triangular")
        << "\n";
    out << "run.controllers = ";
    for (std::size_t i = 0; i < c.run.controllers.size(); ++i) {
        out << (i ? "," : "") << mpc::to_string(c.run.controllers[i]);
    }
    out << "\n";
    out << "run.epsilon = ";
    for (std::size_t i = 0; i < c.run.epsilons.size(); ++i) {
        out << (i ? "," : "") << fmt(c.run.epsilons[i]);
    }
    out << "\n";
    out << "run.regime = " << mpc::to_string(c.run.regime) << "\n";
    out << "run.days = " << c.run.days << "\n";
    out << "run.seed = " << c.run.seed << "\n";
    out << "run.profile = " << c.run.profile << "\n";
    return out.str();
}

std::string config_to_json(const ExperimentConfig& c) {
    nlohmann::ordered_json j;
    std::istringstream lines(config_to_text(c));
    std::string line;
    while (std::getline(lines, line)) {
        const auto eq = line.find(" = ");
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 3);
        const auto dot = key.find('.');
        const std::string section = key.substr(0, dot);
        const std::string name = key.substr(dot + 1);
        // Numbers stay numbers; lists and words stay strings.
        char* end = nullptr;
        const double x = std::strtod(value.c_str(), &end);
        if (end != value.c_str() && *end == '\0') {
            j[section][name] = x;
        } else {
            j[section][name] = value;
        }
    }
    return j.dump(2) + "\n";
}

}  // namespace vpp::io
