#pragma once

namespace vpp::core {

struct PvParams {
    double eta = 0.18;
    double area_m2 = 200.0;
    double gamma_t_per_c = 0.0045;  // output derating per degree above T_ref
    double k_t = 0.03;              // cell heating per W/m^2 of irradiance
    double t_ref_c = 25.0;

    void validate() const;
};

struct WindParams {
    double rho_air_kg_m3 = 1.225;
    double rotor_radius_m = 15.0;
    double eta = 0.45;

    void validate() const;
};

// PV output in kW. Cell temperature is ambient plus k_t * irradiance; output
// is clamped at zero if the thermal derating would drive it negative.
double pv_power_kw(const PvParams& p, double irradiance_wm2, double t_air_c);

// Raw cubic wind law in kW. No cut-in/cut-out or rated-power limiting.
double wind_power_kw(const WindParams& p, double wind_ms);

}  // namespace vpp::core
