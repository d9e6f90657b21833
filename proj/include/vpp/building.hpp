#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace vpp::core {

// Lumped-parameter 3R2C thermal network of a single residential building.
// States are the outer-wall, inner-wall and zone air temperatures; inputs are
// outdoor temperature, window solar gains, internal gains and HVAC heat flow.
struct BuildingParams {
    double c1_kwh_per_c = 25.0;  // outer wall capacitance
    double c2_kwh_per_c = 80.0;  // inner wall capacitance
    double cz_kwh_per_c = 3.0;   // zone air capacitance
    double r_c_per_kw = 2.0;     // wall resistance
    double ha_kw_per_c = 2.0;    // surface heat transfer coefficient
    double window_area_m2 = 15.0;
    double window_azimuth_deg = 180.0;
    double cop = 3.0;
    double hvac_max_kw = 10.0;
    double ramp_up_kw = 2.0;
    double ramp_down_kw = 2.0;
    double tz_min_c = 15.0;
    double tz_max_c = 25.0;
    // Hour-of-day setpoint schedule; a single entry means a flat setpoint.
    std::vector<double> tz_set_c = {20.0};

    double setpoint_at_hour(int hour_of_day) const;
    void validate() const;  // throws ValidationError
};

struct BuildingState {
    double t1_c = 20.0;
    double t2_c = 20.0;
    double tz_c = 20.0;

    Eigen::Vector3d vec() const { return {t1_c, t2_c, tz_c}; }
    static BuildingState from_vec(const Eigen::Vector3d& v) {
        return {v[0], v[1], v[2]};
    }
};

// Continuous- and discrete-time state-space form of the thermal network.
// Input order: [T_outdoor, Q_solar*A (kW), Q_internal (kW), Q_hvac (kW)].
struct StateSpace {
    Eigen::Matrix3d ac;
    Eigen::Matrix<double, 3, 4> bc;
    Eigen::Matrix3d ad;
    Eigen::Matrix<double, 3, 4> bd;
    Eigen::RowVector3d output;  // selects the zone temperature
    double tau_h = 1.0;
};

// Continuous matrices of the thermal network. Requires positive capacitances
// and resistance; ha may be zero (fully decoupled envelope).
void building_continuous_matrices(const BuildingParams& p, Eigen::Matrix3d& ac,
                                  Eigen::Matrix<double, 3, 4>& bc,
                                  Eigen::RowVector3d& output);

// Exact zero-order-hold discretization via the augmented matrix exponential,
// so a singular dynamics matrix needs no special casing.
void zoh_discretize(const Eigen::MatrixXd& ac, const Eigen::MatrixXd& bc,
                    double tau_h, Eigen::MatrixXd& ad, Eigen::MatrixXd& bd);

StateSpace make_state_space(const BuildingParams& p, double tau_h);

// One discrete step x' = Ad x + Bd u.
BuildingState building_step(const BuildingState& s,
                            const std::array<double, 4>& u,
                            const StateSpace& ss);

}  // namespace vpp::core
