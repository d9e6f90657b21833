#include "vpp/building.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include "vpp/errors.hpp"

namespace vpp::core {

double BuildingParams::setpoint_at_hour(int hour_of_day) const {
    if (tz_set_c.empty()) throw ValidationError("empty setpoint schedule");
    if (tz_set_c.size() == 1) return tz_set_c[0];
    return tz_set_c[static_cast<std::size_t>(hour_of_day) % tz_set_c.size()];
}

void BuildingParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) {
            throw ValidationError(std::string("building.") + name +
                                  " must be > 0");
        }
    };
    positive(c1_kwh_per_c, "c1");
    positive(c2_kwh_per_c, "c2");
    positive(cz_kwh_per_c, "cz");
    positive(r_c_per_kw, "r");
    positive(ha_kw_per_c, "ha");
    positive(cop, "cop");
    if (hvac_max_kw < 0) throw ValidationError("building.q_max must be >= 0");
    if (ramp_up_kw < 0 || ramp_down_kw < 0) {
        throw ValidationError("building.ramp limits must be >= 0");
    }
    if (!(tz_min_c < tz_max_c)) {
        throw ValidationError("building.tz_min must be < building.tz_max");
    }
    if (tz_set_c.empty() ||
        (tz_set_c.size() != 1 && tz_set_c.size() != 24)) {
        throw ValidationError("building.tz_set must have 1 or 24 entries");
    }
}

void building_continuous_matrices(const BuildingParams& p, Eigen::Matrix3d& ac,
                                  Eigen::Matrix<double, 3, 4>& bc,
                                  Eigen::RowVector3d& output) {
    if (!(p.c1_kwh_per_c > 0) || !(p.c2_kwh_per_c > 0) ||
        !(p.cz_kwh_per_c > 0)) {
        throw ValidationError("thermal capacitances must be > 0");
    }
    if (!(p.r_c_per_kw > 0)) {
        throw ValidationError("wall resistance must be > 0");
    }
    if (p.ha_kw_per_c < 0) {
        throw ValidationError("heat transfer coefficient must be >= 0");
    }
    const double c1 = p.c1_kwh_per_c, c2 = p.c2_kwh_per_c, cz = p.cz_kwh_per_c;
    const double rinv = 1.0 / p.r_c_per_kw;
    const double ha = p.ha_kw_per_c;

    ac.setZero();
    ac(0, 0) = -(ha + rinv) / c1;
    ac(0, 1) = rinv / c1;
    ac(1, 0) = rinv / c2;
    ac(1, 1) = -(ha + rinv) / c2;
    ac(1, 2) = ha / c2;
    ac(2, 1) = ha / cz;
    ac(2, 2) = -ha / cz;

    bc.setZero();
    bc(0, 0) = ha / c1;   // outdoor temperature
    bc(0, 1) = 1.0 / c1;  // solar gains hit the outer wall
    bc(2, 2) = 1.0 / cz;  // internal gains
    bc(2, 3) = 1.0 / cz;  // HVAC heat flow

    output << 0.0, 0.0, 1.0;
}

void zoh_discretize(const Eigen::MatrixXd& ac, const Eigen::MatrixXd& bc,
                    double tau_h, Eigen::MatrixXd& ad, Eigen::MatrixXd& bd) {
    if (!(tau_h > 0)) throw ValidationError("sampling period must be > 0");
    if (ac.rows() != ac.cols() || bc.rows() != ac.rows()) {
        throw ValidationError("zoh_discretize: inconsistent dimensions");
    }
    const Eigen::Index n = ac.rows();
    const Eigen::Index m = bc.cols();
    Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(n + m, n + m);
    aug.topLeftCorner(n, n) = ac * tau_h;
    aug.topRightCorner(n, m) = bc * tau_h;
    const Eigen::MatrixXd e = aug.exp();
    ad = e.topLeftCorner(n, n);
    bd = e.topRightCorner(n, m);
    if (!ad.allFinite() || !bd.allFinite()) {
        throw Error("zoh_discretize: non-finite result");
    }
}

StateSpace make_state_space(const BuildingParams& p, double tau_h) {
    StateSpace ss;
    building_continuous_matrices(p, ss.ac, ss.bc, ss.output);
    Eigen::MatrixXd ad, bd;
    zoh_discretize(ss.ac, ss.bc, tau_h, ad, bd);
    ss.ad = ad;
    ss.bd = bd;
    ss.tau_h = tau_h;
    return ss;
}

BuildingState building_step(const BuildingState& s,
                            const std::array<double, 4>& u,
                            const StateSpace& ss) {
    const Eigen::Vector4d uv(u[0], u[1], u[2], u[3]);
    return BuildingState::from_vec(ss.ad * s.vec() + ss.bd * uv);
}

}  // namespace vpp::core
