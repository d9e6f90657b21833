#pragma once

#include <memory>

#include "vpp/assemble.hpp"
#include "vpp/config.hpp"
#include "vpp/forecaster.hpp"
#include "vpp/mpc_types.hpp"
#include "vpp/scenario.hpp"

namespace vpp::mpc {

struct SimOptions {
    // First scenario index to control; default leaves room for the
    // forecaster lookback. -1 means auto.
    int start_index = -1;
    // Closed-loop steps; -1 means run until the horizon no longer fits.
    int steps = -1;
    // Replaces the persistence forecaster (the "learned" side); the perfect
    // side used by pf and by the price-only regime is never replaced.
    std::shared_ptr<const forecast::Forecaster> forecaster;
    qp::SolverSettings solver = mpc_solver_defaults();

    static qp::SolverSettings mpc_solver_defaults();
};

// Receding-horizon controller over a fixed scenario. Stateful: keeps the
// plant state and the previous solution for warm starts.
class MpcController {
public:
    MpcController(const io::ExperimentConfig& cfg, const ControllerMode& mode,
                  const io::Scenario& scenario, const SimOptions& opts = {});

    const VppState& state() const { return state_; }
    void reset(const VppState& s);

    // Controller's view of hours t .. t+H-1 (forecasts or truth per mode).
    HorizonData build_horizon(int t) const;

    // Decide hour t, apply the first input to the true plant, advance.
    StepRecord step(int t);

private:
    const io::ExperimentConfig& cfg_;
    ControllerMode mode_;
    const io::Scenario& scenario_;
    SimOptions opts_;
    core::StateSpace plant_;
    core::BatteryParams battery_;
    VppState state_;
    std::shared_ptr<const forecast::Forecaster> learned_;
    std::shared_ptr<const forecast::Forecaster> perfect_;
    qp::QpSolver solver_;
    Eigen::VectorXd prev_x_, prev_y_;
    bool have_prev_ = false;
};

// Run the closed loop and log every step. The scenario must cover
// [start - lookback, start + steps + H); violations name the first missing
// timestamp.
TrajectoryLog simulate(const io::Scenario& scenario,
                       const io::ExperimentConfig& cfg,
                       const ControllerMode& mode, SimOptions opts = {});

}  // namespace vpp::mpc
