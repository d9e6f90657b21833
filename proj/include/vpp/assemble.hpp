#pragma once

#include "vpp/config.hpp"
#include "vpp/mpc_types.hpp"
#include "vpp/qp_solver.hpp"

namespace vpp::mpc {

// Index map of the horizon QP. Per step the inputs are
//   [q_heat, q_cool, p_ch, p_dis, p_imp, p_exp, slack_lo, slack_hi (, t)]
// followed by the stacked states [T1, T2, Tz, SoC] for steps 1..H. The
// epigraph variable t (|price exposure| bound) exists only in robust mode
// with a positive radius.
struct MpcLayout {
    int horizon = 0;
    bool epigraph = false;

    int inputs_per_step() const { return epigraph ? 9 : 8; }
    int num_vars() const { return horizon * (inputs_per_step() + 4); }

    int qh(int k) const { return k * inputs_per_step() + 0; }
    int qc(int k) const { return k * inputs_per_step() + 1; }
    int pch(int k) const { return k * inputs_per_step() + 2; }
    int pdis(int k) const { return k * inputs_per_step() + 3; }
    int pimp(int k) const { return k * inputs_per_step() + 4; }
    int pexp(int k) const { return k * inputs_per_step() + 5; }
    int slack_lo(int k) const { return k * inputs_per_step() + 6; }
    int slack_hi(int k) const { return k * inputs_per_step() + 7; }
    int epi(int k) const { return k * inputs_per_step() + 8; }

    // States indexed 1..H (the end of each decided hour).
    int state_base() const { return horizon * inputs_per_step(); }
    int t1(int k) const { return state_base() + (k - 1) * 4 + 0; }
    int t2(int k) const { return state_base() + (k - 1) * 4 + 1; }
    int tz(int k) const { return state_base() + (k - 1) * 4 + 2; }
    int soc(int k) const { return state_base() + (k - 1) * 4 + 3; }

    // Constraint row blocks, each of length horizon (dynamics has 3 rows per
    // step). Order matters for warm-start shifting.
    int row_dyn(int k, int j) const { return 3 * k + j; }
    int row_soc(int k) const { return 3 * horizon + k; }
    int row_balance(int k) const { return 4 * horizon + k; }
    int row_comfort_lo(int k) const { return 5 * horizon + (k - 1); }
    int row_comfort_hi(int k) const { return 6 * horizon + (k - 1); }
    int row_ramp(int k) const { return 7 * horizon + k; }
    int row_soc_box(int k) const { return 8 * horizon + (k - 1); }
    int row_input_box(int var, int k) const { return (9 + var) * horizon + k; }
    int row_epi_lo(int k) const { return 17 * horizon + k; }
    int row_epi_hi(int k) const { return 18 * horizon + k; }
    int num_constraints() const { return (epigraph ? 19 : 17) * horizon; }
};

struct MpcProblem {
    qp::QpProblem qp;
    MpcLayout layout;
    // Constant comfort term dropped from the quadratic form; add back to the
    // QP objective to get the true horizon cost.
    double objective_offset = 0.0;
};

// Build the horizon QP for the given plant state, forecast view and
// controller mode.
MpcProblem assemble(const VppState& state, const HorizonData& horizon,
                    const ControllerMode& mode,
                    const io::ExperimentConfig& cfg);

// Receding-horizon warm starts: shift a previous solution one step forward,
// repeating the final step.
Eigen::VectorXd shift_primal(const MpcLayout& layout, const Eigen::VectorXd& x);
Eigen::VectorXd shift_dual(const MpcLayout& layout, const Eigen::VectorXd& y);

}  // namespace vpp::mpc
