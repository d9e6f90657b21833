#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

namespace vpp::qp {

// Bounds at or beyond this magnitude are treated as infinite.
constexpr double kInf = 1e30;

// Convex QP in the two-sided form
//   minimize 1/2 x'Px + q'x   subject to   l <= Ax <= u
// with P symmetric positive semidefinite. Equality rows have l == u.
struct QpProblem {
    Eigen::MatrixXd p;
    Eigen::VectorXd q;
    Eigen::MatrixXd a;
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;
    std::vector<std::string> var_names;  // optional, for diagnostics

    Eigen::Index num_vars() const { return q.size(); }
    Eigen::Index num_constraints() const { return lower.size(); }
    void validate() const;
};

enum class SolveStatus { solved, max_iter, primal_infeasible, dual_infeasible };

const char* to_string(SolveStatus s);

struct QpSolution {
    Eigen::VectorXd x;
    Eigen::VectorXd y;  // multipliers: negative on lower bounds, positive on upper
    SolveStatus status = SolveStatus::max_iter;
    double primal_residual = 0.0;  // inf-norm distance of Ax to [l, u]
    double dual_residual = 0.0;    // inf-norm of Px + q + A'y
    double objective = 0.0;
    int iterations = 0;
    bool polished = false;
};

struct SolverSettings {
    double tol_primal = 1e-6;   // absolute, on unscaled residuals
    double tol_dual = 1e-6;
    double tol_rel = 0.0;       // optional relative term added to both
    int max_iter = 50000;
    double sigma = 1e-6;
    double alpha = 1.6;         // over-relaxation
    double rho = 0.1;           // base step size; equality rows get 1000x
    int check_interval = 25;
    bool scaling = true;
    int scaling_iters = 10;
    bool adaptive_rho = true;
    int adaptive_rho_interval = 200;
    double adaptive_rho_tolerance = 5.0;
    bool polish = true;
    double polish_delta = 1e-7;
    int polish_refine_iters = 15;
    double tol_infeasible = 1e-7;
};

// Operator-splitting solver with Ruiz equilibration and active-set polishing.
// An instance is stateful (it keeps the last iterate for warm starts) and
// single-threaded; use one instance per concurrent problem.
class QpSolver {
public:
    explicit QpSolver(SolverSettings settings = {});

    void setup(QpProblem problem);
    // Initial primal/dual iterate, in the original (unscaled) space.
    void warm_start(const Eigen::VectorXd& x, const Eigen::VectorXd& y);
    QpSolution solve();

    const SolverSettings& settings() const { return settings_; }
    SolverSettings& settings() { return settings_; }

private:
    struct Scaling {
        Eigen::VectorXd d;  // variable scaling
        Eigen::VectorXd e;  // constraint scaling
        double cost = 1.0;
    };

    void apply_ruiz();
    void factorize();
    std::pair<double, double> unscaled_residuals(const Eigen::VectorXd& x_u,
                                                 const Eigen::VectorXd& y_u,
                                                 const Eigen::VectorXd& z_u) const;
    bool primal_infeasibility_certificate(const Eigen::VectorXd& dy_u) const;
    bool dual_infeasibility_certificate(const Eigen::VectorXd& dx_u) const;
    bool try_polish(QpSolution& sol) const;

    SolverSettings settings_;
    QpProblem orig_;     // problem as given
    QpProblem work_;     // scaled copy the iteration runs on
    Scaling scaling_;
    Eigen::VectorXd rho_vec_, rho_inv_;
    Eigen::LDLT<Eigen::MatrixXd> kkt_;
    Eigen::VectorXd x_, z_, y_;  // scaled iterates
    bool have_problem_ = false;
};

// One-shot convenience wrapper.
QpSolution solve(const QpProblem& problem, double tol_primal = 1e-6,
                 double tol_dual = 1e-6, int max_iter = 50000);

// (primal, dual) KKT residuals of a candidate pair on the given problem.
std::pair<double, double> kkt_residuals(const QpProblem& problem,
                                        const Eigen::VectorXd& x,
                                        const Eigen::VectorXd& y);

}  // namespace vpp::qp
