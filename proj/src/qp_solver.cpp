#include "vpp/qp_solver.hpp"

#include <algorithm>
#include <cmath>

#include "vpp/errors.hpp"

namespace vpp::qp {

namespace {

double inf_norm(const Eigen::VectorXd& v) {
    return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

Eigen::VectorXd clamp_box(const Eigen::VectorXd& v, const Eigen::VectorXd& lo,
                          const Eigen::VectorXd& hi) {
    return v.cwiseMax(lo).cwiseMin(hi);
}

constexpr double kMinScale = 1e-4;
constexpr double kMaxScale = 1e4;

double limit_scale(double s) {
    if (s < kMinScale) return kMinScale;
    if (s > kMaxScale) return kMaxScale;
    return s;
}

}  // namespace

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::solved: return "solved";
        case SolveStatus::max_iter: return "max_iter";
        case SolveStatus::primal_infeasible: return "primal_infeasible";
        case SolveStatus::dual_infeasible: return "dual_infeasible";
    }
    return "?";
}

void QpProblem::validate() const {
    const Eigen::Index n = num_vars();
    const Eigen::Index m = num_constraints();
    if (p.rows() != n || p.cols() != n) {
        throw ValidationError("qp: P must be n x n");
    }
    if (a.cols() != n && m > 0) throw ValidationError("qp: A must have n cols");
    if (a.rows() != m || upper.size() != m) {
        throw ValidationError("qp: constraint sizes disagree");
    }
    if (m > 0 && (lower.array() > upper.array()).any()) {
        throw ValidationError("qp: requires l <= u elementwise");
    }
    const double asym = n == 0 ? 0.0 : (p - p.transpose()).cwiseAbs().maxCoeff();
    const double scale = n == 0 ? 0.0 : p.cwiseAbs().maxCoeff();
    if (asym > 1e-9 * std::max(1.0, scale)) {
        throw ValidationError("qp: P must be symmetric");
    }
}

std::pair<double, double> kkt_residuals(const QpProblem& problem,
                                        const Eigen::VectorXd& x,
                                        const Eigen::VectorXd& y) {
    if (x.size() != problem.num_vars() || y.size() != problem.num_constraints()) {
        throw ValidationError("kkt_residuals: dimension mismatch");
    }
    double r_primal = 0.0;
    Eigen::VectorXd station = problem.p * x + problem.q;
    if (problem.num_constraints() > 0) {
        const Eigen::VectorXd ax = problem.a * x;
        r_primal = inf_norm(ax - clamp_box(ax, problem.lower, problem.upper));
        station.noalias() += problem.a.transpose() * y;
    }
    return {r_primal, inf_norm(station)};
}

QpSolver::QpSolver(SolverSettings settings) : settings_(settings) {}

void QpSolver::setup(QpProblem problem) {
    problem.validate();
    orig_ = std::move(problem);
    work_ = orig_;

    const Eigen::Index n = work_.num_vars();
    const Eigen::Index m = work_.num_constraints();
    scaling_.d = Eigen::VectorXd::Ones(n);
    scaling_.e = Eigen::VectorXd::Ones(m);
    scaling_.cost = 1.0;
    if (settings_.scaling) apply_ruiz();

    rho_vec_.resize(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const bool eq = orig_.lower[i] == orig_.upper[i];
        rho_vec_[i] = eq ? settings_.rho * 1e3 : settings_.rho;
    }
    rho_inv_ = rho_vec_.cwiseInverse();
    factorize();

    x_ = Eigen::VectorXd::Zero(n);
    z_ = Eigen::VectorXd::Zero(m);
    y_ = Eigen::VectorXd::Zero(m);
    have_problem_ = true;
}

void QpSolver::warm_start(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    if (!have_problem_) throw ValidationError("warm_start before setup");
    if (x.size() != work_.num_vars() || y.size() != work_.num_constraints()) {
        throw ValidationError("warm_start: dimension mismatch");
    }
    // Move the unscaled guess into the scaled space.
    x_ = scaling_.d.cwiseInverse().cwiseProduct(x);
    y_ = scaling_.cost * scaling_.e.cwiseInverse().cwiseProduct(y);
    z_ = work_.num_constraints() > 0
             ? clamp_box(work_.a * x_, work_.lower, work_.upper)
             : Eigen::VectorXd();
}

void QpSolver::apply_ruiz() {
    const Eigen::Index n = work_.num_vars();
    const Eigen::Index m = work_.num_constraints();

    for (int pass = 0; pass < settings_.scaling_iters; ++pass) {
        Eigen::VectorXd d(n), e(m);
        for (Eigen::Index i = 0; i < n; ++i) {
            double norm = inf_norm(work_.p.col(i));
            if (m > 0) norm = std::max(norm, inf_norm(work_.a.col(i)));
            d[i] = norm > 1e-12 ? limit_scale(1.0 / std::sqrt(norm)) : 1.0;
        }
        for (Eigen::Index j = 0; j < m; ++j) {
            const double norm = inf_norm(work_.a.row(j).transpose());
            e[j] = norm > 1e-12 ? limit_scale(1.0 / std::sqrt(norm)) : 1.0;
        }
        work_.p = d.asDiagonal() * work_.p * d.asDiagonal();
        work_.q = d.cwiseProduct(work_.q);
        if (m > 0) work_.a = e.asDiagonal() * work_.a * d.asDiagonal();
        scaling_.d = scaling_.d.cwiseProduct(d);
        scaling_.e = scaling_.e.cwiseProduct(e);

        // Cost normalization.
        double mean_col = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) mean_col += inf_norm(work_.p.col(i));
        if (n > 0) mean_col /= static_cast<double>(n);
        const double denom = std::max(mean_col, inf_norm(work_.q));
        const double g = denom > 1e-12 ? limit_scale(1.0 / denom) : 1.0;
        work_.p *= g;
        work_.q *= g;
        scaling_.cost *= g;
    }

    for (Eigen::Index j = 0; j < m; ++j) {
        if (orig_.lower[j] > -kInf) {
            work_.lower[j] = scaling_.e[j] * orig_.lower[j];
        }
        if (orig_.upper[j] < kInf) {
            work_.upper[j] = scaling_.e[j] * orig_.upper[j];
        }
    }
}

void QpSolver::factorize() {
    const Eigen::Index n = work_.num_vars();
    Eigen::MatrixXd kkt = work_.p;
    kkt.diagonal().array() += settings_.sigma;
    if (work_.num_constraints() > 0) {
        kkt.noalias() +=
            work_.a.transpose() * rho_vec_.asDiagonal() * work_.a;
    }
    kkt_.compute(kkt);
    if (kkt_.info() != Eigen::Success) {
        throw SolverError("failed to factorize the QP normal matrix");
    }
    (void)n;
}

std::pair<double, double> QpSolver::unscaled_residuals(
    const Eigen::VectorXd& x_u, const Eigen::VectorXd& y_u,
    const Eigen::VectorXd& z_u) const {
    double rp = 0.0;
    Eigen::VectorXd station = orig_.p * x_u + orig_.q;
    if (orig_.num_constraints() > 0) {
        rp = inf_norm(orig_.a * x_u - z_u);
        station.noalias() += orig_.a.transpose() * y_u;
    }
    return {rp, inf_norm(station)};
}

bool QpSolver::primal_infeasibility_certificate(
    const Eigen::VectorXd& dy_u) const {
    const double norm = inf_norm(dy_u);
    if (norm <= 0.0) return false;
    const double tol = settings_.tol_infeasible * norm;
    if (inf_norm(orig_.a.transpose() * dy_u) > tol) return false;
    double support = 0.0;
    for (Eigen::Index i = 0; i < dy_u.size(); ++i) {
        if (dy_u[i] > tol) {
            if (orig_.upper[i] >= kInf) return false;
            support += orig_.upper[i] * dy_u[i];
        } else if (dy_u[i] < -tol) {
            if (orig_.lower[i] <= -kInf) return false;
            support += orig_.lower[i] * dy_u[i];
        }
    }
    return support <= -tol;
}

bool QpSolver::dual_infeasibility_certificate(
    const Eigen::VectorXd& dx_u) const {
    const double norm = inf_norm(dx_u);
    if (norm <= 0.0) return false;
    const double tol = settings_.tol_infeasible * norm;
    if (inf_norm(orig_.p * dx_u) > tol) return false;
    if (orig_.q.dot(dx_u) > -tol) return false;
    if (orig_.num_constraints() > 0) {
        const Eigen::VectorXd adx = orig_.a * dx_u;
        for (Eigen::Index i = 0; i < adx.size(); ++i) {
            if (orig_.upper[i] < kInf && adx[i] > tol) return false;
            if (orig_.lower[i] > -kInf && adx[i] < -tol) return false;
        }
    }
    return true;
}

bool QpSolver::try_polish(QpSolution& sol) const {
    const Eigen::Index n = orig_.num_vars();
    const Eigen::Index m = orig_.num_constraints();

    std::vector<Eigen::Index> active;
    std::vector<double> rhs_act;
    for (Eigen::Index i = 0; i < m; ++i) {
        const bool eq = orig_.lower[i] == orig_.upper[i];
        if (eq) {
            active.push_back(i);
            rhs_act.push_back(orig_.lower[i]);
        } else if (sol.y[i] < 0 && orig_.lower[i] > -kInf) {
            active.push_back(i);
            rhs_act.push_back(orig_.lower[i]);
        } else if (sol.y[i] > 0 && orig_.upper[i] < kInf) {
            active.push_back(i);
            rhs_act.push_back(orig_.upper[i]);
        }
    }
    const Eigen::Index na = static_cast<Eigen::Index>(active.size());
    const Eigen::Index dim = n + na;

    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(dim, dim);
    kkt.topLeftCorner(n, n) = orig_.p;
    for (Eigen::Index k = 0; k < na; ++k) {
        kkt.block(n + k, 0, 1, n) = orig_.a.row(active[k]);
        kkt.block(0, n + k, n, 1) = orig_.a.row(active[k]).transpose();
    }
    Eigen::MatrixXd kkt_reg = kkt;
    kkt_reg.topLeftCorner(n, n).diagonal().array() += settings_.polish_delta;
    kkt_reg.bottomRightCorner(na, na).diagonal().array() -=
        settings_.polish_delta;

    Eigen::VectorXd rhs(dim);
    rhs.head(n) = -orig_.q;
    for (Eigen::Index k = 0; k < na; ++k) rhs[n + k] = rhs_act[k];

    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(kkt_reg);
    Eigen::VectorXd w = lu.solve(rhs);
    // Iterative refinement against the unregularized system.
    for (int it = 0; it < settings_.polish_refine_iters; ++it) {
        const Eigen::VectorXd resid = rhs - kkt * w;
        if (inf_norm(resid) <= 1e-13 * (1.0 + inf_norm(rhs))) break;
        w += lu.solve(resid);
    }
    if (!w.allFinite()) return false;

    Eigen::VectorXd x_pol = w.head(n);
    Eigen::VectorXd y_pol = Eigen::VectorXd::Zero(m);
    for (Eigen::Index k = 0; k < na; ++k) y_pol[active[k]] = w[n + k];

    const auto [rp, rd] = kkt_residuals(orig_, x_pol, y_pol);
    if (std::max(rp, rd) <
        std::max(sol.primal_residual, sol.dual_residual)) {
        sol.x = std::move(x_pol);
        sol.y = std::move(y_pol);
        sol.primal_residual = rp;
        sol.dual_residual = rd;
        sol.polished = true;
        return true;
    }
    return false;
}

QpSolution QpSolver::solve() {
    if (!have_problem_) throw ValidationError("solve before setup");
    const Eigen::Index m = work_.num_constraints();

    const double sigma = settings_.sigma;
    const double alpha = settings_.alpha;

    auto unscale_x = [&](const Eigen::VectorXd& v) {
        return scaling_.d.cwiseProduct(v).eval();
    };
    auto unscale_z = [&](const Eigen::VectorXd& v) {
        return scaling_.e.cwiseInverse().cwiseProduct(v).eval();
    };
    auto unscale_y = [&](const Eigen::VectorXd& v) {
        return (scaling_.e.cwiseProduct(v) / scaling_.cost).eval();
    };

    QpSolution sol;
    int last_polish_attempt = -1000;

    int iter = 0;
    while (iter < settings_.max_iter) {
        ++iter;
        Eigen::VectorXd rhs = sigma * x_ - work_.q;
        if (m > 0) {
            rhs.noalias() +=
                work_.a.transpose() * (rho_vec_.cwiseProduct(z_) - y_);
        }
        const Eigen::VectorXd x_tilde = kkt_.solve(rhs);
        const Eigen::VectorXd x_next = alpha * x_tilde + (1.0 - alpha) * x_;

        Eigen::VectorXd y_next = y_, z_next = z_;
        if (m > 0) {
            const Eigen::VectorXd z_tilde = work_.a * x_tilde;
            const Eigen::VectorXd z_relax = alpha * z_tilde + (1.0 - alpha) * z_;
            z_next = clamp_box(z_relax + rho_inv_.cwiseProduct(y_),
                               work_.lower, work_.upper);
            y_next = y_ + rho_vec_.cwiseProduct(z_relax - z_next);
        }

        const Eigen::VectorXd dx = x_next - x_;
        const Eigen::VectorXd dy = y_next - y_;
        x_ = x_next;
        z_ = z_next;
        y_ = y_next;

        if (iter % settings_.check_interval != 0 && iter != settings_.max_iter) {
            continue;
        }

        const Eigen::VectorXd x_u = unscale_x(x_);
        const Eigen::VectorXd z_u = m > 0 ? unscale_z(z_) : Eigen::VectorXd();
        const Eigen::VectorXd y_u = m > 0 ? unscale_y(y_) : Eigen::VectorXd();
        const auto [rp, rd] = unscaled_residuals(x_u, y_u, z_u);

        double rel_p = 0.0, rel_d = 0.0;
        if (settings_.tol_rel > 0.0) {
            const double ax_norm = m > 0 ? inf_norm(orig_.a * x_u) : 0.0;
            const double aty_norm =
                m > 0 ? inf_norm(orig_.a.transpose() * y_u) : 0.0;
            rel_p = settings_.tol_rel * std::max(ax_norm, inf_norm(z_u));
            rel_d = settings_.tol_rel *
                    std::max({inf_norm(orig_.p * x_u), aty_norm,
                              inf_norm(orig_.q)});
        }

        sol.x = x_u;
        sol.y = y_u;
        sol.iterations = iter;
        std::tie(sol.primal_residual, sol.dual_residual) =
            kkt_residuals(orig_, x_u, y_u);

        if (rp <= settings_.tol_primal + rel_p &&
            rd <= settings_.tol_dual + rel_d) {
            sol.status = SolveStatus::solved;
            if (settings_.polish) try_polish(sol);
            break;
        }

        if (m > 0 && primal_infeasibility_certificate(unscale_y(dy))) {
            sol.status = SolveStatus::primal_infeasible;
            break;
        }
        if (dual_infeasibility_certificate(unscale_x(dx))) {
            sol.status = SolveStatus::dual_infeasible;
            break;
        }

        // Once the scaled iteration has settled, polishing usually lands on
        // the exact active set long before the unscaled tail converges.
        if (settings_.polish && m > 0 && iter - last_polish_attempt >= 200) {
            const double sp = inf_norm(work_.a * x_ - z_);
            const Eigen::VectorXd sd =
                work_.p * x_ + work_.q + work_.a.transpose() * y_;
            if (sp <= 1e-7 && inf_norm(sd) <= 1e-7) {
                last_polish_attempt = iter;
                QpSolution candidate = sol;
                if (try_polish(candidate) &&
                    candidate.primal_residual <= settings_.tol_primal + rel_p &&
                    candidate.dual_residual <= settings_.tol_dual + rel_d) {
                    sol = candidate;
                    sol.status = SolveStatus::solved;
                    break;
                }
            }
        }

        if (settings_.adaptive_rho && m > 0 &&
            iter % settings_.adaptive_rho_interval == 0) {
            const double sp_rel =
                inf_norm(work_.a * x_ - z_) /
                std::max({inf_norm(work_.a * x_), inf_norm(z_), 1e-10});
            const Eigen::VectorXd sd =
                work_.p * x_ + work_.q + work_.a.transpose() * y_;
            const double sd_rel =
                inf_norm(sd) /
                std::max({inf_norm(work_.p * x_), inf_norm(work_.q),
                          inf_norm(work_.a.transpose() * y_), 1e-10});
            const double ratio = std::sqrt(sp_rel / std::max(sd_rel, 1e-12));
            if (ratio > settings_.adaptive_rho_tolerance ||
                ratio < 1.0 / settings_.adaptive_rho_tolerance) {
                for (Eigen::Index i = 0; i < m; ++i) {
                    rho_vec_[i] = std::clamp(rho_vec_[i] * ratio, 1e-6, 1e6);
                }
                rho_inv_ = rho_vec_.cwiseInverse();
                factorize();
            }
        }
    }

    if (sol.x.size() == 0) {
        sol.x = unscale_x(x_);
        sol.y = m > 0 ? unscale_y(y_) : Eigen::VectorXd();
        sol.iterations = iter;
        std::tie(sol.primal_residual, sol.dual_residual) =
            kkt_residuals(orig_, sol.x, sol.y);
    }
    if (sol.status == SolveStatus::max_iter) {
        sol.iterations = iter;
        const auto [rp2, rd2] = kkt_residuals(orig_, sol.x, sol.y);
        sol.primal_residual = rp2;
        sol.dual_residual = rd2;
    }
    sol.objective = 0.5 * sol.x.dot(orig_.p * sol.x) + orig_.q.dot(sol.x);
    return sol;
}

QpSolution solve(const QpProblem& problem, double tol_primal, double tol_dual,
                 int max_iter) {
    SolverSettings s;
    s.tol_primal = tol_primal;
    s.tol_dual = tol_dual;
    s.max_iter = max_iter;
    QpSolver solver(s);
    solver.setup(problem);
    return solver.solve();
}

}  // namespace vpp::qp
