#include "vpp/wasserstein.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "vpp/errors.hpp"

namespace vpp::dro {

void AmbiguitySet::validate() const {
    if (!(radius >= 0)) throw ValidationError("ambiguity radius must be >= 0");
}

double worst_case_expectation(const AffinePriceCost& cost,
                              const AmbiguitySet& amb) {
    amb.validate();
    return cost.a * amb.center.mean() + cost.b +
           amb.radius * std::abs(cost.a);
}

double horizon_penalty(std::span<const double> sensitivities, double radius) {
    if (!(radius >= 0)) throw ValidationError("ambiguity radius must be >= 0");
    double total = 0.0;
    for (double a : sensitivities) total += std::abs(a);
    return radius * total;
}

namespace {

// Primal simplex with Bland's rule on the transport polytope. Small by
// construction: one marginal row per atom plus the budget row.
class TransportLp {
public:
    TransportLp(const std::vector<double>& atoms,
                const std::vector<double>& mass,
                const std::vector<double>& grid, double budget, double a)
        : atoms_(atoms), mass_(mass), grid_(grid), budget_(budget) {
        n_ = atoms_.size();
        g_ = grid_.size();
        rows_ = n_ + 1;
        cols_ = n_ * g_ + 1;  // transport entries plus the budget slack
        obj_.resize(cols_);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < g_; ++j) obj_[i * g_ + j] = a * grid_[j];
        }
        obj_[cols_ - 1] = 0.0;
    }

    double solve() {
        std::vector<std::size_t> basis;
        basis.reserve(rows_);
        // Identity transport: all mass stays on its own atom, slack absorbs
        // the whole budget. Requires every atom to be a grid point.
        for (std::size_t i = 0; i < n_; ++i) {
            const auto it =
                std::lower_bound(grid_.begin(), grid_.end(), atoms_[i]);
            if (it == grid_.end() || *it != atoms_[i]) {
                throw ValidationError("transport grid must contain the support");
            }
            basis.push_back(i * g_ + static_cast<std::size_t>(it - grid_.begin()));
        }
        basis.push_back(cols_ - 1);

        Eigen::VectorXd rhs(rows_);
        for (std::size_t i = 0; i < n_; ++i) rhs[static_cast<Eigen::Index>(i)] = mass_[i];
        rhs[static_cast<Eigen::Index>(rows_ - 1)] = budget_;

        std::vector<char> in_basis(cols_, 0);
        for (std::size_t b : basis) in_basis[b] = 1;

        constexpr double kTol = 1e-11;
        const std::size_t max_pivots = 200 * (rows_ + cols_);
        for (std::size_t iter = 0; iter < max_pivots; ++iter) {
            Eigen::MatrixXd bmat(rows_, rows_);
            for (std::size_t k = 0; k < rows_; ++k) {
                bmat.col(static_cast<Eigen::Index>(k)) = column(basis[k]);
            }
            const Eigen::PartialPivLU<Eigen::MatrixXd> lu(bmat);
            const Eigen::VectorXd xb = lu.solve(rhs);

            Eigen::VectorXd cb(rows_);
            for (std::size_t k = 0; k < rows_; ++k) {
                cb[static_cast<Eigen::Index>(k)] = obj_[basis[k]];
            }
            const Eigen::VectorXd y = lu.transpose().solve(cb);

            // Bland: first column with positive reduced cost enters.
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (in_basis[j]) continue;
                if (obj_[j] - y.dot(column(j)) > kTol) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols_) {
                return cb.dot(xb);  // optimal
            }

            const Eigen::VectorXd dir = lu.solve(column(enter));
            std::size_t leave = rows_;
            double best = 0.0;
            for (std::size_t k = 0; k < rows_; ++k) {
                const double d = dir[static_cast<Eigen::Index>(k)];
                if (d > kTol) {
                    const double ratio =
                        std::max(0.0, xb[static_cast<Eigen::Index>(k)]) / d;
                    if (leave == rows_ || ratio < best - kTol ||
                        (ratio < best + kTol && basis[k] < basis[leave])) {
                        leave = k;
                        best = ratio;
                    }
                }
            }
            if (leave == rows_) {
                throw Error("transport LP unbounded");  // cannot happen
            }
            in_basis[basis[leave]] = 0;
            in_basis[enter] = 1;
            basis[leave] = enter;
        }
        throw Error("transport LP did not converge");
    }

private:
    Eigen::VectorXd column(std::size_t j) const {
        Eigen::VectorXd col = Eigen::VectorXd::Zero(rows_);
        if (j == cols_ - 1) {
            col[static_cast<Eigen::Index>(rows_ - 1)] = 1.0;  // slack
            return col;
        }
        const std::size_t i = j / g_;
        const std::size_t jj = j % g_;
        col[static_cast<Eigen::Index>(i)] = 1.0;
        col[static_cast<Eigen::Index>(rows_ - 1)] =
            std::abs(atoms_[i] - grid_[jj]);
        return col;
    }

    std::vector<double> atoms_, mass_, grid_;
    double budget_;
    std::vector<double> obj_;
    std::size_t n_ = 0, g_ = 0, rows_ = 0, cols_ = 0;
};

}  // namespace

double worst_case_oracle(const AffinePriceCost& cost, const AmbiguitySet& amb,
                         double grid_halfwidth, double grid_step) {
    amb.validate();
    if (!(grid_step > 0) || !(grid_halfwidth >= 0)) {
        throw ValidationError("grid halfwidth/step must be positive");
    }
    const auto& atoms = amb.center.support();
    const double width = std::max(2.0 * amb.radius, grid_halfwidth);
    const double lo = atoms.front() - width;
    const double hi = atoms.back() + width;

    const double count = std::floor((hi - lo) / grid_step) + 1.0;
    if (count > 2e5) {
        throw ValidationError("transport grid too fine for the given span");
    }

    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(count) + atoms.size());
    for (double x = lo; x <= hi + 0.5 * grid_step; x += grid_step) {
        grid.push_back(x);
    }
    grid.insert(grid.end(), atoms.begin(), atoms.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    TransportLp lp(atoms, amb.center.weights(), grid, amb.radius, cost.a);
    return lp.solve() + cost.b;
}

}  // namespace vpp::dro
