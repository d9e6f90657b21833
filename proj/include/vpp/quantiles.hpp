#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

namespace vpp::forecast {

enum class Variable { price, temperature, irradiance, wind };

const char* variable_name(Variable v);

// Ordered probability levels at which forecasts are issued.
struct QuantileGrid {
    std::vector<double> levels;

    static QuantileGrid deciles();  // 0.1 .. 0.9
    std::size_t size() const { return levels.size(); }
    void validate() const;  // strictly increasing, all in (0, 1)
};

enum class WeightScheme { uniform, triangular };

// Probability mass per quantile level. Uniform spreads evenly; triangular
// ramps up to the central level and back down. Always sums to one.
std::vector<double> quantile_weights(WeightScheme scheme, std::size_t count);

// Finite weighted mixture of point masses. Atoms are kept sorted; duplicate
// atoms are merged and weights renormalized, so a constant row collapses to
// a single unit-mass atom and mean() returns it exactly.
class EmpiricalDistribution {
public:
    EmpiricalDistribution(std::vector<double> support,
                          std::vector<double> weights);

    const std::vector<double>& support() const { return support_; }
    const std::vector<double>& weights() const { return weights_; }
    double mean() const;
    double min() const { return support_.front(); }
    double max() const { return support_.back(); }

private:
    std::vector<double> support_;
    std::vector<double> weights_;
};

// H x |Q| quantile matrix for one variable, issued at one instant. Rows are
// horizon steps and are non-decreasing across levels (crossings are repaired
// by sorting each row).
struct QuantileForecast {
    Variable variable = Variable::price;
    std::int64_t issue_time = 0;
    int horizon = 0;
    QuantileGrid grid;
    Eigen::MatrixXd values;  // horizon rows, grid.size() columns

    void repair_crossings();
    Eigen::VectorXd row(int step) const { return values.row(step); }
    EmpiricalDistribution distribution(int step, WeightScheme scheme) const;
    // Weighted point reduction of one row.
    double point(int step, WeightScheme scheme) const;
};

// Linear-interpolation empirical quantile of a sorted sample (the common
// "type 7" definition).
double empirical_quantile(std::span<const double> sorted, double q);

}  // namespace vpp::forecast
