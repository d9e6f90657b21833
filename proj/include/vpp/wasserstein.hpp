#pragma once

#include <span>

#include "vpp/quantiles.hpp"

namespace vpp::dro {

// Stage cost as a function of the spot price: cost(lambda) = a*lambda + b.
// `a` is the tau-scaled net import exposure in kWh.
struct AffinePriceCost {
    double a = 0.0;  // price sensitivity
    double b = 0.0;  // price-independent part, EUR
};

// L1-Wasserstein ball around a discrete price distribution.
struct AmbiguitySet {
    forecast::EmpiricalDistribution center;
    double radius = 0.0;  // same units as the price axis

    void validate() const;
};

// Worst-case expected cost over the ball. For costs affine in the price this
// is the center expectation plus radius times the absolute sensitivity.
double worst_case_expectation(const AffinePriceCost& cost,
                              const AmbiguitySet& amb);

// Independent check of the closed form: solves the finite transport LP
//   max sum_j q_j f(lambda_j)  s.t.  W1(Q, center) <= radius
// over a discretized price axis covering the support plus
// max(2*radius, grid_halfwidth) on both sides, by primal simplex.
double worst_case_oracle(const AffinePriceCost& cost, const AmbiguitySet& amb,
                         double grid_halfwidth, double grid_step);

// Sum of per-stage robustness terms radius*|a_k| over a horizon.
double horizon_penalty(std::span<const double> sensitivities, double radius);

}  // namespace vpp::dro
