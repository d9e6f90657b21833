#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "vpp/clearsky.hpp"
#include "vpp/errors.hpp"
#include "vpp/forecaster.hpp"
#include "vpp/quantiles.hpp"
#include "vpp/time.hpp"

using namespace vpp;
using namespace vpp::forecast;

namespace {

std::vector<double> daily_pattern_series(int days, double offset_last_day) {
    std::vector<double> y;
    for (int i = 0; i < days * 24; ++i) {
        const int h = i % 24;
        double v = 10.0 + 5.0 * std::sin(2.0 * M_PI * h / 24.0) + 0.2 * h;
        if (i >= (days - 1) * 24) v += offset_last_day;
        y.push_back(v);
    }
    return y;
}

}  // namespace

TEST_CASE("quantile weights: uniform and triangular") {
    const auto u = quantile_weights(WeightScheme::uniform, 9);
    REQUIRE(u.size() == 9);
    for (double w : u) CHECK(w == doctest::Approx(1.0 / 9.0).epsilon(1e-15));

    const auto t = quantile_weights(WeightScheme::triangular, 9);
    const double expected[] = {1, 2, 3, 4, 5, 4, 3, 2, 1};
    for (int i = 0; i < 9; ++i) {
        CHECK(t[i] == doctest::Approx(expected[i] / 25.0).epsilon(1e-15));
    }

    CHECK(quantile_weights(WeightScheme::triangular, 1) ==
          std::vector<double>{1.0});
    CHECK_THROWS_AS(quantile_weights(WeightScheme::uniform, 0), ValidationError);
}

TEST_CASE("quantile weights: nonnegative and normalized for any count") {
    for (auto scheme : {WeightScheme::uniform, WeightScheme::triangular}) {
        for (std::size_t m = 1; m <= 40; ++m) {
            const auto w = quantile_weights(scheme, m);
            double total = 0;
            for (double x : w) {
                CHECK(x >= 0.0);
                total += x;
            }
            CHECK(std::abs(total - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("empirical distribution: merging, mean, bounds") {
    // A constant row collapses to a single exact atom.
    const EmpiricalDistribution constant(std::vector<double>(9, 0.1234567),
                                         quantile_weights(WeightScheme::triangular, 9));
    CHECK(constant.support().size() == 1);
    CHECK(constant.mean() == 0.1234567);

    std::vector<double> row{1, 2, 3, 4, 5, 6, 7, 8, 9};
    const EmpiricalDistribution uni(row, quantile_weights(WeightScheme::uniform, 9));
    CHECK(uni.mean() == doctest::Approx(5.0).epsilon(1e-14));
    const EmpiricalDistribution tri(row, quantile_weights(WeightScheme::triangular, 9));
    CHECK(tri.mean() == doctest::Approx(5.0).epsilon(1e-14));

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> s(9), w(9);
        for (int i = 0; i < 9; ++i) {
            s[i] = u(rng);
            w[i] = std::abs(u(rng));
        }
        const EmpiricalDistribution d(s, w);
        CHECK(d.mean() >= d.min() - 1e-12);
        CHECK(d.mean() <= d.max() + 1e-12);
        double total = 0;
        for (double x : d.weights()) total += x;
        CHECK(std::abs(total - 1.0) <= 1e-12);
    }

    CHECK_THROWS_AS(EmpiricalDistribution({1.0, 2.0}, {1.0}), ValidationError);
    CHECK_THROWS_AS(EmpiricalDistribution({1.0}, {-1.0}), ValidationError);
}

TEST_CASE("persistence forecast: periodic history reproduces the truth") {
    const auto y = daily_pattern_series(12, 0.0);
    const auto grid = QuantileGrid::deciles();
    const auto fc = persistence_quantile_forecast(y, 24, grid, 10,
                                                  Variable::price, 0);
    for (int h = 0; h < 24; ++h) {
        const double truth = y[y.size() - 24 + h];  // next day repeats
        for (int c = 0; c < 9; ++c) {
            CHECK(fc.values(h, c) == doctest::Approx(truth).epsilon(1e-14));
        }
    }
}

TEST_CASE("persistence forecast: level shift on the last day carries over") {
    const double c = 1.5;
    const auto base = daily_pattern_series(12, 0.0);
    const auto y = daily_pattern_series(12, c);
    const auto grid = QuantileGrid::deciles();
    const auto fc = persistence_quantile_forecast(y, 24, grid, 10,
                                                  Variable::price, 0);
    // The median row equals the un-shifted pattern plus the offset: the point
    // forecast carries the shift, the median residual is zero.
    for (int h = 0; h < 24; ++h) {
        const double truth_next = base[base.size() - 24 + h] + c;
        CHECK(fc.values(h, 4) == doctest::Approx(truth_next).epsilon(1e-12));
    }
}

TEST_CASE("persistence forecast: rows are non-decreasing on noisy input") {
    std::mt19937 rng(5);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> y;
        double v = 10.0;
        for (int i = 0; i < 12 * 24; ++i) {
            v += g(rng);
            y.push_back(v + 3.0 * std::sin(2.0 * M_PI * (i % 24) / 24.0));
        }
        const auto fc = persistence_quantile_forecast(
            y, 24, QuantileGrid::deciles(), 10, Variable::temperature, 0);
        for (int h = 0; h < 24; ++h) {
            for (int cidx = 1; cidx < 9; ++cidx) {
                CHECK(fc.values(h, cidx) >= fc.values(h, cidx - 1));
            }
        }
    }
}

TEST_CASE("persistence forecast: insufficient history is an error") {
    const std::vector<double> y(200, 1.0);  // needs 264 for a 10 day lookback
    CHECK_THROWS_AS(persistence_quantile_forecast(y, 24, QuantileGrid::deciles(),
                                                  10, Variable::price, 0),
                    ValidationError);
}

TEST_CASE("clear sky: haurwitz formula and day shape") {
    CHECK(haurwitz_ghi_wm2(-3.0) == 0.0);
    CHECK(haurwitz_ghi_wm2(90.0) ==
          doctest::Approx(1098.0 * std::exp(-0.057)).epsilon(1e-12));
    // Monotone in elevation.
    double prev = 0.0;
    for (double el = 1.0; el <= 90.0; el += 1.0) {
        const double v = haurwitz_ghi_wm2(el);
        CHECK(v > prev);
        prev = v;
    }
    // Equator equinox noon gets close to the zenith value.
    const ClearSkyModel eq{0.0, 0.0};
    double peak = 0.0;
    const std::int64_t day0 = unix_from_civil({2024, 3, 20, 0, 0, 0});
    for (int minute = 0; minute < 24 * 60; minute += 5) {
        peak = std::max(peak, eq.irradiance_wm2(day0 + minute * 60));
    }
    CHECK(peak == doctest::Approx(1098.0 * std::exp(-0.057)).epsilon(1e-3));
    // Oslo midnight in December.
    const ClearSkyModel oslo{59.91, 10.75};
    CHECK(oslo.irradiance_wm2(unix_from_civil({2024, 12, 10, 0, 0, 0})) == 0.0);
}

TEST_CASE("clearness backtransform") {
    Eigen::VectorXd k(3);
    k << 0.5, 0.8, 1.5;  // last one clamps to 1.2
    const auto out = clearness_backtransform(k, 800.0);
    CHECK(out[0] == doctest::Approx(400.0));
    CHECK(out[1] == doctest::Approx(640.0));
    CHECK(out[2] == doctest::Approx(960.0));
    const auto night = clearness_backtransform(k, 0.0);
    CHECK(night.cwiseAbs().maxCoeff() == 0.0);
    CHECK(out[0] <= out[1]);
    CHECK(out[1] <= out[2]);
}

TEST_CASE("perfect forecaster returns the truth at every quantile") {
    const auto truth = [](Variable, std::int64_t t) {
        return 0.01 * static_cast<double>(t % 100000);
    };
    const PerfectForecaster pf(QuantileGrid::deciles(), truth);
    const auto fc = pf.forecast(Variable::wind, {}, 7200, 24);
    for (int h = 0; h < 24; ++h) {
        const double expect = truth(Variable::wind, 7200 + (h + 1) * 3600);
        for (int c = 0; c < 9; ++c) CHECK(fc.values(h, c) == expect);
        CHECK(fc.distribution(h, WeightScheme::triangular).mean() == expect);
    }
}

TEST_CASE("persistence forecaster: irradiance goes through the clearness index") {
    // Synthetic clear days: irradiance = 0.7 * clear sky, perfectly periodic
    // in the index, so the forecast should reproduce 0.7 * clear sky ahead.
    const ClearSkyModel oslo{59.91, 10.75};
    const std::int64_t start = unix_from_civil({2024, 6, 1, 0, 0, 0});
    const int n = 12 * 24;
    std::vector<double> ghi(n);
    for (int i = 0; i < n; ++i) {
        ghi[i] = 0.7 * oslo.irradiance_wm2(start + i * 3600);
    }
    const std::int64_t issue = start + (n - 1) * 3600;
    const PersistenceForecaster pf(QuantileGrid::deciles(), 10, oslo);
    const auto fc = pf.forecast(Variable::irradiance, ghi, issue, 24);
    for (int h = 0; h < 24; ++h) {
        const double cs = oslo.irradiance_wm2(issue + (h + 1) * 3600);
        CHECK(fc.values(h, 4) == doctest::Approx(0.7 * cs).epsilon(1e-6));
        if (cs == 0.0) {
            for (int c = 0; c < 9; ++c) CHECK(fc.values(h, c) == 0.0);
        }
    }
}
