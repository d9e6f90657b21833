#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "vpp/battery.hpp"
#include "vpp/building.hpp"
#include "vpp/errors.hpp"
#include "vpp/grid.hpp"
#include "vpp/renewables.hpp"
#include "vpp/solar.hpp"
#include "vpp/time.hpp"

using namespace vpp;
using namespace vpp::core;

namespace {

// Reference discretization: RK4 on the matrix ODEs X' = AX (X0 = I) and
// Y' = AY + B (Y0 = 0), independent of the matrix-exponential path.
void rk4_discretize(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                    double tau, int steps, Eigen::MatrixXd& ad,
                    Eigen::MatrixXd& bd) {
    const double h = tau / steps;
    Eigen::MatrixXd x = Eigen::MatrixXd::Identity(a.rows(), a.cols());
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(b.rows(), b.cols());
    for (int i = 0; i < steps; ++i) {
        const Eigen::MatrixXd k1 = a * x;
        const Eigen::MatrixXd k2 = a * (x + 0.5 * h * k1);
        const Eigen::MatrixXd k3 = a * (x + 0.5 * h * k2);
        const Eigen::MatrixXd k4 = a * (x + h * k3);
        x += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);

        const Eigen::MatrixXd m1 = a * y + b;
        const Eigen::MatrixXd m2 = a * (y + 0.5 * h * m1) + b;
        const Eigen::MatrixXd m3 = a * (y + 0.5 * h * m2) + b;
        const Eigen::MatrixXd m4 = a * (y + h * m3) + b;
        y += h / 6.0 * (m1 + 2 * m2 + 2 * m3 + m4);
    }
    ad = x;
    bd = y;
}

BuildingParams table_building() { return BuildingParams{}; }

}  // namespace

TEST_CASE("3R2C continuous matrices match the reference coefficients") {
    Eigen::Matrix3d ac;
    Eigen::Matrix<double, 3, 4> bc;
    Eigen::RowVector3d out;
    building_continuous_matrices(table_building(), ac, bc, out);

    // Hand expansion with C1=25, C2=80, Cz=3, R=2, hA=2.
    CHECK(ac(0, 0) == doctest::Approx(-0.1).epsilon(1e-12));
    CHECK(ac(0, 1) == doctest::Approx(0.5 / 25.0));
    CHECK(ac(1, 2) == doctest::Approx(2.0 / 80.0));
    CHECK(ac(2, 1) == doctest::Approx(2.0 / 3.0));
    CHECK(bc(0, 0) == doctest::Approx(2.0 / 25.0));
    CHECK(bc(2, 3) == doctest::Approx(1.0 / 3.0));
    CHECK(out(2) == 1.0);
    CHECK(out(0) == 0.0);

    // Energy-exchange symmetry: every temperature row balances its
    // temperature-like couplings.
    CHECK(ac(0, 0) + ac(0, 1) + bc(0, 0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(ac(1, 0) + ac(1, 1) + ac(1, 2) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(ac(2, 1) + ac(2, 2) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("3R2C decoupled limit: ha = 0 and huge R empty the coupling rows") {
    BuildingParams p = table_building();
    p.ha_kw_per_c = 0.0;
    p.r_c_per_kw = 1e15;
    Eigen::Matrix3d ac;
    Eigen::Matrix<double, 3, 4> bc;
    Eigen::RowVector3d out;
    building_continuous_matrices(p, ac, bc, out);
    CHECK(ac.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(bc(0, 0) == 0.0);
}

TEST_CASE("3R2C parameter validation") {
    BuildingParams p = table_building();
    p.c1_kwh_per_c = 0.0;
    Eigen::Matrix3d ac;
    Eigen::Matrix<double, 3, 4> bc;
    Eigen::RowVector3d out;
    CHECK_THROWS_AS(building_continuous_matrices(p, ac, bc, out),
                    ValidationError);
    p = table_building();
    p.r_c_per_kw = -1.0;
    CHECK_THROWS_AS(building_continuous_matrices(p, ac, bc, out),
                    ValidationError);
}

TEST_CASE("zoh: zero dynamics gives identity and tau-scaled input matrix") {
    const Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
    const Eigen::MatrixXd b = Eigen::MatrixXd::Random(3, 2);
    Eigen::MatrixXd ad, bd;
    zoh_discretize(a, b, 0.5, ad, bd);
    CHECK((ad - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((bd - 0.5 * b).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("zoh: scalar analytic case") {
    Eigen::MatrixXd a(1, 1), b(1, 1), ad, bd;
    a << -1.0;
    b << 1.0;
    zoh_discretize(a, b, 1.0, ad, bd);
    CHECK(ad(0, 0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(bd(0, 0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("zoh: reference building matches a fine RK4 integration") {
    const auto ss = make_state_space(table_building(), 1.0);
    Eigen::MatrixXd ad_ref, bd_ref;
    rk4_discretize(ss.ac, ss.bc, 1.0, 10000, ad_ref, bd_ref);
    const double scale = ad_ref.cwiseAbs().maxCoeff();
    CHECK((ss.ad - ad_ref).cwiseAbs().maxCoeff() / scale < 1e-6);
    CHECK((ss.bd - bd_ref).cwiseAbs().maxCoeff() / scale < 1e-6);
}

TEST_CASE("zoh: random stable systems agree with RK4") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::MatrixXd a(3, 3), b(3, 4);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) a(i, j) = u(rng);
            for (int j = 0; j < 4; ++j) b(i, j) = u(rng);
        }
        a -= (a.cwiseAbs().rowwise().sum().maxCoeff() + 0.1) *
             Eigen::MatrixXd::Identity(3, 3);
        Eigen::MatrixXd ad, bd, ad_ref, bd_ref;
        zoh_discretize(a, b, 1.0, ad, bd);
        rk4_discretize(a, b, 1.0, 10000, ad_ref, bd_ref);
        CHECK((ad - ad_ref).cwiseAbs().maxCoeff() < 1e-6);
        CHECK((bd - bd_ref).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("building_step holds the equilibrium state") {
    const auto ss = make_state_space(table_building(), 1.0);
    const Eigen::Vector4d u(5.0, 2.0, 0.5, 3.0);
    const Eigen::Vector3d x_eq = ss.ac.fullPivLu().solve(-ss.bc * u);
    REQUIRE((ss.ac * x_eq + ss.bc * u).cwiseAbs().maxCoeff() < 1e-10);

    const BuildingState s = BuildingState::from_vec(x_eq);
    const BuildingState next = building_step(s, {u[0], u[1], u[2], u[3]}, ss);
    CHECK(std::abs(next.t1_c - s.t1_c) < 1e-9);
    CHECK(std::abs(next.t2_c - s.t2_c) < 1e-9);
    CHECK(std::abs(next.tz_c - s.tz_c) < 1e-9);
}

TEST_CASE("building_step decays to zero without input") {
    const auto ss = make_state_space(table_building(), 1.0);
    BuildingState s{8.0, -3.0, 5.0};
    double prev = s.vec().norm();
    for (int i = 0; i < 50; ++i) {
        s = building_step(s, {0, 0, 0, 0}, ss);
    }
    CHECK(s.vec().norm() < prev * 0.9);
    for (int i = 0; i < 2000; ++i) {
        s = building_step(s, {0, 0, 0, 0}, ss);
    }
    CHECK(s.vec().norm() < 1e-6);
}

TEST_CASE("building_step is linear in state and input") {
    const auto ss = make_state_space(table_building(), 1.0);
    const BuildingState x1{21.0, 19.5, 20.2}, x2{-2.0, 4.0, 1.0};
    const std::array<double, 4> u1{3.0, 1.0, 0.4, -2.0};
    const std::array<double, 4> u2{-1.0, 0.5, 0.1, 5.0};
    const BuildingState a = building_step(x1, u1, ss);
    const BuildingState b = building_step(x2, u2, ss);
    const BuildingState sum = building_step(
        BuildingState::from_vec(x1.vec() + x2.vec()),
        {u1[0] + u2[0], u1[1] + u2[1], u1[2] + u2[2], u1[3] + u2[3]}, ss);
    CHECK((sum.vec() - (a.vec() + b.vec())).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("solar position: Oslo solstice noon elevation from declination") {
    const std::int64_t day0 = unix_from_civil({2024, 6, 21, 0, 0, 0});
    double max_el = -90.0;
    for (int minute = 0; minute < 24 * 60; ++minute) {
        const auto sun = solar_position(day0 + minute * 60, 59.91, 10.75);
        max_el = std::max(max_el, sun.elevation_deg);
    }
    CHECK(max_el == doctest::Approx(90.0 - 59.91 + 23.44).epsilon(0.01));
}

TEST_CASE("solar position: Oslo December midnight is dark") {
    const auto sun =
        solar_position(unix_from_civil({2024, 12, 15, 0, 0, 0}), 59.91, 10.75);
    CHECK(sun.elevation_deg < 0.0);
}

TEST_CASE("solar position: equator equinox noon is near zenith") {
    const std::int64_t day0 = unix_from_civil({2024, 3, 20, 0, 0, 0});
    double max_el = -90.0;
    for (int minute = 0; minute < 24 * 60; ++minute) {
        const auto sun = solar_position(day0 + minute * 60, 0.0, 0.0);
        max_el = std::max(max_el, sun.elevation_deg);
    }
    CHECK(std::abs(max_el - 90.0) < 0.5);
}

TEST_CASE("solar position: azimuth is south at Oslo noon, ranges [0,360)") {
    const std::int64_t day0 = unix_from_civil({2024, 6, 21, 0, 0, 0});
    for (int minute = 0; minute < 24 * 60; minute += 7) {
        const auto sun = solar_position(day0 + minute * 60, 59.91, 10.75);
        CHECK(sun.azimuth_deg >= 0.0);
        CHECK(sun.azimuth_deg < 360.0);
        CHECK(sun.elevation_deg >= -90.0);
        CHECK(sun.elevation_deg <= 90.0);
    }
    // Highest sun should sit almost due south.
    double max_el = -90, az_at_max = 0;
    for (int minute = 0; minute < 24 * 60; ++minute) {
        const auto sun = solar_position(day0 + minute * 60, 59.91, 10.75);
        if (sun.elevation_deg > max_el) {
            max_el = sun.elevation_deg;
            az_at_max = sun.azimuth_deg;
        }
    }
    CHECK(az_at_max == doctest::Approx(180.0).epsilon(0.02));
}

TEST_CASE("solar gains: clamps and direct value") {
    CHECK(solar_gains_kw(500.0, -5.0, 180.0, 180.0, 15.0) == 0.0);
    CHECK(solar_gains_kw(500.0, 30.0, 180.0, 180.0, 15.0) ==
          doctest::Approx(3.75).epsilon(1e-12));
    CHECK(solar_gains_kw(500.0, 30.0, 270.0, 180.0, 15.0) == 0.0);
    CHECK_THROWS_AS(solar_gains_kw(-1.0, 30.0, 180.0, 180.0, 15.0),
                    ValidationError);
}

TEST_CASE("pv power: direct values and clamps") {
    const PvParams p{};
    CHECK(pv_power_kw(p, 0.0, 20.0) == 0.0);
    // eta=0.18, A=200, I=1000, T_air=25: cell 55 C, derate 0.865.
    CHECK(pv_power_kw(p, 1000.0, 25.0) == doctest::Approx(31.14).epsilon(1e-9));
    // Zero derating when the cell sits at the reference temperature.
    PvParams p2 = p;
    p2.k_t = 0.0;
    CHECK(pv_power_kw(p2, 800.0, 25.0) ==
          doctest::Approx(0.18 * 200.0 * 800.0 / 1000.0).epsilon(1e-12));
    // Extreme heat cannot push output negative.
    CHECK(pv_power_kw(p, 1000.0, 400.0) == 0.0);
}

TEST_CASE("wind power: direct value and cubic scaling") {
    const WindParams p{};
    CHECK(wind_power_kw(p, 0.0) == 0.0);
    const double expected =
        0.5 * 1.225 * std::numbers::pi * 15.0 * 15.0 * 0.45 * 1e3 / 1e3;
    CHECK(wind_power_kw(p, 10.0) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(wind_power_kw(p, 6.0) * 8.0 ==
          doctest::Approx(wind_power_kw(p, 12.0)).epsilon(1e-12));
}

TEST_CASE("battery step: identities and efficiency accounting") {
    const BatteryParams p{};
    CHECK(battery_step(50.0, 0.0, 0.0, p, 1.0) == 50.0);
    CHECK(battery_step(50.0, 10.0, 0.0, p, 1.0) ==
          doctest::Approx(59.5).epsilon(1e-12));

    // Round trip: charge e kWh of grid energy in, take the stored energy out.
    const double stored = battery_step(0.0, 10.0, 0.0, p, 1.0);
    const double back_out = stored * p.eta_discharge;
    CHECK(back_out / 10.0 == doctest::Approx(0.9025).epsilon(1e-12));

    CHECK_THROWS_AS(battery_step(50.0, -0.1, 0.0, p, 1.0), ValidationError);
    CHECK_THROWS_AS(battery_step(50.0, 0.0, 25.0, p, 1.0), ValidationError);
}

TEST_CASE("battery step: monotone in charge and discharge power") {
    const BatteryParams p{};
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.0, 20.0);
    for (int i = 0; i < 200; ++i) {
        const double pc = u(rng), pd = u(rng);
        const double s = battery_step(50.0, pc, pd, p, 1.0);
        CHECK(battery_step(50.0, pc + 1e-3, pd, p, 1.0) > s);
        CHECK(battery_step(50.0, pc, pd + 1e-3, p, 1.0) < s);
    }
}

TEST_CASE("grid exchange sign convention") {
    CHECK(grid_exchange_kw(5.0, 3.0, 1.0) == doctest::Approx(1.0));
    CHECK(grid_exchange_kw(0.0, 0.0, 0.0) == 0.0);
    CHECK(grid_exchange_kw(0.0, 10.0, -10.0) == 0.0);
}

TEST_CASE("effective prices") {
    const PriceParams p{};
    const auto [buy, sell] = effective_prices(0.10, p);
    CHECK(buy == doctest::Approx(0.105).epsilon(1e-12));
    CHECK(sell == doctest::Approx(0.09).epsilon(1e-12));
    const auto zero = effective_prices(0.0, p);
    CHECK(zero.buy_eur_per_kwh == 0.0);
    CHECK(zero.sell_eur_per_kwh == 0.0);
    for (double lam : {0.01, 0.1, 1.0, 7.5}) {
        const auto e = effective_prices(lam, p);
        CHECK(e.sell_eur_per_kwh < lam);
        CHECK(lam < e.buy_eur_per_kwh);
    }
}

TEST_CASE("internal gains profile") {
    CHECK(internal_gains_kw(3) == doctest::Approx(0.3));
    CHECK(internal_gains_kw(19) == doctest::Approx(0.8));
    for (int h = 0; h < 24; ++h) {
        CHECK(internal_gains_kw(h) >= 0.3);
        CHECK(internal_gains_kw(h) <= 0.8);
    }
    CHECK_THROWS_AS(internal_gains_kw(24), ValidationError);
}

TEST_CASE("time utilities round trip") {
    const std::int64_t t = parse_iso8601_utc("2024-04-15T06:30:00Z");
    CHECK(format_iso8601_utc(t) == "2024-04-15T06:30:00Z");
    CHECK(hour_of_day(t) == 6);
    CHECK(day_of_year(unix_from_civil({2024, 1, 1, 0, 0, 0})) == 1);
    CHECK(day_of_year(unix_from_civil({2024, 12, 31, 0, 0, 0})) == 366);
    CHECK(parse_iso8601_utc("2024-04-15 06:30:00") == t);
    CHECK(parse_iso8601_utc("2024-04-15T06:30:00+00:00") == t);
    CHECK_THROWS_AS(parse_iso8601_utc("2024-04-15"), ValidationError);
    CHECK_THROWS_AS(parse_iso8601_utc("2024-13-01T00:00:00Z"), ValidationError);
}
