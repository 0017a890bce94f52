// Bistability curve, its turning points, and the saturation-flux and
// pulse-budget estimates.

#include <catch2/catch.hpp>

#include <vector>

#include "toroidq/semiclassical.hpp"

using namespace toroidq;

namespace {

SystemParams bistability_params(double g_mhz)
{
    return params_from_mhz(30, 0.5, 0, 5.2, g_mhz, 0, 0, 0);
}

} // namespace

TEST_CASE("bistability curve endpoints")
{
    const auto p = bistability_params(100);
    const std::vector<double> grid = {0.0, 1e3, 1e5};
    const auto pts = bistability_curve(p, grid);
    CHECK(pts[0].Y_mag == 0.0);
    CHECK(pts[0].drive == 0.0);
    // empty-cavity line at large amplitude: Y/X -> 1
    CHECK(pts[1].Y_mag / pts[1].X_mag == Approx(1.0).epsilon(1e-3));
    CHECK(pts[2].Y_mag / pts[2].X_mag == Approx(1.0).epsilon(1e-7));
}

TEST_CASE("curve is S-shaped above threshold, monotone below")
{
    auto slope_signs = [](const SystemParams& p) {
        const double c = p.cooperativity();
        int changes = 0;
        double prev = bistability_slope(c, 1e-4);
        for (double x = 1e-3; x < 1e3; x *= 1.02) {
            const double cur = bistability_slope(c, x);
            if ((cur < 0) != (prev < 0)) ++changes;
            prev = cur;
        }
        return changes;
    };
    CHECK(slope_signs(bistability_params(100)) == 2);  // C ~ 63
    // C <= 2: no stationary points anywhere
    auto weak = params_from_mhz(30, 0.5, 0, 5.2, 17, 0, 0, 0);
    REQUIRE(weak.cooperativity() < 2.0);
    CHECK(slope_signs(weak) == 0);
    // just above threshold: two stationary points appear
    auto above = params_from_mhz(30, 0.5, 0, 5.2, 20, 0, 0, 0);
    REQUIRE(above.cooperativity() > 2.0);
    CHECK(slope_signs(above) == 2);
}

TEST_CASE("exact turning points satisfy dY/dX = 0 and match asymptotics")
{
    for (double g : {50.0, 100.0, 150.0}) {
        const auto p = bistability_params(g);
        const auto tp = turning_points(p);
        const double c = p.cooperativity();
        CHECK(std::abs(bistability_slope(c, tp.X_lower)) < 1e-10);
        CHECK(std::abs(bistability_slope(c, tp.X_upper)) < 1e-10);
        // quoted locations: |X| ~ sqrt(1/2) and sqrt(2C), drives g/sqrt2
        // and sqrt(2 kappa gamma)
        CHECK(tp.drive_lower ==
              Approx(tp.drive_lower_asym).epsilon(0.05));
        CHECK(tp.drive_upper ==
              Approx(tp.drive_upper_asym).epsilon(0.05));
        CHECK(tp.X_lower == Approx(std::sqrt(0.5)).epsilon(0.05));
        CHECK(tp.X_upper == Approx(std::sqrt(2.0 * c)).epsilon(0.05));
    }

    // frozen reference numbers for g/2pi = 100 MHz (MHz units)
    const auto tp = turning_points(bistability_params(100));
    CHECK(rad_us_to_mhz(tp.drive_lower) == Approx(71.274).epsilon(1e-3));
    CHECK(rad_us_to_mhz(tp.drive_upper) == Approx(17.775).epsilon(1e-3));

    // deep bistability: asymptotics within 2%
    auto deep = params_from_mhz(30, 0.5, 0, 5.2, 0, 0, 0, 0);
    deep.g_tw = std::sqrt(100.0 * deep.kappa() * deep.gamma);  // C = 100
    const auto tpd = turning_points(deep);
    CHECK(tpd.drive_lower == Approx(tpd.drive_lower_asym).epsilon(0.02));
    CHECK(tpd.drive_upper == Approx(tpd.drive_upper_asym).epsilon(0.02));
}

TEST_CASE("no turning points on a monotone curve")
{
    auto weak = params_from_mhz(30, 0.5, 0, 5.2, 15, 0, 0, 0);
    REQUIRE(weak.cooperativity() < 2.0);
    CHECK_THROWS_AS(turning_points(weak), regime_error);
}

TEST_CASE("regime guard on the bistability derivation")
{
    auto detuned = bistability_params(100);
    detuned.delta_cavity = 1.0;
    CHECK_THROWS_AS(turning_points(detuned), regime_error);
    auto scattered = bistability_params(100);
    scattered.h = 1.0;
    std::vector<double> grid = {1.0};
    CHECK_THROWS_AS(bistability_curve(scattered, grid), regime_error);
    auto complex_g = bistability_params(100);
    complex_g.g_tw = complexd(0.0, 10.0);
    CHECK_THROWS_AS(turning_points(complex_g), regime_error);
}

TEST_CASE("saturation flux and power at the reference point")
{
    const double g = mhz_to_rad_us(100);
    const double kex = mhz_to_rad_us(30);
    const double flux = saturation_flux(g, kex);
    CHECK(flux == Approx(523.5988).epsilon(1e-6));   // 1/us
    CHECK(flux == Approx(520.0).epsilon(0.02));
    CHECK(saturation_power(g, kex, 852e-9) ==
          Approx(0.12208e-9).epsilon(1e-4));
    // quadratic scaling in the coupling
    CHECK(saturation_flux(2 * g, kex) == Approx(4 * flux).epsilon(1e-12));
}

TEST_CASE("pulse budget")
{
    const double g = mhz_to_rad_us(100);
    const double kex = mhz_to_rad_us(30);
    const auto budget = pulse_budget(g, kex, 0.310, 0.5);
    CHECK(budget.mean_photons == Approx(203.43).epsilon(1e-3));
    CHECK(budget.mean_photons == Approx(200.0).epsilon(0.02));
    CHECK(budget.bandwidth_ok);

    // the bandwidth ratio hits 1 at t_p ~ 6.2 ns and the factor-10 margin
    // at ~62 ns
    CHECK(pulse_budget(g, kex, 0.0062, 1.0).bandwidth_ratio ==
          Approx(1.0).epsilon(1e-2));
    CHECK_FALSE(pulse_budget(g, kex, 0.060, 1.0).bandwidth_ok);
    CHECK(pulse_budget(g, kex, 0.065, 1.0).bandwidth_ok);

    CHECK(pulse_budget(g, kex, 0.310, 0.0).mean_photons == 0.0);
}
