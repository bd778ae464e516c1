#include <cmath>
#include <vector>

#include "doctest.h"
#include "errors.hpp"
#include "thermal.hpp"

using namespace picfa;

namespace {

CrossSectionSet table_xs() {
  return {0.534, 0.0255, 0.96, -2.59e-5, 9.63e-6, 850.0};
}

}  // namespace

TEST_CASE("thermal_resistance sums the four terms") {
  const double rt = thermal_resistance(3e-2, 0.41, 0.6, 0.17, 0.42, 0.48, 3.0);
  CHECK(rt == doctest::Approx(2.2088).epsilon(1e-4));
}

TEST_CASE("thermal_resistance single-term limit") {
  // Make every term except the coolant film negligible.
  const double rt =
      thermal_resistance(1e12, 0.41, 1e12, 1e12, 0.42, 0.48, 3.0);
  CHECK(rt == doctest::Approx(1.0 / (2.0 * M_PI * 0.48 * 3.0)).epsilon(1e-9));
}

TEST_CASE("thermal_resistance: doubling h halves only the film term") {
  const double r1 = thermal_resistance(3e-2, 0.41, 0.6, 0.17, 0.42, 0.48, 3.0);
  const double r2 = thermal_resistance(3e-2, 0.41, 0.6, 0.17, 0.42, 0.48, 6.0);
  const double film1 = 1.0 / (2.0 * M_PI * 0.48 * 3.0);
  CHECK(r1 - r2 == doctest::Approx(0.5 * film1).epsilon(1e-12));
}

TEST_CASE("thermal_resistance rejects r_co <= r_ci") {
  CHECK_THROWS_AS(thermal_resistance(3e-2, 0.41, 0.6, 0.17, 0.48, 0.42, 3.0),
                  ConfigError);
}

TEST_CASE("calibrate_A fixes the nominal rise at mean-1 flux") {
  const CrossSectionSet xs = table_xs();
  const double A = calibrate_A(275.0, xs);
  CHECK(A == doctest::Approx(10784.3).epsilon(1e-5));
  CHECK(A * xs.nu_sigma_f0 == doctest::Approx(275.0).epsilon(1e-14));
  CHECK(calibrate_A(0.0, xs) == 0.0);
}

TEST_CASE("calibration is invariant to a flux rescale") {
  // A different flux normalization with a recalibrated A gives the same T.
  const CrossSectionSet xs = table_xs();
  ThermalModel m1{calibrate_A(275.0, xs), std::vector<double>(4, 575.0)};
  ThermalModel m2{calibrate_A(275.0, xs) / 2.0, std::vector<double>(4, 575.0)};
  const std::vector<double> phi1(4, 1.0), phi2(4, 2.0);
  const std::vector<double> T_old(4, 850.0);
  const auto a = update_temperature(phi1, T_old, m1, xs);
  const auto b = update_temperature(phi2, T_old, m2, xs);
  for (int i = 0; i < 4; ++i) {
    CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-15));
  }
}

TEST_CASE("update_temperature reproduces the reference state") {
  const CrossSectionSet xs = table_xs();
  ThermalModel model{calibrate_A(275.0, xs), std::vector<double>(8, 575.0)};
  const std::vector<double> phi(8, 1.0);
  const std::vector<double> T_ref_field(8, 850.0);

  const auto T1 = update_temperature(phi, T_ref_field, model, xs);
  for (double t : T1) CHECK(t == doctest::Approx(850.0).epsilon(1e-13));

  const std::vector<double> zero(8, 0.0);
  const auto T2 = update_temperature(zero, T_ref_field, model, xs);
  for (double t : T2) CHECK(t == doctest::Approx(575.0).epsilon(1e-15));

  const std::vector<double> T_hot(8, 950.0);
  const auto T3 = update_temperature(phi, T_hot, model, xs);
  for (double t : T3) CHECK(t == doctest::Approx(849.28775).epsilon(1e-9));
}

TEST_CASE("update_temperature lag sensitivity is A phi nu_sigma_f0 f1") {
  const CrossSectionSet xs = table_xs();
  ThermalModel model{calibrate_A(275.0, xs), std::vector<double>(1, 575.0)};
  const std::vector<double> phi(1, 1.3);
  const std::vector<double> Ta(1, 900.0), Tb(1, 901.0);
  const auto a = update_temperature(phi, Ta, model, xs);
  const auto b = update_temperature(phi, Tb, model, xs);
  const double expected = model.A * phi[0] * xs.nu_sigma_f0 * xs.sigma_f1_rel;
  CHECK(b[0] - a[0] == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("update_temperature flags unphysical results") {
  const CrossSectionSet xs = table_xs();
  ThermalModel model{calibrate_A(275.0, xs), std::vector<double>(1, 575.0)};
  const std::vector<double> phi(1, 50.0);  // absurd power peak
  const std::vector<double> T_old(1, 850.0);
  CHECK_THROWS_AS(update_temperature(phi, T_old, model, xs),
                  UnphysicalStateError);
}

TEST_CASE("coolant_profile: zero rise, flat ramp, telescoping total") {
  const int n = 10;
  const std::vector<double> q(n, 0.7);

  const auto flat = coolant_profile(q, 560.0, 0.0);
  for (double t : flat) CHECK(t == 560.0);

  const double rise = 50.0;
  const auto ramp = coolant_profile(q, 560.0, rise);
  CHECK(ramp.front() ==
        doctest::Approx(560.0 + rise / (2.0 * n)).epsilon(1e-14));
  CHECK(ramp.back() ==
        doctest::Approx(560.0 + rise * (1.0 - 1.0 / (2.0 * n))).epsilon(1e-14));
  for (int i = 1; i < n; ++i) {
    CHECK(ramp[i] - ramp[i - 1] == doctest::Approx(rise / n).epsilon(1e-12));
  }
  // Adding the last half cell reaches exactly the full rise at the outlet.
  CHECK(ramp.back() + rise * 0.5 / n ==
        doctest::Approx(560.0 + rise).epsilon(1e-13));
}

TEST_CASE("coolant_profile rejects zero power with finite rise") {
  const std::vector<double> q(5, 0.0);
  CHECK_THROWS_AS(coolant_profile(q, 560.0, 25.0), ConfigError);
}
