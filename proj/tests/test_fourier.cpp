#include <cmath>
#include <vector>

#include "doctest.h"
#include "errors.hpp"
#include "fourier.hpp"

using namespace picfa;

namespace {

FaInput table_input(double rho_N = 0.99949) {
  FaInput in;
  in.sigma_t0 = 0.534;
  in.c0 = 0.96;
  in.sigma_f1_rel = -2.59e-5;
  in.sigma_a1_rel = 9.63e-6;
  in.L = 150.0;
  in.T0 = 850.0;
  in.T_m = 575.0;
  in.rho_N = rho_N;
  in.j_max = 64;
  return in;
}

const double kXi1 = M_PI / (0.534 * 150.0);

}  // namespace

TEST_CASE("rho_pi values") {
  CHECK(rho_pi(kXi1) == doctest::Approx(0.99949).epsilon(1e-5));
  CHECK(rho_pi(1.0) == doctest::Approx(M_PI / 4.0).epsilon(1e-14));
  CHECK(rho_pi(1e-9) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rho_pi(-0.3) == rho_pi(0.3));
}

TEST_CASE("rho_pi is decreasing in |xi| and bounded in (0, 1]") {
  double prev = 1.0 + 1e-15;
  for (double xi = 1e-6; xi < 1e3; xi *= 1.7) {
    const double r = rho_pi(xi);
    CHECK(r > 0.0);
    CHECK(r <= 1.0);
    CHECK(r < prev);
    prev = r;
  }
}

TEST_CASE("modes: base value, linearity in j, monotone sequence") {
  const auto xi = modes(150.0, 0.534, 5);
  REQUIRE(xi.size() == 5);
  CHECK(xi[0] == doctest::Approx(kXi1).epsilon(1e-15));
  CHECK(std::abs(xi[0] - 0.0392224) < 2e-6);
  CHECK(xi[1] == doctest::Approx(2.0 * xi[0]).epsilon(1e-15));
  for (int j = 1; j < 5; ++j) CHECK(xi[j] > xi[j - 1]);
  CHECK_THROWS_AS(modes(-1.0, 0.534, 3), ConfigError);
}

TEST_CASE("constant_C formula and domain") {
  // 0.99949/(1-0.99949) * (1-0.745)/0.745 = 99949/149 exactly.
  CHECK(constant_C(0.99949, 0.745) ==
        doctest::Approx(99949.0 / 149.0).epsilon(1e-12));
  CHECK(constant_C(0.5, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(constant_C(0.63, 0.745) == doctest::Approx(0.582816).epsilon(1e-5));
  CHECK_THROWS_AS(constant_C(1.0, 0.5), ConfigError);
  CHECK_THROWS_AS(constant_C(0.5, 0.0), ConfigError);
  CHECK_THROWS_AS(constant_C(-0.1, 0.5), ConfigError);
}

TEST_CASE("varrho vanishes without feedback") {
  FaInput in = table_input();
  in.sigma_f1_rel = 0.0;
  in.sigma_a1_rel = 0.0;
  for (double xi : modes(in.L, in.sigma_t0, 8)) {
    CHECK(varrho(xi, in, 0.0, 100.0, +1) == 0.0);
  }
}

TEST_CASE("predict_rho stage 1: unperturbed spectral radius and bracket") {
  const FaPrediction pred = predict_rho(table_input(), 0.0);
  // Chain of the closed forms with Table-like data; also inside the
  // acceptance band around 0.745.
  CHECK(pred.rho0 == doctest::Approx(0.769645).epsilon(2e-6));
  CHECK(pred.dominant_j == 1);
  CHECK(pred.feedback_bracket == doctest::Approx(0.00279871).epsilon(1e-5));
  CHECK(std::abs(pred.rho0 - 0.745) < 0.03);
  CHECK(pred.rho_tau == pred.rho0);
  REQUIRE(pred.table.size() == 64);
  CHECK(pred.table[0].j == 1);
}

TEST_CASE("predict_rho at tau = 0 is independent of rho_N") {
  const FaPrediction a = predict_rho(table_input(0.99949), 0.0);
  const FaPrediction b = predict_rho(table_input(0.63), 0.0);
  CHECK(a.rho0 == b.rho0);
  CHECK(a.rho_tau == b.rho_tau);
}

TEST_CASE("predict_rho perturbed scan is affine in tau at the dominant mode") {
  const FaInput in = table_input();
  const FaPrediction base = predict_rho(in, 0.0);
  const double tau = 0.0012;
  const FaPrediction pred = predict_rho(in, tau);
  const double expected =
      base.rho0 + (in.T0 - in.T_m) * tau * base.C / in.T0;
  CHECK(pred.rho_tau == doctest::Approx(expected).epsilon(1e-12));
  // Near the stability boundary for the slow solver.
  CHECK(std::abs(pred.rho_tau - 1.0) < 0.05);
}

TEST_CASE("predict_rho rho_tau is non-decreasing in tau") {
  const FaInput in = table_input();
  double prev = 0.0;
  for (double tau : {0.0, 1e-4, 5e-4, 1e-3, 2e-3, 1e-2}) {
    const double r = predict_rho(in, tau).rho_tau;
    CHECK(r >= prev);
    prev = r;
  }
}

TEST_CASE("predict_rho pipeline C for the accelerated solver") {
  const FaPrediction pred = predict_rho(table_input(0.63), 0.0);
  // constant_C(0.63, rho0) / T0 with rho0 = 0.769645.
  const double expected = constant_C(0.63, pred.rho0) / 850.0;
  CHECK(pred.C / 850.0 == doctest::Approx(expected).epsilon(1e-13));
  CHECK(pred.C / 850.0 == doctest::Approx(5.997e-4).epsilon(1e-3));
}

TEST_CASE("tau_max closed form, bisection cross-check, limits") {
  const FaInput in = table_input();
  const double closed = tau_max(in);
  CHECK(std::abs(closed - 0.0012) < 0.25 * 0.0012);
  CHECK(std::abs(closed - tau_max_bisect(in)) < 1e-10);

  const double accel = tau_max(table_input(0.63));
  CHECK(accel == doctest::Approx(1.397).epsilon(1e-2));
  CHECK(std::abs(accel - tau_max_bisect(table_input(0.63))) < 1e-9);

  // rho_N -> 0 means no perturbation amplification at all.
  CHECK(tau_max(table_input(1e-15)) > 1e10);
}

TEST_CASE("tau_max is zero when the unperturbed iteration already diverges") {
  FaInput in = table_input();
  in.sigma_a1_rel = 5e-5;  // strong positive feedback
  const FaPrediction pred = predict_rho(in, 0.0);
  CHECK(pred.unstable_unperturbed);
  CHECK(pred.rho0 >= 1.0);
  CHECK(tau_max(in) == 0.0);
}

TEST_CASE("self-consistent mode agrees with the two-stage scan at tau = 0") {
  const FaInput in = table_input();
  const double sc = predict_rho_self_consistent(in, 0.0);
  CHECK(sc == doctest::Approx(predict_rho(in, 0.0).rho0).epsilon(1e-10));
}
