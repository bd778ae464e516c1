#include <cmath>

#include "doctest.h"
#include "errors.hpp"
#include "model.hpp"

using namespace picfa;

namespace {

Problem table_problem() {
  // PWR-like defaults are the struct initializers; spell out the key values
  // anyway so the tests do not silently follow a default change.
  Problem p;
  p.xs = {0.534, 0.0255, 0.96, -2.59e-5, 9.63e-6, 850.0};
  p.model.L = 150.0;
  p.model.n_cells = 300;
  p.model.sn_order = 12;
  return p;
}

// Test-local bisection on P_n, independent of the Newton solver inside
// gauss_legendre.
double legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double bisect_root(int n, double lo, double hi) {
  double flo = legendre(n, lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = legendre(n, mid);
    if (flo * fmid <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fmid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("gauss_legendre two-point rule is the closed form") {
  const QuadratureSet q = gauss_legendre(2);
  REQUIRE(q.order() == 2);
  CHECK(q.mu[0] == doctest::Approx(-0.5773502692).epsilon(1e-9));
  CHECK(q.mu[1] == doctest::Approx(0.5773502692).epsilon(1e-9));
  CHECK(q.weight[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(q.weight[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gauss_legendre S12 moments") {
  const QuadratureSet q = gauss_legendre(12);
  double w_sum = 0.0, mu_sum = 0.0, mu2_sum = 0.0;
  for (int m = 0; m < q.order(); ++m) {
    w_sum += q.weight[m];
    mu_sum += q.weight[m] * q.mu[m];
    mu2_sum += q.weight[m] * q.mu[m] * q.mu[m];
  }
  CHECK(std::abs(w_sum - 2.0) < 1e-13);
  CHECK(std::abs(mu_sum) < 1e-13);
  CHECK(std::abs(mu2_sum - 2.0 / 3.0) < 1e-12);
}

TEST_CASE("gauss_legendre S12 nodes match an independent bisection oracle") {
  const QuadratureSet q = gauss_legendre(12);
  // Positive nodes of P12 bracketed between extrema of the sign pattern.
  for (int m = 6; m < 12; ++m) {
    const double node = q.mu[m];
    const double root = bisect_root(12, node - 1e-3, node + 1e-3);
    CHECK(std::abs(node - root) < 1e-12);
  }
  // Symmetry: mu[m] = -mu[n-1-m] with equal weights.
  for (int m = 0; m < 6; ++m) {
    CHECK(q.mu[m] == doctest::Approx(-q.mu[11 - m]).epsilon(1e-14));
    CHECK(q.weight[m] == doctest::Approx(q.weight[11 - m]).epsilon(1e-14));
  }
}

TEST_CASE("gauss_legendre rejects odd or out-of-range orders") {
  CHECK_THROWS_AS(gauss_legendre(7), ConfigError);
  CHECK_THROWS_AS(gauss_legendre(0), ConfigError);
  CHECK_THROWS_AS(gauss_legendre(66), ConfigError);
}

TEST_CASE("xs_at_temperature anchors at the reference temperature") {
  const CrossSectionSet xs = table_problem().xs;
  const EffectiveXs e = xs_at_temperature(xs, xs.T_ref);
  CHECK(e.sigma_t == doctest::Approx(0.534).epsilon(1e-14));
  CHECK(e.sigma_s == doctest::Approx(0.51264).epsilon(1e-14));
  CHECK(e.sigma_a == doctest::Approx(0.02136).epsilon(1e-14));
  CHECK(e.nu_sigma_f == doctest::Approx(0.0255).epsilon(1e-14));
}

TEST_CASE("xs_at_temperature applies the linear coefficients") {
  const CrossSectionSet xs = table_problem().xs;
  const EffectiveXs e = xs_at_temperature(xs, xs.T_ref + 100.0);
  CHECK(e.nu_sigma_f ==
        doctest::Approx(0.0255 * (1.0 - 2.59e-5 * 100.0)).epsilon(1e-13));
  CHECK(e.sigma_a ==
        doctest::Approx(0.02136 * (1.0 + 9.63e-6 * 100.0)).epsilon(1e-13));
}

TEST_CASE("xs_at_temperature keeps sigma_t = sigma_s + sigma_a and is linear") {
  const CrossSectionSet xs = table_problem().xs;
  for (double T : {300.0, 700.0, 850.0, 1200.0, 2500.0}) {
    const EffectiveXs e = xs_at_temperature(xs, T);
    CHECK(e.sigma_t == doctest::Approx(e.sigma_s + e.sigma_a).epsilon(1e-15));
  }
  // f(T1) + f(T2) = 2 f((T1+T2)/2) componentwise.
  const EffectiveXs a = xs_at_temperature(xs, 600.0);
  const EffectiveXs b = xs_at_temperature(xs, 1000.0);
  const EffectiveXs m = xs_at_temperature(xs, 800.0);
  CHECK(a.sigma_t + b.sigma_t == doctest::Approx(2.0 * m.sigma_t).epsilon(1e-15));
  CHECK(a.sigma_a + b.sigma_a == doctest::Approx(2.0 * m.sigma_a).epsilon(1e-15));
  CHECK(a.nu_sigma_f + b.nu_sigma_f ==
        doctest::Approx(2.0 * m.nu_sigma_f).epsilon(1e-15));
}

TEST_CASE("xs_at_temperature flags unphysical states") {
  CrossSectionSet xs = table_problem().xs;
  xs.sigma_a1_rel = -1e-2;  // absorption collapses a few hundred kelvin up
  CHECK_THROWS_AS(xs_at_temperature(xs, xs.T_ref + 200.0),
                  UnphysicalStateError);
  CHECK_THROWS_AS(xs_at_temperature(table_problem().xs, -5.0),
                  UnphysicalStateError);
}

TEST_CASE("validate accepts the PWR-like default problem") {
  CHECK(validate(table_problem()).empty());
}

TEST_CASE("validate reports every violation with field names") {
  Problem p = table_problem();
  p.xs.c0 = 1.0;
  p.model.sn_order = 7;
  p.settings.tau = -0.5;
  const auto v = validate(p);
  REQUIRE(v.size() == 3);
  bool saw_c0 = false, saw_sn = false, saw_tau = false;
  for (const auto& msg : v) {
    if (msg.find("c0") != std::string::npos) saw_c0 = true;
    if (msg.find("sn_order") != std::string::npos) saw_sn = true;
    if (msg.find("tau") != std::string::npos) saw_tau = true;
  }
  CHECK(saw_c0);
  CHECK(saw_sn);
  CHECK(saw_tau);
}

TEST_CASE("validate requires the coarsening to divide the mesh") {
  Problem p = table_problem();
  p.settings.accel = AccelScheme::LpCmfd;
  p.settings.coarsening = 7;
  const auto v = validate(p);
  REQUIRE(v.size() == 1);
  CHECK(v[0].find("coarsening") != std::string::npos);
}
