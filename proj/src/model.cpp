#include "model.hpp"

#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace picfa {

EffectiveXs xs_at_temperature(const CrossSectionSet& xs, double T) {
  if (!(T > 0.0)) {
    throw UnphysicalStateError("xs_at_temperature: temperature must be positive");
  }
  const double dT = T - xs.T_ref;
  EffectiveXs out;
  out.sigma_s = xs.sigma_s0();
  out.sigma_a = xs.sigma_a0() * (1.0 + xs.sigma_a1_rel * dT);
  out.sigma_t = out.sigma_s + out.sigma_a;
  out.nu_sigma_f = xs.nu_sigma_f0 * (1.0 + xs.sigma_f1_rel * dT);
  if (out.sigma_a <= 0.0 || out.sigma_t <= 0.0) {
    std::ostringstream msg;
    msg << "xs_at_temperature: nonpositive cross section at T = " << T
        << " K (sigma_a = " << out.sigma_a << ", sigma_t = " << out.sigma_t << ")";
    throw UnphysicalStateError(msg.str());
  }
  return out;
}

namespace {

// Legendre polynomial P_n and derivative at x via the three-term recurrence.
void legendre_eval(int n, double x, double& p, double& dp) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

QuadratureSet gauss_legendre(int n) {
  if (n < 2 || n > 64 || n % 2 != 0) {
    std::ostringstream msg;
    msg << "gauss_legendre: order must be even and in [2, 64], got " << n;
    throw ConfigError(msg.str());
  }
  QuadratureSet q;
  q.mu.resize(n);
  q.weight.resize(n);

  const int half = n / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      legendre_eval(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre_eval(n, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // x descends with i, so filling (-x, +x) at (i, n-1-i) leaves mu ascending.
    q.mu[i] = -x;
    q.mu[n - 1 - i] = x;
    q.weight[i] = w;
    q.weight[n - 1 - i] = w;
  }
  return q;
}

namespace {

void check(bool ok, std::vector<std::string>& out, const std::string& msg) {
  if (!ok) out.push_back(msg);
}

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::vector<std::string> validate(const Problem& p) {
  std::vector<std::string> v;
  const auto& xs = p.xs;
  const auto& m = p.model;
  const auto& s = p.settings;

  check(xs.sigma_t0 > 0.0, v, "sigma_t0 must be > 0 (got " + num(xs.sigma_t0) + ")");
  check(xs.nu_sigma_f0 > 0.0, v,
        "nu_sigma_f0 must be > 0 (got " + num(xs.nu_sigma_f0) + ")");
  check(xs.c0 >= 0.0 && xs.c0 < 1.0, v,
        "c0 must lie in [0, 1) (got " + num(xs.c0) + ")");
  check(xs.T_ref > 0.0, v, "T_ref must be > 0 (got " + num(xs.T_ref) + ")");

  check(m.L > 0.0, v, "L must be > 0 (got " + num(m.L) + ")");
  check(m.n_cells >= 10, v,
        "n_cells must be >= 10 (got " + num(m.n_cells) + ")");
  check(m.sn_order >= 2 && m.sn_order <= 64 && m.sn_order % 2 == 0, v,
        "sn_order must be even and in [2, 64] (got " + num(m.sn_order) + ")");
  check(m.T_m > 0.0, v, "T_m must be > 0 (got " + num(m.T_m) + ")");
  if (m.heat_path) {
    const auto& h = *m.heat_path;
    check(h.k_f > 0 && h.r_g > 0 && h.h_g > 0 && h.k_c > 0 && h.r_ci > 0 &&
              h.r_co > 0 && h.h > 0 && h.r_fo > 0 && h.kappa > 0,
          v, "heat path parameters must all be > 0");
    check(h.r_co > h.r_ci, v, "heat path requires r_co > r_ci (got r_co = " +
                                  num(h.r_co) + ", r_ci = " + num(h.r_ci) + ")");
  } else {
    check(m.delta_T > 0.0, v,
          "delta_T must be > 0 when no explicit heat path is given (got " +
              num(m.delta_T) + ")");
  }
  check(m.coolant_rise >= 0.0, v,
        "coolant_rise must be >= 0 (got " + num(m.coolant_rise) + ")");

  check(s.epsilon_T > 0.0 && s.epsilon_T < 1.0, v,
        "epsilon_T must lie in (0, 1) (got " + num(s.epsilon_T) + ")");
  check(s.epsilon_phi > 0.0 && s.epsilon_phi < 1.0, v,
        "epsilon_phi must lie in (0, 1) (got " + num(s.epsilon_phi) + ")");
  check(s.tau >= 0.0, v, "tau must be >= 0 (got " + num(s.tau) + ")");
  check(s.max_outer >= 1, v,
        "max_outer must be >= 1 (got " + num(s.max_outer) + ")");
  check(s.max_inner >= 1, v,
        "max_inner must be >= 1 (got " + num(s.max_inner) + ")");
  check(s.j_max >= 1, v, "j_max must be >= 1 (got " + num(s.j_max) + ")");
  check(s.coarsening >= 1, v,
        "coarsening must be >= 1 (got " + num(s.coarsening) + ")");
  if (s.accel == AccelScheme::LpCmfd && s.coarsening >= 1 && m.n_cells >= 1) {
    check(m.n_cells % s.coarsening == 0, v,
          "coarsening must divide n_cells (got n_cells = " + num(m.n_cells) +
              ", coarsening = " + num(s.coarsening) + ")");
  }
  return v;
}

}  // namespace picfa
