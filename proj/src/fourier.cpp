#include "fourier.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "errors.hpp"

namespace picfa {

double rho_pi(double xi) {
  const double a = std::abs(xi);
  if (a < 1e-4) {
    const double x2 = xi * xi;
    return 1.0 - x2 / 3.0 + x2 * x2 / 5.0;
  }
  return std::atan(a) / a;
}

std::vector<double> modes(double L, double sigma_t0, int j_max) {
  if (!(L > 0.0) || !(sigma_t0 > 0.0)) {
    throw ConfigError("modes: L and sigma_t0 must be positive");
  }
  std::vector<double> xi(j_max);
  const double base = M_PI / (sigma_t0 * L);
  for (int j = 1; j <= j_max; ++j) xi[j - 1] = base * j;
  return xi;
}

double constant_C(double rho_N, double rho) {
  if (!(rho_N > 0.0 && rho_N < 1.0)) {
    std::ostringstream msg;
    msg << "constant_C: rho_N must lie in (0, 1), got " << rho_N;
    throw ConfigError(msg.str());
  }
  if (!(rho > 0.0 && rho < 1.0)) {
    std::ostringstream msg;
    msg << "constant_C: rho must lie in (0, 1), got " << rho;
    throw ConfigError(msg.str());
  }
  return rho_N / (1.0 - rho_N) * (1.0 - rho) / rho;
}

namespace {

double mode_bracket(double xi, const FaInput& in, double tau, double C,
                    int sign) {
  const double r = rho_pi(xi);
  const double f1 = in.sigma_f1_rel;
  const double a1 = in.sigma_a1_rel;
  return sign * tau * C / in.T0 + f1 -
         (a1 - f1) * (1.0 - in.c0) * r / (1.0 - r);
}

}  // namespace

double varrho(double xi, const FaInput& in, double tau, double C, int sign) {
  return (in.T0 - in.T_m) * mode_bracket(xi, in, tau, C, sign);
}

FaPrediction predict_rho(const FaInput& in, double tau) {
  FaPrediction out;
  const std::vector<double> xi = modes(in.L, in.sigma_t0, in.j_max);

  // Stage 1: unperturbed scan. tau = 0, so the sign and C are irrelevant.
  out.table.reserve(xi.size());
  for (size_t idx = 0; idx < xi.size(); ++idx) {
    ModeRow row;
    row.j = static_cast<int>(idx) + 1;
    row.xi = xi[idx];
    row.rho_pi = rho_pi(xi[idx]);
    row.varrho0 = varrho(xi[idx], in, 0.0, 0.0, +1);
    out.table.push_back(row);
    if (std::abs(row.varrho0) > out.rho0) {
      out.rho0 = std::abs(row.varrho0);
      out.dominant_j = row.j;
    }
  }
  out.feedback_bracket =
      std::abs(mode_bracket(xi[out.dominant_j - 1], in, 0.0, 0.0, +1));

  if (out.rho0 >= 1.0) {
    out.unstable_unperturbed = true;
    out.rho_tau = out.rho0;
    out.tau_max = 0.0;
    return out;
  }
  if (out.rho0 == 0.0) {
    // No feedback at all: the amplification constant is undefined and there
    // is nothing for the forcing parameter to destabilize.
    out.rho_tau = 0.0;
    out.tau_max = std::numeric_limits<double>::infinity();
    return out;
  }

  // Stage 2: amplification constant from the unperturbed rate.
  out.C = constant_C(in.rho_N, out.rho0);

  // Stage 3: perturbed scan, worst case over both signs.
  for (const ModeRow& row : out.table) {
    for (int sign : {+1, -1}) {
      const double v = std::abs(varrho(row.xi, in, tau, out.C, sign));
      if (v > out.rho_tau) out.rho_tau = v;
    }
  }
  // |varrho| at the dominant mode with the worst-case sign is affine and
  // increasing in tau, so the stability boundary is explicit.
  out.tau_max = out.C == 0.0
                    ? std::numeric_limits<double>::infinity()
                    : (1.0 - out.rho0) * in.T0 / ((in.T0 - in.T_m) * out.C);
  return out;
}

double tau_max(const FaInput& in) { return predict_rho(in, 0.0).tau_max; }

double tau_max_bisect(const FaInput& in, double tol) {
  FaPrediction base = predict_rho(in, 0.0);
  if (base.unstable_unperturbed) return 0.0;

  double lo = 0.0;
  double hi = 1.0;
  while (predict_rho(in, hi).rho_tau < 1.0) {
    hi *= 2.0;
    if (hi > 1e12) return std::numeric_limits<double>::infinity();
  }
  while (hi - lo > tol * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (predict_rho(in, mid).rho_tau < 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double predict_rho_self_consistent(const FaInput& in, double tau,
                                   int max_iter, double damping) {
  FaPrediction base = predict_rho(in, 0.0);
  if (base.unstable_unperturbed) return base.rho0;

  double rho = base.rho0;
  const std::vector<double> xi = modes(in.L, in.sigma_t0, in.j_max);
  for (int it = 0; it < max_iter; ++it) {
    if (!(rho > 0.0 && rho < 1.0)) break;
    const double C = constant_C(in.rho_N, rho);
    double next = 0.0;
    for (double x : xi) {
      for (int sign : {+1, -1}) {
        next = std::max(next, std::abs(varrho(x, in, tau, C, sign)));
      }
    }
    const double mixed = damping * next + (1.0 - damping) * rho;
    if (std::abs(mixed - rho) < 1e-13) return mixed;
    rho = mixed;
  }
  return rho;
}

}  // namespace picfa
