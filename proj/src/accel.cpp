#include "accel.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace picfa {

CoarseSystem build_coarse(std::span<const double> fine_phi,
                          std::span<const double> face_current,
                          const CellXs& xs, const Mesh& mesh, int p,
                          double k) {
  const int n = mesh.n;
  if (p < 1 || n % p != 0) {
    throw ConfigError("build_coarse: coarsening must divide n_cells");
  }
  const int nc = n / p;
  CoarseSystem sys;
  sys.p = p;
  sys.delta = mesh.dx() * p;
  sys.k = k;
  sys.phi.assign(nc, 0.0);
  sys.sigma_a.assign(nc, 0.0);
  sys.nu_sigma_f.assign(nc, 0.0);

  std::vector<double> diffusion(nc, 0.0);
  for (int J = 0; J < nc; ++J) {
    double phi_sum = 0.0, sa = 0.0, sf = 0.0, st = 0.0;
    for (int i = J * p; i < (J + 1) * p; ++i) {
      phi_sum += fine_phi[i];
      sa += xs.sigma_a[i] * fine_phi[i];
      sf += xs.nu_sigma_f[i] * fine_phi[i];
      st += xs.sigma_t[i] * fine_phi[i];
    }
    if (!(phi_sum > 0.0)) {
      throw NumericsError("build_coarse: nonpositive coarse flux");
    }
    sys.phi[J] = phi_sum / p;
    sys.sigma_a[J] = sa / phi_sum;
    sys.nu_sigma_f[J] = sf / phi_sum;
    diffusion[J] = 1.0 / (3.0 * (st / phi_sum));
  }

  sys.d_tilde.assign(nc - 1, 0.0);
  sys.d_hat.assign(nc - 1, 0.0);
  for (int f = 0; f < nc - 1; ++f) {
    const double dl = diffusion[f];
    const double dr = diffusion[f + 1];
    sys.d_tilde[f] = 2.0 * dl * dr / (sys.delta * (dl + dr));
    const double j_fine = face_current[(f + 1) * p];
    const double phi_l = sys.phi[f];
    const double phi_r = sys.phi[f + 1];
    sys.d_hat[f] = (j_fine + sys.d_tilde[f] * (phi_r - phi_l)) / (phi_r + phi_l);
  }
  sys.d_hat_left = face_current[0] / sys.phi[0];
  sys.d_hat_right = face_current[n] / sys.phi[nc - 1];
  return sys;
}

namespace {

// Tridiagonal solve (Thomas). Returns false on a vanishing pivot.
bool thomas(const std::vector<double>& lower, std::vector<double> diag,
            const std::vector<double>& upper, std::vector<double> rhs,
            std::vector<double>& x) {
  const int n = static_cast<int>(diag.size());
  for (int i = 1; i < n; ++i) {
    if (diag[i - 1] == 0.0) return false;
    const double m = lower[i] / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  if (diag[n - 1] == 0.0) return false;
  x.resize(n);
  x[n - 1] = rhs[n - 1] / diag[n - 1];
  for (int i = n - 2; i >= 0; --i) {
    x[i] = (rhs[i] - upper[i] * x[i + 1]) / diag[i];
  }
  return true;
}

}  // namespace

LowOrderResult solve_low_order(const CoarseSystem& sys, int max_iter) {
  const int n = sys.n_coarse();
  LowOrderResult out;

  // Loss operator rows: leakage difference / delta + absorption.
  std::vector<double> lower(n, 0.0), diag(n, 0.0), upper(n, 0.0);
  const double inv_delta = 1.0 / sys.delta;
  for (int J = 0; J < n; ++J) {
    double d = sys.sigma_a[J];
    if (J > 0) {
      const int f = J - 1;
      d += (sys.d_tilde[f] - sys.d_hat[f]) * inv_delta;
      lower[J] = (-sys.d_tilde[f] - sys.d_hat[f]) * inv_delta;
    } else {
      d += -sys.d_hat_left * inv_delta;
    }
    if (J < n - 1) {
      const int f = J;
      d += (sys.d_tilde[f] + sys.d_hat[f]) * inv_delta;
      upper[J] = (-sys.d_tilde[f] + sys.d_hat[f]) * inv_delta;
    } else {
      d += sys.d_hat_right * inv_delta;
    }
    diag[J] = d;
  }

  out.phi = sys.phi;
  out.k = sys.k;
  double mean = 0.0;
  for (double v : out.phi) mean += v;
  mean /= n;
  for (double& v : out.phi) v /= mean;

  std::vector<double> rhs(n), next;
  double fission_old = 0.0;
  for (int J = 0; J < n; ++J) fission_old += sys.nu_sigma_f[J] * out.phi[J];

  for (int it = 1; it <= max_iter; ++it) {
    for (int J = 0; J < n; ++J) {
      rhs[J] = sys.nu_sigma_f[J] * out.phi[J] / out.k;
    }
    if (!thomas(lower, diag, upper, rhs, next)) return out;  // not converged

    double fission_new = 0.0;
    for (int J = 0; J < n; ++J) fission_new += sys.nu_sigma_f[J] * next[J];
    if (!(fission_new > 0.0) || !std::isfinite(fission_new)) return out;

    const double k_new = out.k * fission_new / fission_old;

    double diff2 = 0.0, norm2 = 0.0;
    for (int J = 0; J < n; ++J) {
      const double d = next[J] - out.phi[J];
      diff2 += d * d;
      norm2 += next[J] * next[J];
    }
    const double res = std::sqrt(diff2 / norm2);
    const double dk = std::abs(k_new - out.k) / k_new;

    out.phi = next;
    double m2 = 0.0;
    for (double v : out.phi) m2 += v;
    m2 /= n;
    for (double& v : out.phi) v /= m2;
    fission_old = 0.0;
    for (int J = 0; J < n; ++J) fission_old += sys.nu_sigma_f[J] * out.phi[J];

    out.k = k_new;
    out.iterations = it;
    if (res < 1e-13 && dk < 1e-13) {
      out.converged = true;
      return out;
    }
  }
  return out;
}

ProlongationResult prolongate_linear(FluxState& state,
                                     std::span<const double> coarse_old,
                                     std::span<const double> coarse_new,
                                     const Mesh& mesh, int p) {
  const int nc = static_cast<int>(coarse_old.size());
  ProlongationResult out;

  std::vector<double> ratio(nc);
  for (int J = 0; J < nc; ++J) {
    if (!(coarse_old[J] > 0.0)) {
      throw NumericsError("prolongate_linear: nonpositive coarse flux");
    }
    double f = coarse_new[J] / coarse_old[J];
    if (!(f >= 0.1 && f <= 10.0)) {
      f = std::clamp(f, 0.1, 10.0);
      ++out.clamped;
    }
    ratio[J] = f;
  }

  const double delta = mesh.dx() * p;
  auto factor_at = [&](double x) {
    const double first_center = 0.5 * delta;
    const double last_center = mesh.L - 0.5 * delta;
    if (x <= first_center) return ratio[0];
    if (x >= last_center) return ratio[nc - 1];
    const double s = (x - first_center) / delta;
    const int J = std::min(static_cast<int>(s), nc - 2);
    const double t = s - J;
    return (1.0 - t) * ratio[J] + t * ratio[J + 1];
  };

  for (int i = 0; i < mesh.n; ++i) {
    state.phi[i] *= factor_at(mesh.center(i));
  }
  const double f_left = ratio[0];
  const double f_right = ratio[nc - 1];
  for (double& v : state.bc_left) v *= f_left;
  for (double& v : state.bc_right) v *= f_right;
  renormalize(state);
  return out;
}

AcceleratedInnerResult accelerated_power_iterate(FluxState& state,
                                                 const CellXs& xs,
                                                 const QuadratureSet& quad,
                                                 const Mesh& mesh,
                                                 const StoppingRule& rule,
                                                 int p) {
  AcceleratedInnerResult result;
  SweepOutput sweep;
  std::vector<double> q;
  std::vector<double> prev_phi;

  double fission_old = fission_integral(state.phi, xs, mesh.dx());
  for (int it = 1; it <= rule.cap; ++it) {
    prev_phi = state.phi;
    q = assemble_source(state.phi, xs, state.k_eff);
    dd_sweep(q, xs.sigma_t, quad, mesh, sweep);

    const double fission_new = fission_integral(sweep.phi, xs, mesh.dx());
    state.k_eff = k_update(state.k_eff, fission_new, fission_old);

    state.phi = sweep.phi;
    state.bc_left = sweep.in_left;
    state.bc_right = sweep.in_right;

    bool accelerated = false;
    try {
      const CoarseSystem sys = build_coarse(state.phi, sweep.face_current, xs,
                                            mesh, p, state.k_eff);
      const LowOrderResult low = solve_low_order(sys);
      if (low.converged) {
        prolongate_linear(state, sys.phi, low.phi, mesh, p);
        state.k_eff = low.k;
        accelerated = true;
      }
    } catch (const NumericsError&) {
      // fall through to the unaccelerated update
    }
    if (!accelerated) {
      ++result.fallback_count;
      renormalize(state);
    }
    fission_old = fission_integral(state.phi, xs, mesh.dx());

    // Consecutive accelerated iterates (both mean-1). The eigenvalue needs
    // no residual of its own here: the low-order solve pins it each pass.
    const double r_n = flux_residual(state.phi, prev_phi);
    result.residuals.push_back(r_n);
    result.iterations = it;
    result.negative_flux_cells = sweep.negative_cells;
    result.max_balance_residual = sweep.max_balance_rel;
    if (r_n <= rule.tolerance) return result;
  }
  result.hit_cap = true;
  return result;
}

}  // namespace picfa
