#include "transport.hpp"

#include <cmath>
#include <numeric>

#include "errors.hpp"

namespace picfa {

CellXs evaluate_xs(const CrossSectionSet& xs, std::span<const double> T) {
  CellXs out;
  const int n = static_cast<int>(T.size());
  out.sigma_t.resize(n);
  out.sigma_s.resize(n);
  out.nu_sigma_f.resize(n);
  out.sigma_a.resize(n);
  for (int i = 0; i < n; ++i) {
    const EffectiveXs e = xs_at_temperature(xs, T[i]);
    out.sigma_t[i] = e.sigma_t;
    out.sigma_s[i] = e.sigma_s;
    out.nu_sigma_f[i] = e.nu_sigma_f;
    out.sigma_a[i] = e.sigma_a;
  }
  return out;
}

FluxState make_initial_state(const Mesh& mesh, const QuadratureSet& quad) {
  FluxState s;
  s.phi.assign(mesh.n, 1.0);
  // phi = sum_m w_m psi_m with sum w = 2, so the isotropic angular flux
  // consistent with phi = 1 is 1/2.
  s.bc_left.assign(quad.order(), 0.5);
  s.bc_right.assign(quad.order(), 0.5);
  s.k_eff = 1.0;
  return s;
}

std::vector<double> assemble_source(std::span<const double> phi,
                                    const CellXs& xs, double k) {
  if (!(k > 0.0)) throw NumericsError("assemble_source: k must be positive");
  std::vector<double> q(phi.size());
  const double inv_k = 1.0 / k;
  for (size_t i = 0; i < phi.size(); ++i) {
    q[i] = 0.5 * (xs.sigma_s[i] + xs.nu_sigma_f[i] * inv_k) * phi[i];
  }
  return q;
}

void SweepOutput::resize(int n, int n_dir) {
  phi.assign(n, 0.0);
  face_current.assign(n + 1, 0.0);
  in_left.assign(n_dir, 0.0);
  in_right.assign(n_dir, 0.0);
  negative_cells = 0;
  max_balance_rel = 0.0;
}

void dd_sweep(std::span<const double> q, std::span<const double> sigma_t,
              const QuadratureSet& quad, const Mesh& mesh, SweepOutput& out) {
  const int n = mesh.n;
  const int n_dir = quad.order();
  const double dx = mesh.dx();
  out.resize(n, n_dir);

  // Per direction pair: face values for a zero-incoming sweep plus the
  // attenuation prefix, so the true face flux is psi0 + in * atten.
  std::vector<double> psi0_pos(n + 1), atten_pos(n + 1);
  std::vector<double> psi0_neg(n + 1), atten_neg(n + 1);

  const int half = n_dir / 2;
  for (int pair = 0; pair < half; ++pair) {
    const int m_neg = pair;              // mu < 0, descending |mu| ordering
    const int m_pos = n_dir - 1 - pair;  // mirrored mu > 0
    const double a = quad.mu[m_pos];
    const double w = quad.weight[m_pos];

    // Zero-incoming sweep of the +mu direction, left to right.
    psi0_pos[0] = 0.0;
    atten_pos[0] = 1.0;
    for (int i = 0; i < n; ++i) {
      const double half_tau = 0.5 * sigma_t[i] * dx;
      const double inv = 1.0 / (a + half_tau);
      const double c = (a - half_tau) * inv;
      psi0_pos[i + 1] = q[i] * dx * inv + c * psi0_pos[i];
      atten_pos[i + 1] = c * atten_pos[i];
    }
    // Zero-incoming sweep of the -mu direction, right to left.
    psi0_neg[n] = 0.0;
    atten_neg[n] = 1.0;
    for (int i = n - 1; i >= 0; --i) {
      const double half_tau = 0.5 * sigma_t[i] * dx;
      const double inv = 1.0 / (a + half_tau);
      const double c = (a - half_tau) * inv;
      psi0_neg[i] = q[i] * dx * inv + c * psi0_neg[i + 1];
      atten_neg[i] = c * atten_neg[i + 1];
    }

    // Reflective closure: in_left(+mu) = out_left(-mu) and
    // in_right(-mu) = out_right(+mu). Both sweeps are affine in their
    // incoming value with the same total attenuation A, so
    //   x = A^2 x + A B + Bt  with  B = psi0_pos[n], Bt = psi0_neg[0].
    const double A = atten_pos[n];
    const double B = psi0_pos[n];
    const double Bt = psi0_neg[0];
    const double x = (A * B + Bt) / (1.0 - A * A);  // incoming at x = 0, +mu
    const double y = A * x + B;                     // incoming at x = L, -mu
    out.in_left[m_pos] = x;
    out.in_right[m_neg] = y;

    // Accumulate moments and diagnostics from the closed-loop face fluxes.
    out.face_current[0] += w * a * x - w * a * (psi0_neg[0] + y * atten_neg[0]);
    for (int i = 0; i < n; ++i) {
      const double pos_in = psi0_pos[i] + x * atten_pos[i];
      const double pos_out = psi0_pos[i + 1] + x * atten_pos[i + 1];
      const double neg_in = psi0_neg[i + 1] + y * atten_neg[i + 1];
      const double neg_out = psi0_neg[i] + y * atten_neg[i];
      const double pos_cell = 0.5 * (pos_in + pos_out);
      const double neg_cell = 0.5 * (neg_in + neg_out);
      out.phi[i] += w * (pos_cell + neg_cell);
      if (pos_cell < 0.0) ++out.negative_cells;
      if (neg_cell < 0.0) ++out.negative_cells;
      out.face_current[i + 1] +=
          w * a * pos_out - w * a * (psi0_neg[i + 1] + y * atten_neg[i + 1]);

      const double scale = std::abs(q[i]) * dx;
      if (scale > 0.0) {
        const double res_pos = a * (pos_out - pos_in) +
                               sigma_t[i] * pos_cell * dx - q[i] * dx;
        const double res_neg = -a * (neg_in - neg_out) +
                               sigma_t[i] * neg_cell * dx - q[i] * dx;
        const double rel =
            std::max(std::abs(res_pos), std::abs(res_neg)) / scale;
        if (rel > out.max_balance_rel) out.max_balance_rel = rel;
      }
    }
  }
}

double flux_residual(std::span<const double> phi_new,
                     std::span<const double> phi_old) {
  double diff2 = 0.0;
  double norm2 = 0.0;
  for (size_t i = 0; i < phi_new.size(); ++i) {
    const double d = phi_new[i] - phi_old[i];
    diff2 += d * d;
    norm2 += phi_new[i] * phi_new[i];
  }
  if (!(norm2 > 0.0)) {
    throw NumericsError("flux_residual: zero norm of new iterate");
  }
  return std::sqrt(diff2 / norm2);
}

double k_update(double k_old, double fission_new, double fission_old) {
  if (!(fission_new > 0.0) || !(fission_old > 0.0)) {
    throw NumericsError("k_update: nonpositive fission integral");
  }
  return k_old * fission_new / fission_old;
}

double fission_integral(std::span<const double> phi, const CellXs& xs,
                        double dx) {
  double sum = 0.0;
  for (size_t i = 0; i < phi.size(); ++i) sum += xs.nu_sigma_f[i] * phi[i];
  return sum * dx;
}

void renormalize(FluxState& state) {
  const double mean =
      std::accumulate(state.phi.begin(), state.phi.end(), 0.0) /
      static_cast<double>(state.phi.size());
  if (!(mean > 0.0)) {
    throw NumericsError("renormalize: nonpositive mean flux");
  }
  const double f = 1.0 / mean;
  for (double& v : state.phi) v *= f;
  for (double& v : state.bc_left) v *= f;
  for (double& v : state.bc_right) v *= f;
}

InnerResult power_iterate(FluxState& state, const CellXs& xs,
                          const QuadratureSet& quad, const Mesh& mesh,
                          const StoppingRule& rule) {
  const Mesh& m = mesh;
  InnerResult result;
  SweepOutput sweep;
  std::vector<double> q;

  double fission_old = fission_integral(state.phi, xs, m.dx());
  for (int it = 1; it <= rule.cap; ++it) {
    q = assemble_source(state.phi, xs, state.k_eff);
    dd_sweep(q, xs.sigma_t, quad, m, sweep);

    const double r_n = flux_residual(sweep.phi, state.phi);
    const double fission_new = fission_integral(sweep.phi, xs, m.dx());
    state.k_eff = k_update(state.k_eff, fission_new, fission_old);

    state.phi = sweep.phi;
    state.bc_left = sweep.in_left;
    state.bc_right = sweep.in_right;
    renormalize(state);
    fission_old = fission_integral(state.phi, xs, m.dx());

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
