#ifndef PICFA_ACCEL_HPP
#define PICFA_ACCEL_HPP

#include <span>
#include <vector>

#include "transport.hpp"

namespace picfa {

// One-group coarse-mesh finite-difference system built on top of a fine
// transport iterate. Interior face currents follow the drift form
//   J_f = -D_tilde (Phi_R - Phi_L) + D_hat (Phi_R + Phi_L)
// with D_hat chosen so the formula reproduces the fine-mesh current exactly
// at construction. Boundary faces carry a pure drift term J = D_hat * Phi.
struct CoarseSystem {
  int p = 1;           // fine cells per coarse cell
  double delta = 0.0;  // coarse cell width
  std::vector<double> phi;         // coarse cell-average flux
  std::vector<double> sigma_a;     // flux-weighted absorption XS
  std::vector<double> nu_sigma_f;  // flux-weighted fission production XS
  std::vector<double> d_tilde;     // interior face diffusion coupling, size N-1
  std::vector<double> d_hat;       // interior face drift, size N-1
  double d_hat_left = 0.0;         // boundary drift terms
  double d_hat_right = 0.0;
  double k = 1.0;                  // eigenvalue carried from the fine state

  int n_coarse() const { return static_cast<int>(phi.size()); }
};

// Restriction + homogenization + exact current matching. `fine_phi` is the
// raw swept flux, `face_current` the matching fine-face net currents.
CoarseSystem build_coarse(std::span<const double> fine_phi,
                          std::span<const double> face_current,
                          const CellXs& xs, const Mesh& mesh, int p,
                          double k);

struct LowOrderResult {
  std::vector<double> phi;
  double k = 1.0;
  bool converged = false;
  int iterations = 0;
};

// Solves the coarse k-eigenproblem (tridiagonal loss operator, reflective
// ends) by power iteration with Thomas solves, to ~1e-13 on flux and k.
LowOrderResult solve_low_order(const CoarseSystem& sys, int max_iter = 50000);

struct ProlongationResult {
  int clamped = 0;  // coarse ratios pushed back into [0.1, 10]
};

// Multiplicative correction ratios Phi_new/Phi_old anchored at coarse-cell
// centers, piecewise-linearly interpolated to fine-cell centers with a flat
// extension over the two boundary half-cells. Also scales the boundary
// angular-flux state, then renormalizes to mean 1.
ProlongationResult prolongate_linear(FluxState& state,
                                     std::span<const double> coarse_old,
                                     std::span<const double> coarse_new,
                                     const Mesh& mesh, int p);

struct AcceleratedInnerResult : InnerResult {
  int fallback_count = 0;  // iterations where the low-order solve failed
};

// Inexact power iteration with one lpCMFD update per sweep. Stopping-rule
// semantics match power_iterate: the residual is the raw sweep output
// against the previous iterate, measured before the low-order update.
AcceleratedInnerResult accelerated_power_iterate(FluxState& state,
                                                 const CellXs& xs,
                                                 const QuadratureSet& quad,
                                                 const Mesh& mesh,
                                                 const StoppingRule& rule,
                                                 int p);

}  // namespace picfa

#endif
