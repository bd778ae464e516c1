#ifndef PICFA_TRANSPORT_HPP
#define PICFA_TRANSPORT_HPP

#include <span>
#include <vector>

#include "model.hpp"

namespace picfa {

struct Mesh {
  double L;
  int n;

  double dx() const { return L / n; }
  double center(int i) const { return (i + 0.5) * dx(); }
};

// Per-cell effective cross sections for the whole mesh.
struct CellXs {
  std::vector<double> sigma_t;
  std::vector<double> sigma_s;
  std::vector<double> nu_sigma_f;
  std::vector<double> sigma_a;
};

CellXs evaluate_xs(const CrossSectionSet& xs, std::span<const double> T);

// Transport iterate: mean-1 scalar flux, eigenvalue estimate, and the
// reflective closure state (incoming angular flux at both boundaries, one
// entry per quadrature direction). The sweep resolves the reflective
// coupling exactly and writes the closure back here; the values scale with
// the flux under renormalization and prolongation.
struct FluxState {
  std::vector<double> phi;
  std::vector<double> bc_left;   // incoming at x = 0, indexed by direction
  std::vector<double> bc_right;  // incoming at x = L, indexed by direction
  double k_eff = 1.0;
};

// Flat flux, k = 1, isotropic boundary state consistent with phi = 1.
FluxState make_initial_state(const Mesh& mesh, const QuadratureSet& quad);

// q_i = (sigma_s,i * phi_i + nu_sigma_f,i * phi_i / k) / 2
std::vector<double> assemble_source(std::span<const double> phi,
                                    const CellXs& xs, double k);

struct SweepOutput {
  std::vector<double> phi;           // raw scalar flux, not normalized
  std::vector<double> face_current;  // net current at the n+1 cell faces
  std::vector<double> in_left;       // closure: incoming at x = 0 per direction
  std::vector<double> in_right;      // closure: incoming at x = L per direction
  int negative_cells = 0;            // diamond undershoots (permitted, flagged)
  double max_balance_rel = 0.0;      // worst per-cell balance residual / (q dx)

  void resize(int n, int n_dir);
};

// One diamond-difference sweep over all directions. The reflective boundary
// condition is resolved exactly within the sweep: each +/-mu pair is affine
// in its incoming boundary flux, so the closed-loop incoming values have a
// closed form. Flat states therefore stay exactly flat, and the sweep is
// independent of any previous boundary data.
void dd_sweep(std::span<const double> q, std::span<const double> sigma_t,
              const QuadratureSet& quad, const Mesh& mesh, SweepOutput& out);

// || phi_new - phi_old ||_2 / || phi_new ||_2
double flux_residual(std::span<const double> phi_new,
                     std::span<const double> phi_old);

// k_new = k_old * fission_new / fission_old
double k_update(double k_old, double fission_new, double fission_old);

double fission_integral(std::span<const double> phi, const CellXs& xs,
                        double dx);

struct StoppingRule {
  double tolerance;
  int cap;
};

struct InnerResult {
  int iterations = 0;
  std::vector<double> residuals;  // r_N per inner iteration
  bool hit_cap = false;
  int negative_flux_cells = 0;    // from the last sweep
  double max_balance_residual = 0.0;
};

// Inexact power iteration: one sweep per inner iteration with both the
// scattering and fission sources lagged. Stops as soon as the relative flux
// residual (raw sweep output vs. previous iterate) drops to the tolerance;
// the last iterate is returned without further polishing. The residual is
// measured before renormalization so that eigenvalue drift is not masked on
// problems whose flux shape is already converged.
InnerResult power_iterate(FluxState& state, const CellXs& xs,
                          const QuadratureSet& quad, const Mesh& mesh,
                          const StoppingRule& rule);

// Restores mean(phi) = 1, scaling the boundary state by the same factor.
void renormalize(FluxState& state);

}  // namespace picfa

#endif
