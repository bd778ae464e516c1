#ifndef PICFA_FOURIER_HPP
#define PICFA_FOURIER_HPP

#include <vector>

namespace picfa {

// Inputs of the closed-form convergence predictor. rho_N is the spectral
// radius of whatever inner solver is in use (measured, or arctan(xi)/xi for
// the plain power iteration).
struct FaInput {
  double sigma_t0;
  double c0;
  double sigma_f1_rel;
  double sigma_a1_rel;
  double L;
  double T0;
  double T_m;
  double rho_N;
  int j_max = 64;
};

// Spectral radius function of the lagged-source power iteration,
// arctan(xi)/xi, with a series branch near xi = 0 to avoid cancellation.
double rho_pi(double xi);

// Discrete error modes xi_j = pi j / (sigma_t0 L), j = 1..j_max. The symbol
// is even in xi, so only positive j are produced.
std::vector<double> modes(double L, double sigma_t0, int j_max);

// Perturbation amplification constant C = rho_N/(1-rho_N) * (1-rho)/rho.
double constant_C(double rho_N, double rho);

// Mode gain of the perturbed coupled iteration:
//   (T0 - Tm) [ sign*tau*C/T0 + f1 - (a1 - f1)(1 - c0) rho_pi/(1 - rho_pi) ]
// with f1, a1 the relative temperature coefficients. sign is +1 or -1.
double varrho(double xi, const FaInput& in, double tau, double C, int sign);

struct ModeRow {
  int j;
  double xi;
  double rho_pi;
  double varrho0;  // gain at tau = 0
};

struct FaPrediction {
  std::vector<ModeRow> table;
  double rho0 = 0.0;     // unperturbed spectral radius, max_j |varrho(xi_j; 0)|
  double C = 0.0;        // amplification constant at (rho_N, rho0)
  double rho_tau = 0.0;  // perturbed spectral radius at the requested tau
  double tau_max = 0.0;  // critical forcing parameter (inf if unbounded)
  int dominant_j = 0;
  double feedback_bracket = 0.0;  // |bracket of the dominant mode| at tau = 0
  bool unstable_unperturbed = false;  // rho0 >= 1: C and tau analysis skipped
};

// Two-stage evaluation: rho0 from the tau = 0 scan, then C from
// (rho_N, rho0), then the perturbed scan over both signs at the given tau.
FaPrediction predict_rho(const FaInput& in, double tau);

// Closed form for the stability boundary rho_tau(tau) = 1:
//   tau_max = (1 - rho0) T0 / ((T0 - Tm) C).
// Returns +inf when C = 0 and 0 when rho0 >= 1.
double tau_max(const FaInput& in);

// Bisection on rho_tau(tau) = 1; cross-checks the closed form.
double tau_max_bisect(const FaInput& in, double tol = 1e-12);

// Optional self-consistent variant: iterates rho = max|varrho(xi; C(rho))|
// with damping until the fixed point. Exploration aid only.
double predict_rho_self_consistent(const FaInput& in, double tau,
                                   int max_iter = 200, double damping = 0.5);

}  // namespace picfa

#endif
