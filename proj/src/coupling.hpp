#ifndef PICFA_COUPLING_HPP
#define PICFA_COUPLING_HPP

#include <span>
#include <string>
#include <vector>

#include "accel.hpp"
#include "thermal.hpp"
#include "transport.hpp"

namespace picfa {

enum class SolveStatus { Converged, Diverged, IterationCap };

struct OuterRecord {
  int outer_index = 0;   // 1-based
  double r_T = 0.0;
  int inner_iterations = 0;
  double final_r_N = 0.0;
  double k_eff = 0.0;
  double inner_tolerance = 0.0;
  double seconds = 0.0;
};

struct PicardHistory {
  std::vector<OuterRecord> outers;
  SolveStatus status = SolveStatus::IterationCap;
  std::string divergence_reason;
  int total_inner = 0;   // including the final polish solve
  int polish_inner = 0;

  std::vector<double> r_T_sequence() const;
};

struct CoupledState {
  FluxState flux;
  std::vector<double> T;    // fuel temperature (K)
  std::vector<double> T_m;  // coolant temperature (K)
};

struct CoupledResult {
  CoupledState state;
  PicardHistory history;
};

// || T_new - T_old ||_2 / || T_new ||_2
double temperature_residual(std::span<const double> T_new,
                            std::span<const double> T_old);

// max(tau * r_T_prev, floor); adaptive mode only (tau > 0).
double inner_tolerance(double tau, double r_T_prev, double floor);

struct RhoEstimate {
  bool available = false;
  double rho_hat = 0.0;
  int window = 0;
  std::vector<double> ratios;
};

// Geometric mean of the last m residual ratios r^(k+1)/r^(k). Needs at
// least m+1 positive residuals.
RhoEstimate estimate_spectral_radius(std::span<const double> residuals, int m);

enum class GuardVerdict { Continue, Diverged };

// Divergence when r_T rose over 5 consecutive outer iterations, r_T > 10,
// or any temperature left the physical band.
GuardVerdict divergence_guard(std::span<const double> r_T_history,
                              std::span<const double> T_current,
                              std::string* reason = nullptr);

// Initial fuel temperature: the nominal profile T_m + delta_T with a 10%
// cosine perturbation of the rise. The perturbation excites the slowest
// spatial error mode so convergence-rate measurements see a non-trivial
// transient; a flat start would confine the homogeneous constant-coolant
// problem to its flat-mode subspace.
std::vector<double> make_initial_temperature(const Problem& p);

// The outer Picard loop: alternates an inexact neutronics solve (plain or
// lpCMFD-accelerated per settings) with the thermal update, stopping when
// the relative temperature residual reaches epsilon_T. After acceptance one
// final inner solve at epsilon_phi polishes the returned flux.
CoupledResult picard_solve(const Problem& p);

}  // namespace picfa

#endif
