#ifndef PICFA_THERMAL_HPP
#define PICFA_THERMAL_HPP

#include <span>
#include <vector>

#include "model.hpp"

namespace picfa {

// Admissible fuel temperature band; leaving it signals divergence.
inline constexpr double kTemperatureMin = 200.0;
inline constexpr double kTemperatureMax = 4000.0;

// Lumped fuel-pin heat model: T_i = T_m,i + A * nu_sigma_f(T_old,i) * phi_i.
// The conventional nu is absorbed into A, so the fission-rate coefficient is
// the nu-weighted fission cross section.
struct ThermalModel {
  double A = 0.0;                // K cm (so that A * Sigma_f * phi is in K)
  std::vector<double> T_m;       // per-cell coolant temperature (K)
};

// Sum of the four pin resistances: fuel conduction, gap, clad conduction,
// coolant film.
double thermal_resistance(double k_f, double r_g, double h_g, double k_c,
                          double r_ci, double r_co, double h);

// Calibrates A so that a mean-1 flux at the reference temperature produces
// exactly delta_T of fuel-coolant rise: A * nu_sigma_f0 = delta_T.
double calibrate_A(double delta_T, const CrossSectionSet& xs);

// A = pi * r_fo^2 * kappa * R_t (explicit heat-path route).
double heat_path_A(const HeatPath& hp);

// T_new,i = T_m,i + A * nu_sigma_f(T_old,i) * phi_i, with the cross section
// evaluated at the lagged temperature. Throws UnphysicalStateError when a
// result leaves [kTemperatureMin, kTemperatureMax].
std::vector<double> update_temperature(std::span<const double> phi,
                                       std::span<const double> T_old,
                                       const ThermalModel& model,
                                       const CrossSectionSet& xs);

// Axial coolant profile by cumulative heat balance, evaluated at cell
// centers (half of the local cell's power counts toward its own center).
std::vector<double> coolant_profile(std::span<const double> q_lin,
                                    double T_inlet, double rise);

}  // namespace picfa

#endif
