#include "thermal.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "errors.hpp"

namespace picfa {

double thermal_resistance(double k_f, double r_g, double h_g, double k_c,
                          double r_ci, double r_co, double h) {
  if (!(k_f > 0 && r_g > 0 && h_g > 0 && k_c > 0 && r_ci > 0 && r_co > 0 &&
        h > 0)) {
    throw ConfigError("thermal_resistance: all parameters must be positive");
  }
  if (!(r_co > r_ci)) {
    throw ConfigError("thermal_resistance: r_co must exceed r_ci");
  }
  const double fuel = 1.0 / (8.0 * M_PI * k_f);
  const double gap = 1.0 / (2.0 * M_PI * r_g * h_g);
  const double clad = std::log(r_co / r_ci) / (2.0 * M_PI * k_c);
  const double film = 1.0 / (2.0 * M_PI * r_co * h);
  return fuel + gap + clad + film;
}

double calibrate_A(double delta_T, const CrossSectionSet& xs) {
  if (delta_T < 0.0) {
    throw ConfigError("calibrate_A: delta_T must be >= 0");
  }
  return delta_T / xs.nu_sigma_f0;
}

double heat_path_A(const HeatPath& hp) {
  const double rt = thermal_resistance(hp.k_f, hp.r_g, hp.h_g, hp.k_c,
                                       hp.r_ci, hp.r_co, hp.h);
  return M_PI * hp.r_fo * hp.r_fo * hp.kappa * rt;
}

std::vector<double> update_temperature(std::span<const double> phi,
                                       std::span<const double> T_old,
                                       const ThermalModel& model,
                                       const CrossSectionSet& xs) {
  std::vector<double> T_new(phi.size());
  for (size_t i = 0; i < phi.size(); ++i) {
    const double nu_sigma_f =
        xs.nu_sigma_f0 * (1.0 + xs.sigma_f1_rel * (T_old[i] - xs.T_ref));
    T_new[i] = model.T_m[i] + model.A * nu_sigma_f * phi[i];
    if (!(T_new[i] >= kTemperatureMin && T_new[i] <= kTemperatureMax)) {
      std::ostringstream msg;
      msg << "update_temperature: cell " << i << " left the physical band ("
          << T_new[i] << " K)";
      throw UnphysicalStateError(msg.str());
    }
  }
  return T_new;
}

std::vector<double> coolant_profile(std::span<const double> q_lin,
                                    double T_inlet, double rise) {
  if (rise < 0.0) throw ConfigError("coolant_profile: rise must be >= 0");
  const double total = std::accumulate(q_lin.begin(), q_lin.end(), 0.0);
  std::vector<double> T_m(q_lin.size(), T_inlet);
  if (rise == 0.0) return T_m;
  if (!(total > 0.0)) {
    throw ConfigError("coolant_profile: total power must be positive when rise > 0");
  }
  double below = 0.0;  // heat deposited upstream of the current cell
  for (size_t i = 0; i < q_lin.size(); ++i) {
    T_m[i] = T_inlet + rise * (below + 0.5 * q_lin[i]) / total;
    below += q_lin[i];
  }
  return T_m;
}

}  // namespace picfa
