#ifndef PICFA_MODEL_HPP
#define PICFA_MODEL_HPP

#include <optional>
#include <string>
#include <vector>

namespace picfa {

// One-group macroscopic cross sections at the reference temperature plus
// linear relative temperature coefficients. Scattering is taken
// temperature-independent, so sigma_t(T) = sigma_s0 + sigma_a(T) and the
// identity sigma_t = sigma_s + sigma_a holds for every T by construction.
struct CrossSectionSet {
  double sigma_t0 = 0.534;      // total XS at T_ref (1/cm)
  double nu_sigma_f0 = 0.0255;  // nu * fission XS at T_ref (1/cm)
  double c0 = 0.96;             // scattering ratio sigma_s0 / sigma_t0
  double sigma_f1_rel = -2.59e-5;  // (dSigma_f/dT)/Sigma_f0 (1/K)
  double sigma_a1_rel = 9.63e-6;   // (dSigma_a/dT)/Sigma_a0 (1/K)
  double T_ref = 850.0;            // reference temperature (K)

  double sigma_s0() const { return c0 * sigma_t0; }
  double sigma_a0() const { return (1.0 - c0) * sigma_t0; }
};

// Cross sections evaluated at one temperature.
struct EffectiveXs {
  double sigma_t;
  double sigma_s;
  double nu_sigma_f;
  double sigma_a;
};

// Linear evaluation about T_ref. Throws UnphysicalStateError if the result
// has sigma_a <= 0 or sigma_t <= 0 (signals coupling divergence).
EffectiveXs xs_at_temperature(const CrossSectionSet& xs, double T);

// Symmetric angular quadrature on [-1,1]; weights sum to 2.
struct QuadratureSet {
  std::vector<double> mu;
  std::vector<double> weight;

  int order() const { return static_cast<int>(mu.size()); }
};

// Gauss-Legendre nodes and weights, n even, 2 <= n <= 64.
QuadratureSet gauss_legendre(int n);

enum class CoolantMode { Constant, HeatBalance };
enum class AccelScheme { None, LpCmfd };

// Explicit fuel-pin heat path: conduction/gap/clad/film resistances and the
// pin radius + conversion factor that turn a fission rate into a linear heat
// rate. Used only when the lumped coefficient is not calibrated from delta_T.
struct HeatPath {
  double k_f;    // fuel conductivity (W/cm-K)
  double r_g;    // gap radius (cm)
  double h_g;    // gap conductance (W/cm^2-K)
  double k_c;    // clad conductivity (W/cm-K)
  double r_ci;   // clad inner radius (cm)
  double r_co;   // clad outer radius (cm)
  double h;      // coolant film coefficient (W/cm^2-K)
  double r_fo;   // fuel pellet outer radius (cm)
  double kappa;  // energy per fission-rate unit
};

struct SlabModel {
  double L = 150.0;  // slab height (cm)
  int n_cells = 300;
  int sn_order = 12;
  CoolantMode coolant_mode = CoolantMode::Constant;
  double T_m = 575.0;     // coolant temperature, or inlet in heat-balance mode (K)
  double delta_T = 275.0; // target fuel-coolant rise at nominal power (K)
  double coolant_rise = 50.0;  // axial coolant rise in heat-balance mode (K)
  std::optional<HeatPath> heat_path;  // overrides delta_T calibration when set
};

struct CouplingSettings {
  double epsilon_T = 1e-7;    // outer fuel-temperature tolerance
  double epsilon_phi = 1e-8;  // final flux tolerance; floor of the adaptive rule
  double tau = 0.0;           // forcing parameter; 0 means fixed tolerance
  int max_outer = 400;
  int max_inner = 200000;
  AccelScheme accel = AccelScheme::None;
  int coarsening = 10;  // fine cells per coarse cell
  int j_max = 64;       // Fourier modes scanned by the predictor
};

struct Problem {
  CrossSectionSet xs;
  SlabModel model;
  CouplingSettings settings;
};

// Checks every type invariant and returns the full list of violations
// (empty means valid). Messages name the offending field.
std::vector<std::string> validate(const Problem& p);

}  // namespace picfa

#endif
