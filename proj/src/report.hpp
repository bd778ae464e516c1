#ifndef PICFA_REPORT_HPP
#define PICFA_REPORT_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coupling.hpp"
#include "fourier.hpp"

namespace picfa {

// Measured asymptotic contraction rate of the inner solver on the initial
// state: converge moderately, kick the flux with the slowest cosine mode,
// then track residual ratios over up to 50 further iterations.
struct InnerRateProbe {
  bool available = false;
  double rho_hat = 0.0;
  int iterations_used = 0;
  std::vector<double> residuals;
};

InnerRateProbe measure_inner_rate(const Problem& p);

// Outer-rate estimate from a Picard history. Ratios polluted by the inner
// truncation noise floor are excluded before the last-10 geometric mean:
// the floor is inner_floor * rho_N/(1-rho_N) amplification mapped into a
// temperature residual, and ratios below 100x that bound are dropped.
struct OuterRateEstimate {
  bool available = false;
  double rho_hat = 0.0;
  int window = 0;
  double noise_floor = 0.0;
};

OuterRateEstimate estimate_outer_rate(const Problem& p,
                                      const PicardHistory& history,
                                      double rho_N);

struct HistoryRow {
  int outer_index;
  std::string tau_label;
  int inner_iters;
  double r_T;
  double r_N;
  double k_eff;
};

// Key/value report plus the flattened per-iteration table; every number is
// produced by a module call, the report layer only aggregates and sums.
struct RunReport {
  std::vector<std::pair<std::string, std::string>> items;
  std::vector<HistoryRow> history_rows;
  std::vector<ModeRow> mode_rows;
  SolveStatus status = SolveStatus::Converged;

  void put(const std::string& key, const std::string& value);
  void put(const std::string& key, double value);
  void put(const std::string& key, int value);
  std::optional<std::string> find(const std::string& key) const;
  std::optional<double> find_number(const std::string& key) const;
};

std::string format_g9(double v);

// Experiment drivers. Each validates, runs, and writes `report.csv` plus
// `history.csv` (and `modes.csv` for the Fourier report) under out_dir.
RunReport run_case(const Problem& p, const std::string& out_dir);
RunReport experiment_fig1(const Problem& p, const std::vector<double>& taus,
                          const std::string& out_dir);
RunReport experiment_tau_scan(const Problem& p, double tau_lo, double tau_hi,
                              int iters, const std::string& out_dir);
RunReport fourier_report(const Problem& p, const std::string& out_dir);

}  // namespace picfa

#endif
