#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "config.hpp"
#include "errors.hpp"

namespace picfa {

std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void RunReport::put(const std::string& key, const std::string& value) {
  items.emplace_back(key, value);
}
void RunReport::put(const std::string& key, double value) {
  items.emplace_back(key, format_g9(value));
}
void RunReport::put(const std::string& key, int value) {
  items.emplace_back(key, std::to_string(value));
}

std::optional<std::string> RunReport::find(const std::string& key) const {
  for (const auto& [k, v] : items) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::optional<double> RunReport::find_number(const std::string& key) const {
  const auto v = find(key);
  if (!v) return std::nullopt;
  try {
    return std::stod(*v);
  } catch (...) {
    return std::nullopt;
  }
}

namespace {

const char* status_label(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::Diverged: return "diverged";
    case SolveStatus::IterationCap: return "cap";
  }
  return "unknown";
}

double nominal_rise(const Problem& p) {
  return p.model.heat_path ? heat_path_A(*p.model.heat_path) * p.xs.nu_sigma_f0
                           : p.model.delta_T;
}

// Mean coolant temperature: the heat-balance profile averages to the inlet
// plus half the axial rise.
double mean_coolant(const Problem& p) {
  return p.model.coolant_mode == CoolantMode::HeatBalance
             ? p.model.T_m + 0.5 * p.model.coolant_rise
             : p.model.T_m;
}

FaInput make_fa_input(const Problem& p, double rho_N) {
  FaInput in;
  in.sigma_t0 = p.xs.sigma_t0;
  in.c0 = p.xs.c0;
  in.sigma_f1_rel = p.xs.sigma_f1_rel;
  in.sigma_a1_rel = p.xs.sigma_a1_rel;
  in.L = p.model.L;
  in.T_m = mean_coolant(p);
  in.T0 = mean_coolant(p) + nominal_rise(p);
  in.rho_N = rho_N;
  in.j_max = p.settings.j_max;
  return in;
}

void write_report_csv(const std::string& dir, const RunReport& rep) {
  std::ofstream out(std::filesystem::path(dir) / "report.csv");
  out << "key,value\n";
  for (const auto& [k, v] : rep.items) out << k << ',' << v << '\n';
}

void write_history_csv(const std::string& dir, const RunReport& rep) {
  std::ofstream out(std::filesystem::path(dir) / "history.csv");
  out << "outer_index,tau_label,inner_iters,r_T,r_N,k_eff\n";
  for (const auto& r : rep.history_rows) {
    out << r.outer_index << ',' << r.tau_label << ',' << r.inner_iters << ','
        << format_g9(r.r_T) << ',' << format_g9(r.r_N) << ','
        << format_g9(r.k_eff) << '\n';
  }
}

void write_modes_csv(const std::string& dir, const RunReport& rep) {
  std::ofstream out(std::filesystem::path(dir) / "modes.csv");
  out << "j,xi,rho_pi,varrho\n";
  for (const auto& r : rep.mode_rows) {
    out << r.j << ',' << format_g9(r.xi) << ',' << format_g9(r.rho_pi) << ','
        << format_g9(r.varrho0) << '\n';
  }
}

void append_history(RunReport& rep, const PicardHistory& h,
                    const std::string& label) {
  for (const auto& o : h.outers) {
    rep.history_rows.push_back({o.outer_index, label, o.inner_iterations,
                                o.r_T, o.final_r_N, o.k_eff});
  }
}

std::string tau_label_of(const Problem& p) {
  return p.settings.tau > 0.0 ? format_g9(p.settings.tau) : "fixed";
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory `" + dir + "`");
}

void require_valid(const Problem& p) {
  const auto violations = validate(p);
  if (!violations.empty()) {
    std::string msg = "configuration error";
    for (const auto& v : violations) msg += "\n  - " + v;
    throw ConfigError(msg);
  }
}

}  // namespace

InnerRateProbe measure_inner_rate(const Problem& p) {
  InnerRateProbe probe;
  const Mesh mesh{p.model.L, p.model.n_cells};
  const QuadratureSet quad = gauss_legendre(p.model.sn_order);
  const std::vector<double> T = make_initial_temperature(p);
  const CellXs xs = evaluate_xs(p.xs, T);
  FluxState state = make_initial_state(mesh, quad);

  const bool accelerated = p.settings.accel == AccelScheme::LpCmfd;
  auto run = [&](const StoppingRule& rule) {
    if (accelerated) {
      return static_cast<InnerResult>(accelerated_power_iterate(
          state, xs, quad, mesh, rule, p.settings.coarsening));
    }
    return power_iterate(state, xs, quad, mesh, rule);
  };

  // Settle the eigenvalue transient, then kick the slowest error mode.
  run({1e-6, p.settings.max_inner});
  for (int i = 0; i < mesh.n; ++i) {
    state.phi[i] += 0.01 * std::cos(M_PI * mesh.center(i) / mesh.L);
  }

  const InnerResult measured = run({0.0, 50});
  probe.residuals = measured.residuals;
  probe.iterations_used = measured.iterations;

  // Drop the first ratios (kick transient) and anything at the round-off
  // floor, then take the trailing geometric mean.
  const auto& r = measured.residuals;
  int last = static_cast<int>(r.size());
  while (last > 0 && r[last - 1] < 1e-10) --last;
  constexpr int kSkip = 3;
  if (last - kSkip < 4) return probe;
  const std::vector<double> clean(r.begin() + kSkip, r.begin() + last);
  const int m = std::min<int>(10, static_cast<int>(clean.size()) - 1);
  const RhoEstimate est = estimate_spectral_radius(clean, m);
  probe.available = est.available;
  probe.rho_hat = est.rho_hat;
  return probe;
}

OuterRateEstimate estimate_outer_rate(const Problem& p,
                                      const PicardHistory& history,
                                      double rho_N) {
  OuterRateEstimate out;
  if (!(rho_N > 0.0 && rho_N < 1.0)) return out;

  const double rise = nominal_rise(p);
  const double T0 = mean_coolant(p) + rise;
  // Inner truncation leaves a flux error of about tol * rho_N/(1-rho_N),
  // which maps into a temperature-residual floor through the rise/T0 scale.
  // Ratios taken once the residual nears that floor measure the truncation
  // dynamics, not the coupling contraction.
  const double floor_tol = p.settings.epsilon_phi;
  out.noise_floor =
      2.0 * (rise / T0) * rho_N / (1.0 - rho_N) * floor_tol;

  const std::vector<double> r = history.r_T_sequence();
  int last = 0;
  while (last < static_cast<int>(r.size()) &&
         r[last] >= 3.0 * out.noise_floor) {
    ++last;
  }
  constexpr int kSkip = 3;  // transient ratios excluded
  if (last - kSkip < 4) return out;
  const std::vector<double> clean(r.begin() + kSkip, r.begin() + last);
  const int m = static_cast<int>(clean.size()) - 1;
  const RhoEstimate est = estimate_spectral_radius(clean, m);
  out.available = est.available;
  out.rho_hat = est.rho_hat;
  out.window = est.window;
  return out;
}

RunReport run_case(const Problem& p, const std::string& out_dir) {
  require_valid(p);
  ensure_dir(out_dir);

  RunReport rep;
  for (const auto& [k, v] : config_echo(p)) rep.put(k, v);

  const InnerRateProbe probe = measure_inner_rate(p);
  const CoupledResult solved = picard_solve(p);
  rep.status = solved.history.status;
  append_history(rep, solved.history, tau_label_of(p));

  const OuterRateEstimate outer =
      estimate_outer_rate(p, solved.history, probe.rho_hat);

  rep.put("status", status_label(solved.history.status));
  if (!solved.history.divergence_reason.empty()) {
    rep.put("divergence_reason", solved.history.divergence_reason);
  }
  rep.put("outer_iterations", static_cast<int>(solved.history.outers.size()));
  rep.put("total_inner", solved.history.total_inner);
  rep.put("polish_inner", solved.history.polish_inner);
  rep.put("total_sweeps", solved.history.total_inner);
  rep.put("k_eff", solved.state.flux.k_eff);
  if (!solved.history.outers.empty()) {
    rep.put("r_T_final", solved.history.outers.back().r_T);
  }
  rep.put("rho_hat_inner", probe.available ? format_g9(probe.rho_hat) : "n/a");
  rep.put("rho_hat_outer", outer.available ? format_g9(outer.rho_hat) : "n/a");

  if (probe.available) {
    const FaInput fa = make_fa_input(p, probe.rho_hat);
    const FaPrediction pred = predict_rho(fa, p.settings.tau);
    rep.mode_rows = pred.table;
    rep.put("fa_rho0", pred.rho0);
    rep.put("fa_dominant_j", pred.dominant_j);
    rep.put("fa_feedback_bracket", pred.feedback_bracket);
    if (!pred.unstable_unperturbed) {
      if (pred.C > 0.0) {
        rep.put("fa_C", pred.C);
        rep.put("fa_C_over_T0", pred.C / fa.T0);
      }
      rep.put("fa_rho_tau", pred.rho_tau);
      rep.put("fa_tau_max", pred.tau_max);
    }
  }

  write_report_csv(out_dir, rep);
  write_history_csv(out_dir, rep);
  return rep;
}

RunReport experiment_fig1(const Problem& p, const std::vector<double>& taus,
                          const std::string& out_dir) {
  require_valid(p);
  if (p.settings.accel != AccelScheme::LpCmfd) {
    throw ConfigError(
        "fig1 experiment requires `accel = lpcmfd` (reference and adaptive "
        "runs both use the accelerated solver)");
  }
  if (taus.empty()) {
    throw ConfigError("fig1 experiment requires at least one tau value");
  }
  ensure_dir(out_dir);

  RunReport rep;
  for (const auto& [k, v] : config_echo(p)) rep.put(k, v);

  Problem ref = p;
  ref.settings.tau = 0.0;
  const CoupledResult ref_run = picard_solve(ref);
  append_history(rep, ref_run.history, "ref");

  int ref_total = 0;
  int ref_max_inner = 0, ref_argmax = 0;
  for (const auto& o : ref_run.history.outers) {
    ref_total += o.inner_iterations;
    if (o.inner_iterations > ref_max_inner) {
      ref_max_inner = o.inner_iterations;
      ref_argmax = o.outer_index;
    }
  }
  rep.put("ref_status", status_label(ref_run.history.status));
  rep.put("ref_total_inner", ref_total);
  rep.put("ref_polish_inner", ref_run.history.polish_inner);
  rep.put("ref_k_eff", ref_run.state.flux.k_eff);
  rep.put("ref_max_inner_outer_index", ref_argmax);
  rep.status = ref_run.history.status;

  for (double tau : taus) {
    Problem q = p;
    q.settings.tau = tau;
    const std::string label = format_g9(tau);
    const CoupledResult run = picard_solve(q);
    append_history(rep, run.history, label);

    int total = 0;
    for (const auto& o : run.history.outers) total += o.inner_iterations;
    rep.put("tau_" + label + "_status", status_label(run.history.status));
    rep.put("tau_" + label + "_total_inner", total);
    rep.put("tau_" + label + "_polish_inner", run.history.polish_inner);
    rep.put("tau_" + label + "_k_eff", run.state.flux.k_eff);
    if (ref_total > 0) {
      rep.put("tau_" + label + "_savings_percent",
              100.0 * (1.0 - static_cast<double>(total) / ref_total));
    }
  }

  write_report_csv(out_dir, rep);
  write_history_csv(out_dir, rep);
  return rep;
}

RunReport experiment_tau_scan(const Problem& p, double tau_lo, double tau_hi,
                              int iters, const std::string& out_dir) {
  require_valid(p);
  if (!(tau_lo > 0.0) || !(tau_hi > tau_lo)) {
    throw ConfigError("tau scan requires 0 < tau_lo < tau_hi");
  }
  if (iters < 1) throw ConfigError("tau scan requires iters >= 1");
  ensure_dir(out_dir);

  RunReport rep;
  for (const auto& [k, v] : config_echo(p)) rep.put(k, v);

  auto run_at = [&](double tau) {
    Problem q = p;
    q.settings.tau = tau;
    const CoupledResult r = picard_solve(q);
    append_history(rep, r.history, format_g9(tau));
    return r.history.status == SolveStatus::Converged;
  };

  const bool lo_ok = run_at(tau_lo);
  const bool hi_ok = run_at(tau_hi);
  rep.put("tau_lo", tau_lo);
  rep.put("tau_lo_status", lo_ok ? "converged" : "not-converged");
  rep.put("tau_hi", tau_hi);
  rep.put("tau_hi_status", hi_ok ? "converged" : "not-converged");
  if (!lo_ok || hi_ok) {
    write_report_csv(out_dir, rep);
    write_history_csv(out_dir, rep);
    throw ConfigError(
        "tau scan precondition failed: tau_lo must converge and tau_hi must "
        "diverge (tau_lo " + std::string(lo_ok ? "converged" : "did not converge") +
        ", tau_hi " + std::string(hi_ok ? "converged" : "did not converge") + ")");
  }

  double conv = tau_lo, div = tau_hi;
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (conv + div);
    if (run_at(mid)) {
      conv = mid;
    } else {
      div = mid;
    }
  }
  rep.put("tau_converged", conv);
  rep.put("tau_diverged", div);
  rep.put("bracket_width", div - conv);
  rep.put("bisection_steps", iters);

  const InnerRateProbe probe = measure_inner_rate(p);
  rep.put("rho_hat_inner", probe.available ? format_g9(probe.rho_hat) : "n/a");
  if (probe.available) {
    const FaInput fa = make_fa_input(p, probe.rho_hat);
    rep.put("fa_tau_max", tau_max(fa));
  }
  rep.status = SolveStatus::Converged;

  write_report_csv(out_dir, rep);
  write_history_csv(out_dir, rep);
  return rep;
}

RunReport fourier_report(const Problem& p, const std::string& out_dir) {
  require_valid(p);
  ensure_dir(out_dir);

  RunReport rep;
  for (const auto& [k, v] : config_echo(p)) rep.put(k, v);

  const InnerRateProbe probe = measure_inner_rate(p);
  if (!probe.available) {
    throw NumericsError("fourier report: inner-rate probe failed");
  }
  const FaInput fa = make_fa_input(p, probe.rho_hat);
  const FaPrediction pred = predict_rho(fa, p.settings.tau);
  rep.mode_rows = pred.table;

  rep.put("rho_hat_inner", probe.rho_hat);
  rep.put("rho0", pred.rho0);
  rep.put("dominant_j", pred.dominant_j);
  rep.put("feedback_bracket", pred.feedback_bracket);
  if (!pred.unstable_unperturbed) {
    if (pred.C > 0.0) {
      rep.put("C", pred.C);
      rep.put("C_over_T0", pred.C / fa.T0);
    }
    rep.put("rho_tau", pred.rho_tau);
    rep.put("tau_max", pred.tau_max);
  } else {
    rep.put("unstable_unperturbed", "true");
  }
  rep.status = SolveStatus::Converged;

  write_report_csv(out_dir, rep);
  write_modes_csv(out_dir, rep);
  return rep;
}

}  // namespace picfa
