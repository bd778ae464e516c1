// Command-line front end. Talks to the solver exclusively through the
// shared-library C interface.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "picfa.h"

namespace {

// Exit codes: 0 converged/ok, 1 config error, 2 diverged or not converged.
int exit_code(picfa_status s) {
  switch (s) {
    case PICFA_OK: return 0;
    case PICFA_ERR_CONFIG: return 1;
    case PICFA_ERR_DIVERGED: return 2;
    default: return 1;
  }
}

void print_report(const picfa_report* rep) {
  const int n = picfa_report_size(rep);
  char key[128], value[256];
  for (int i = 0; i < n; ++i) {
    if (picfa_report_entry(rep, i, key, sizeof(key), value, sizeof(value)) ==
        PICFA_OK) {
      std::printf("%s = %s\n", key, value);
    }
  }
}

int finish(picfa_status status, picfa_report* rep) {
  if (rep) {
    print_report(rep);
    picfa_report_free(rep);
  }
  if (status != PICFA_OK && status != PICFA_ERR_DIVERGED) {
    std::fprintf(stderr, "error: %s\n", picfa_last_error());
  } else if (status == PICFA_ERR_DIVERGED) {
    std::fprintf(stderr, "run did not converge\n");
  }
  return exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coupled neutronics/thermal Picard mini-simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::vector<double> taus{0.05, 0.1, 0.5};
  double tau_lo = 1e-4, tau_hi = 1e-2;
  int scan_iters = 8;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("config", config_path, "config file (key = value lines)")
        ->required();
    cmd->add_option("--out", out_dir, "output directory for CSV files");
  };

  CLI::App* run = app.add_subcommand("run", "solve one coupled case");
  add_common(run);

  CLI::App* fig1 = app.add_subcommand(
      "fig1", "inner-iteration counts per outer iteration, fixed vs adaptive");
  add_common(fig1);
  fig1->add_option("--tau", taus, "forcing parameters to sweep");

  CLI::App* scan = app.add_subcommand(
      "tau-scan", "bisect the stability boundary of the forcing parameter");
  add_common(scan);
  scan->add_option("--lo", tau_lo, "converging endpoint");
  scan->add_option("--hi", tau_hi, "diverging endpoint");
  scan->add_option("--iters", scan_iters, "bisection steps");

  CLI::App* fourier = app.add_subcommand(
      "fourier", "closed-form convergence prediction and per-mode table");
  add_common(fourier);

  CLI11_PARSE(app, argc, argv);

  picfa_problem* problem = nullptr;
  const picfa_status load = picfa_problem_from_file(config_path.c_str(), &problem);
  if (load != PICFA_OK) {
    std::fprintf(stderr, "error: %s\n", picfa_last_error());
    return exit_code(load);
  }

  picfa_report* rep = nullptr;
  picfa_status status = PICFA_ERR_RUNTIME;
  if (run->parsed()) {
    status = picfa_run(problem, out_dir.c_str(), &rep);
  } else if (fig1->parsed()) {
    status = picfa_fig1(problem, taus.data(), static_cast<int>(taus.size()),
                        out_dir.c_str(), &rep);
  } else if (scan->parsed()) {
    status = picfa_tau_scan(problem, tau_lo, tau_hi, scan_iters,
                            out_dir.c_str(), &rep);
  } else if (fourier->parsed()) {
    status = picfa_fourier_report(problem, out_dir.c_str(), &rep);
  }

  const int code = finish(status, rep);
  picfa_problem_free(problem);
  return code;
}
