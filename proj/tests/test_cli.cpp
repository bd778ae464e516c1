#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

const char* kSmallConfig =
    "sigma_t0     = 0.534\n"
    "nu_sigma_f0  = 0.0255\n"
    "c0           = 0.96\n"
    "sigma_f1_rel = -2.59e-5\n"
    "sigma_a1_rel = 9.63e-6\n"
    "L            = 150\n"
    "n_cells      = 60\n"
    "sn_order     = 4\n"
    "T_m          = 575\n"
    "delta_T      = 275\n"
    "epsilon_T    = 1e-5\n"
    "epsilon_phi  = 1e-7\n";

struct CliResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

CliResult run_cli(const std::string& args) {
  const std::string out_file = "cli_test_output.txt";
  const std::string cmd =
      std::string(PICFA_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
  const int raw = std::system(cmd.c_str());
  std::ifstream in(out_file);
  std::ostringstream buf;
  buf << in.rdbuf();
  fs::remove(out_file);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, buf.str()};
}

void write_config(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(name) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("cli: run subcommand solves and exits zero") {
  TempDir dir("cli_run_case");
  write_config(dir.path / "case.cfg", kSmallConfig);
  const CliResult r = run_cli("run " + (dir.path / "case.cfg").string() +
                              " --out " + dir.path.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("status = converged") != std::string::npos);
  CHECK(fs::exists(dir.path / "report.csv"));
  CHECK(fs::exists(dir.path / "history.csv"));
}

TEST_CASE("cli: missing required key exits 1 and names the key") {
  TempDir dir("cli_badcfg_case");
  std::string cfg(kSmallConfig);
  cfg.erase(cfg.find("L            = 150\n"), 19);
  write_config(dir.path / "case.cfg", cfg);
  const CliResult r = run_cli("run " + (dir.path / "case.cfg").string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("`L`") != std::string::npos);
}

TEST_CASE("cli: unreadable config exits 1") {
  const CliResult r = run_cli("run definitely_not_here.cfg");
  CHECK(r.exit_code == 1);
}

TEST_CASE("cli: diverging case exits 2") {
  TempDir dir("cli_div_case");
  std::string cfg(kSmallConfig);
  cfg.replace(cfg.find("sigma_a1_rel = 9.63e-6"), 22,
              "sigma_a1_rel = 4e-4   ");
  write_config(dir.path / "case.cfg", cfg);
  const CliResult r = run_cli("run " + (dir.path / "case.cfg").string() +
                              " --out " + dir.path.string());
  CHECK(r.exit_code == 2);
}

TEST_CASE("cli: fourier subcommand writes the mode table") {
  TempDir dir("cli_fourier_case");
  write_config(dir.path / "case.cfg", std::string(kSmallConfig) + "j_max = 5\n");
  const CliResult r = run_cli("fourier " + (dir.path / "case.cfg").string() +
                              " --out " + dir.path.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir.path / "modes.csv"));
  CHECK(r.output.find("rho0 = ") != std::string::npos);
}

TEST_CASE("cli: fig1 on an unaccelerated config exits 1 naming accel") {
  TempDir dir("cli_fig1_case");
  write_config(dir.path / "case.cfg", kSmallConfig);
  const CliResult r = run_cli("fig1 " + (dir.path / "case.cfg").string() +
                              " --out " + dir.path.string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("accel") != std::string::npos);
}

TEST_CASE("cli: fig1 sweep over the accelerated problem") {
  TempDir dir("cli_fig1_ok_case");
  write_config(dir.path / "case.cfg",
               std::string(kSmallConfig) + "accel = lpcmfd\ncoarsening = 10\n");
  const CliResult r = run_cli("fig1 " + (dir.path / "case.cfg").string() +
                              " --tau 0.5 --out " + dir.path.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("ref_total_inner") != std::string::npos);
  CHECK(r.output.find("tau_0.5_savings_percent") != std::string::npos);
}

TEST_CASE("cli: tau-scan rejects a degenerate range") {
  TempDir dir("cli_scan_case");
  write_config(dir.path / "case.cfg", kSmallConfig);
  const CliResult r =
      run_cli("tau-scan " + (dir.path / "case.cfg").string() +
              " --lo 1e-3 --hi 1e-3 --iters 3 --out " + dir.path.string());
  CHECK(r.exit_code == 1);
}

TEST_CASE("cli: unknown subcommand fails, help succeeds") {
  CHECK(run_cli("frobnicate x.cfg").exit_code != 0);
  CHECK(run_cli("--help").exit_code == 0);
}
