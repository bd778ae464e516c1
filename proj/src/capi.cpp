#include "picfa.h"

#include <cstring>
#include <string>

#include "config.hpp"
#include "errors.hpp"
#include "report.hpp"

struct picfa_problem {
  picfa::Problem p;
};

struct picfa_report {
  picfa::RunReport rep;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

void copy_out(const std::string& s, char* buf, int size) {
  if (!buf || size <= 0) return;
  const int n = std::min<int>(size - 1, static_cast<int>(s.size()));
  std::memcpy(buf, s.data(), n);
  buf[n] = '\0';
}

picfa_status status_of(picfa::SolveStatus s) {
  return s == picfa::SolveStatus::Converged ? PICFA_OK : PICFA_ERR_DIVERGED;
}

template <typename Fn>
picfa_status run_experiment(const picfa_problem* problem, picfa_report** out,
                            Fn&& fn) {
  if (!problem || !out) {
    set_error("null handle");
    return PICFA_ERR_ARGUMENT;
  }
  *out = nullptr;
  try {
    auto rep = new picfa_report{fn(problem->p)};
    *out = rep;
    return status_of(rep->rep.status);
  } catch (const picfa::ConfigError& e) {
    set_error(e.what());
    return PICFA_ERR_CONFIG;
  } catch (const std::exception& e) {
    set_error(e.what());
    return PICFA_ERR_RUNTIME;
  }
}

}  // namespace

extern "C" {

const char* picfa_version(void) { return "1.0.0"; }

const char* picfa_last_error(void) { return g_last_error.c_str(); }

picfa_status picfa_problem_from_string(const char* text, picfa_problem** out) {
  if (!text || !out) {
    set_error("null argument");
    return PICFA_ERR_ARGUMENT;
  }
  *out = nullptr;
  try {
    auto* p = new picfa_problem{picfa::parse_config(text)};
    *out = p;
    return PICFA_OK;
  } catch (const picfa::ConfigError& e) {
    set_error(e.what());
    return PICFA_ERR_CONFIG;
  } catch (const std::exception& e) {
    set_error(e.what());
    return PICFA_ERR_RUNTIME;
  }
}

picfa_status picfa_problem_from_file(const char* path, picfa_problem** out) {
  if (!path || !out) {
    set_error("null argument");
    return PICFA_ERR_ARGUMENT;
  }
  *out = nullptr;
  try {
    auto* p = new picfa_problem{picfa::load_config_file(path)};
    *out = p;
    return PICFA_OK;
  } catch (const picfa::ConfigError& e) {
    set_error(e.what());
    return PICFA_ERR_CONFIG;
  } catch (const std::exception& e) {
    set_error(e.what());
    return PICFA_ERR_RUNTIME;
  }
}

void picfa_problem_free(picfa_problem* problem) { delete problem; }

picfa_status picfa_problem_get(const picfa_problem* problem, const char* key,
                               double* out) {
  if (!problem || !key || !out) {
    set_error("null argument");
    return PICFA_ERR_ARGUMENT;
  }
  for (const auto& [k, v] : picfa::config_echo(problem->p)) {
    if (k == key) {
      try {
        *out = std::stod(v);
        return PICFA_OK;
      } catch (...) {
        set_error("config key `" + std::string(key) + "` is not numeric");
        return PICFA_ERR_ARGUMENT;
      }
    }
  }
  set_error("unknown config key `" + std::string(key) + "`");
  return PICFA_ERR_ARGUMENT;
}

picfa_status picfa_run(const picfa_problem* problem, const char* out_dir,
                       picfa_report** out) {
  const std::string dir = out_dir ? out_dir : ".";
  return run_experiment(problem, out, [&](const picfa::Problem& p) {
    return picfa::run_case(p, dir);
  });
}

picfa_status picfa_fig1(const picfa_problem* problem, const double* taus,
                        int n_taus, const char* out_dir, picfa_report** out) {
  if (n_taus < 0 || (n_taus > 0 && !taus)) {
    set_error("invalid tau list");
    return PICFA_ERR_ARGUMENT;
  }
  const std::vector<double> tau_list(taus, taus + n_taus);
  const std::string dir = out_dir ? out_dir : ".";
  return run_experiment(problem, out, [&](const picfa::Problem& p) {
    return picfa::experiment_fig1(p, tau_list, dir);
  });
}

picfa_status picfa_tau_scan(const picfa_problem* problem, double tau_lo,
                            double tau_hi, int iters, const char* out_dir,
                            picfa_report** out) {
  const std::string dir = out_dir ? out_dir : ".";
  return run_experiment(problem, out, [&](const picfa::Problem& p) {
    return picfa::experiment_tau_scan(p, tau_lo, tau_hi, iters, dir);
  });
}

picfa_status picfa_fourier_report(const picfa_problem* problem,
                                  const char* out_dir, picfa_report** out) {
  const std::string dir = out_dir ? out_dir : ".";
  return run_experiment(problem, out, [&](const picfa::Problem& p) {
    return picfa::fourier_report(p, dir);
  });
}

void picfa_report_free(picfa_report* report) { delete report; }

int picfa_report_has(const picfa_report* report, const char* key) {
  if (!report || !key) return 0;
  return report->rep.find(key).has_value() ? 1 : 0;
}

picfa_status picfa_report_number(const picfa_report* report, const char* key,
                                 double* out) {
  if (!report || !key || !out) {
    set_error("null argument");
    return PICFA_ERR_ARGUMENT;
  }
  const auto v = report->rep.find_number(key);
  if (!v) {
    set_error("report entry `" + std::string(key) + "` missing or non-numeric");
    return PICFA_ERR_ARGUMENT;
  }
  *out = *v;
  return PICFA_OK;
}

picfa_status picfa_report_string(const picfa_report* report, const char* key,
                                 char* buf, int buf_size) {
  if (!report || !key || !buf || buf_size <= 0) {
    set_error("null argument");
    return PICFA_ERR_ARGUMENT;
  }
  const auto v = report->rep.find(key);
  if (!v) {
    set_error("report entry `" + std::string(key) + "` missing");
    return PICFA_ERR_ARGUMENT;
  }
  copy_out(*v, buf, buf_size);
  return PICFA_OK;
}

int picfa_report_size(const picfa_report* report) {
  return report ? static_cast<int>(report->rep.items.size()) : 0;
}

picfa_status picfa_report_entry(const picfa_report* report, int index,
                                char* key_buf, int key_size, char* value_buf,
                                int value_size) {
  if (!report || index < 0 ||
      index >= static_cast<int>(report->rep.items.size())) {
    set_error("report entry index out of range");
    return PICFA_ERR_ARGUMENT;
  }
  copy_out(report->rep.items[index].first, key_buf, key_size);
  copy_out(report->rep.items[index].second, value_buf, value_size);
  return PICFA_OK;
}

}  // extern "C"
