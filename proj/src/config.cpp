#include "config.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "errors.hpp"

namespace picfa {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

bool parse_double(const std::string& s, double& out) {
  try {
    size_t pos = 0;
    out = std::stod(s, &pos);
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

bool parse_int(const std::string& s, int& out) {
  try {
    size_t pos = 0;
    out = std::stoi(s, &pos);
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

const char* const kKnownKeys[] = {
    "sigma_t0", "nu_sigma_f0", "c0",      "sigma_f1_rel", "sigma_a1_rel",
    "T_ref",    "L",           "n_cells", "sn_order",     "coolant_mode",
    "T_m",      "delta_T",     "epsilon_T", "epsilon_phi", "tau",
    "max_outer", "max_inner",  "accel",   "coarsening",   "j_max",
};

const char* const kRequiredKeys[] = {
    "sigma_t0", "nu_sigma_f0", "c0", "sigma_f1_rel", "sigma_a1_rel",
    "L",        "T_m",         "delta_T",
};

}  // namespace

Problem parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::vector<std::string> errors;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(line_no) +
                       ": expected `key = value`, got `" + line + "`");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    bool known = false;
    for (const char* k : kKnownKeys) {
      if (key == k) {
        known = true;
        break;
      }
    }
    if (!known) {
      errors.push_back("unknown key `" + key + "`");
      continue;
    }
    if (kv.count(key)) {
      errors.push_back("duplicate key `" + key + "`");
      continue;
    }
    if (value.empty()) {
      errors.push_back("key `" + key + "` has no value");
      continue;
    }
    kv[key] = value;
  }

  for (const char* k : kRequiredKeys) {
    if (!kv.count(k)) errors.push_back("missing required key `" + std::string(k) + "`");
  }

  Problem p;
  auto get_double = [&](const char* key, double& field) {
    auto it = kv.find(key);
    if (it == kv.end()) return;
    if (!parse_double(it->second, field)) {
      errors.push_back("key `" + std::string(key) + "`: not a number (`" +
                       it->second + "`)");
    }
  };
  auto get_int = [&](const char* key, int& field) {
    auto it = kv.find(key);
    if (it == kv.end()) return;
    if (!parse_int(it->second, field)) {
      errors.push_back("key `" + std::string(key) + "`: not an integer (`" +
                       it->second + "`)");
    }
  };

  get_double("sigma_t0", p.xs.sigma_t0);
  get_double("nu_sigma_f0", p.xs.nu_sigma_f0);
  get_double("c0", p.xs.c0);
  get_double("sigma_f1_rel", p.xs.sigma_f1_rel);
  get_double("sigma_a1_rel", p.xs.sigma_a1_rel);
  get_double("T_ref", p.xs.T_ref);
  get_double("L", p.model.L);
  get_int("n_cells", p.model.n_cells);
  get_int("sn_order", p.model.sn_order);
  get_double("T_m", p.model.T_m);
  get_double("delta_T", p.model.delta_T);
  get_double("epsilon_T", p.settings.epsilon_T);
  get_double("epsilon_phi", p.settings.epsilon_phi);
  get_double("tau", p.settings.tau);
  get_int("max_outer", p.settings.max_outer);
  get_int("max_inner", p.settings.max_inner);
  get_int("coarsening", p.settings.coarsening);
  get_int("j_max", p.settings.j_max);

  if (auto it = kv.find("coolant_mode"); it != kv.end()) {
    if (it->second == "constant") {
      p.model.coolant_mode = CoolantMode::Constant;
    } else if (it->second == "heat-balance") {
      p.model.coolant_mode = CoolantMode::HeatBalance;
    } else {
      errors.push_back("key `coolant_mode`: expected `constant` or "
                       "`heat-balance`, got `" + it->second + "`");
    }
  }
  if (auto it = kv.find("accel"); it != kv.end()) {
    if (it->second == "none") {
      p.settings.accel = AccelScheme::None;
    } else if (it->second == "lpcmfd") {
      p.settings.accel = AccelScheme::LpCmfd;
    } else {
      errors.push_back("key `accel`: expected `none` or `lpcmfd`, got `" +
                       it->second + "`");
    }
  }

  if (errors.empty()) {
    const std::vector<std::string> violations = validate(p);
    errors.insert(errors.end(), violations.begin(), violations.end());
  }
  if (!errors.empty()) {
    std::string msg = "configuration error";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw ConfigError(msg);
  }
  return p;
}

Problem load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file `" + path + "`");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::vector<std::pair<std::string, std::string>> config_echo(const Problem& p) {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("sigma_t0", fmt9(p.xs.sigma_t0));
  out.emplace_back("nu_sigma_f0", fmt9(p.xs.nu_sigma_f0));
  out.emplace_back("c0", fmt9(p.xs.c0));
  out.emplace_back("sigma_f1_rel", fmt9(p.xs.sigma_f1_rel));
  out.emplace_back("sigma_a1_rel", fmt9(p.xs.sigma_a1_rel));
  out.emplace_back("T_ref", fmt9(p.xs.T_ref));
  out.emplace_back("L", fmt9(p.model.L));
  out.emplace_back("n_cells", std::to_string(p.model.n_cells));
  out.emplace_back("sn_order", std::to_string(p.model.sn_order));
  out.emplace_back("coolant_mode",
                   p.model.coolant_mode == CoolantMode::Constant
                       ? "constant"
                       : "heat-balance");
  out.emplace_back("T_m", fmt9(p.model.T_m));
  out.emplace_back("delta_T", fmt9(p.model.delta_T));
  out.emplace_back("epsilon_T", fmt9(p.settings.epsilon_T));
  out.emplace_back("epsilon_phi", fmt9(p.settings.epsilon_phi));
  out.emplace_back("tau", fmt9(p.settings.tau));
  out.emplace_back("max_outer", std::to_string(p.settings.max_outer));
  out.emplace_back("max_inner", std::to_string(p.settings.max_inner));
  out.emplace_back("accel", p.settings.accel == AccelScheme::None ? "none"
                                                                  : "lpcmfd");
  out.emplace_back("coarsening", std::to_string(p.settings.coarsening));
  out.emplace_back("j_max", std::to_string(p.settings.j_max));
  return out;
}

}  // namespace picfa
