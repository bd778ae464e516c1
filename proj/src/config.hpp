#ifndef PICFA_CONFIG_HPP
#define PICFA_CONFIG_HPP

#include <string>
#include <utility>
#include <vector>

#include "model.hpp"

namespace picfa {

// Flat `key = value` lines with `#` comments. Unknown, duplicate, malformed
// or missing-required keys raise ConfigError listing every offending key.
Problem parse_config(const std::string& text);
Problem load_config_file(const std::string& path);

// Resolved key/value view of a problem, in canonical key order, for report
// echoing. Values are formatted with 9 significant digits.
std::vector<std::pair<std::string, std::string>> config_echo(const Problem& p);

}  // namespace picfa

#endif
