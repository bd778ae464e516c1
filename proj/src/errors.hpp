#ifndef PICFA_ERRORS_HPP
#define PICFA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace picfa {

// Bad or inconsistent user input (config file, CLI arguments, invariant
// violations found by validate()).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A state that cannot be physical (nonpositive cross section, temperature
// outside the admissible band). The coupling driver treats this as a
// divergence signal rather than a fatal error.
class UnphysicalStateError : public std::runtime_error {
 public:
  explicit UnphysicalStateError(const std::string& what)
      : std::runtime_error(what) {}
};

// Breakdown inside a numerical kernel (zero norm, nonpositive fission
// integral, singular low-order system).
class NumericsError : public std::runtime_error {
 public:
  explicit NumericsError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace picfa

#endif
