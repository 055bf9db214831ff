#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pocoopt {

// Invalid configuration, malformed input files, bad CLI usage. Maps to
// process exit code 1 in the CLI.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what)
      : std::runtime_error(what) {}
};

// Loss of positive definiteness; carries the optimizer step at which the
// Cholesky factorization failed (-1 when outside a run).
class PdError : public NumericalError {
 public:
  PdError(const std::string& what, std::int64_t step = -1)
      : NumericalError(what + (step >= 0 ? " at step " + std::to_string(step)
                                         : std::string{})),
        step_(step) {}
  std::int64_t step() const { return step_; }

 private:
  std::int64_t step_;
};

}  // namespace pocoopt
