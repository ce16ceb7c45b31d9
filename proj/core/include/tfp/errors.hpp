#ifndef TFP_ERRORS_HPP
#define TFP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tfp {

// Domain/precondition violation. Mapped to CLI exit code 2.
class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Numerical failure: singular system, resonance floor, non-convergence.
// Mapped to CLI exit code 3.
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Cavity denominator fell below the resonance floor.
class ResonanceError : public NumericError {
public:
  ResonanceError(const std::string& msg, double denomMagnitude)
      : NumericError(msg), denomMagnitude(denomMagnitude) {}
  double denomMagnitude;
};

}  // namespace tfp

#endif
