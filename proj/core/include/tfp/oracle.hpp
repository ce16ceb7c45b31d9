#ifndef TFP_ORACLE_HPP
#define TFP_ORACLE_HPP

#include <vector>

#include "tfp/cavity.hpp"

namespace tfp {

// Independent verification oracle: integrates the collinear time-dependent
// Dirac system i d/dt (a, c) = [[m, k(t)], [k(t), -m]] (a, c) for a smoothed
// (logistic) step profile of width epsilon and extracts (r, t) by mode
// decomposition, then Richardson-extrapolates over epsilon, epsilon/2,
// epsilon/4 toward the sharp-interface limit.
struct OracleSettings {
  double epsilon = 1e-2;  // coarsest smoothing width
  int levels = 3;
  double relTol = 1e-12;
  double absTol = 1e-12;
  double pad = 30.0;  // integration starts/ends pad*epsilon from each step
};

struct OracleLevel {
  double epsilon = 0.0;
  complexd r{0.0};
  complexd t{1.0};
};

struct OracleResult {
  std::vector<OracleLevel> levels;
  double rAbs = 0.0;  // extrapolated |r|
  double tAbs = 1.0;  // extrapolated |t|
  double order = 0.0;  // estimated convergence order (|r| channel)
  double residual = 0.0;  // last-level |r| correction magnitude
};

// Single sharp step p -> q = p - eA. Requires q != 0.
OracleResult ode_interface_oracle(double p, double eA, double m = 1.0,
                                  const OracleSettings& settings = {});

// Rectangular cavity profile of duration tau (both steps smoothed).
OracleResult ode_cavity_oracle(double p, double eA, double tau, double m = 1.0,
                               const OracleSettings& settings = {});

}  // namespace tfp

#endif
