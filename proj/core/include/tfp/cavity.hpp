#ifndef TFP_CAVITY_HPP
#define TFP_CAVITY_HPP

#include "tfp/interface.hpp"

namespace tfp {

struct CavityParams {
  double p = 1.0;    // |k|/m
  double eA = 0.0;   // e|A|/m
  double tau = 1.0;  // m tau
  double m = 1.0;
  double resonanceFloor = 1e-8;
};

struct CavityCoeffs {
  complexd rTot{0.0};
  complexd tTot{1.0};
  complexd rTotPrime{0.0};
  complexd tTotPrime{1.0};
  double E = 0.0;
  double Eprime = 0.0;
  double delta = 0.0;  // -E' tau
  double denomMagnitude = 1.0;
  bool beyondSchwinger = false;

  double R() const { return std::norm(rTot); }
  double T() const { return std::norm(tTot); }
};

// Closed-form composition of the two temporal interfaces separated by tau:
//   rTot = r(E,E') + t(E,E') r(E',E) t(-E',-E) e^{2i delta} / den
//   tTot = t(E,E') t(E',E) e^{i delta} / den
//   den  = 1 - r(E',E) r(-E',-E) e^{2i delta},  delta = -E' tau,
// plus the primed set for the time-reversed input. Throws ResonanceError
// when |den| < resonanceFloor.
CavityCoeffs cavity_coefficients(const CavityParams& params);

struct SymmetryReport {
  double conservation;  // | |t|^2 + r' conj(r) - 1 |
  double crossTerm;     // | r conj(t) + conj(r) t' |
  double phaseSum;      // distance of 2 phi_r - phi_t - phi_t' from pi (mod 2pi)
  double phaseEqual;    // distance of phi_t - phi_t' from 0 (mod 2pi)
  double phaseQuarter;  // distance of |phi_r - phi_t| from pi/2 (mod pi)
  double maxViolation;
};
SymmetryReport verify_symmetries(const CavityCoeffs& c);

// Truncated N-bounce sum of the internal geometric series. Converges to the
// closed form only when |r(E',E) r(-E',-E) e^{2i delta}| < 1; the series
// diverges otherwise even though the closed form stays valid.
CavityCoeffs truncated_cavity(const CavityParams& params, int bounces);

// Synthetic coefficient set with a prescribed reflectivity:
//   r = i sqrt(R), t = sqrt(1+R), r' = -r, t' = t.
// Satisfies every cavity identity; used by experiments parameterized by R.
CavityCoeffs cavity_from_reflectivity(double R);

struct GridSpec {
  double start = 0.0;
  double stop = 1.0;
  int count = 2;
};

struct RmaxResult {
  double kStar = 0.0;
  double Rmax = 0.0;
  double eta = 0.0;  // Rmax^2 / (1+Rmax)^2
  double denomMagnitude = 1.0;
  bool beyondSchwinger = false;
};

// Coarse grid scan (>= 512 points) followed by golden-section refinement of
// the reflectivity maximum over |k|, to 1e-10 in k. Deterministic for a
// fixed grid spec. Propagates ResonanceError from inside the bracket.
RmaxResult find_rmax(double mTau, double eAOverM, const GridSpec& kGrid);

// Default scan window centered on |k| ~ |eA|.
GridSpec default_rmax_grid(double eAOverM);

}  // namespace tfp

#endif
