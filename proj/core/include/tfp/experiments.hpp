#ifndef TFP_EXPERIMENTS_HPP
#define TFP_EXPERIMENTS_HPP

#include "tfp/amplitude.hpp"
#include "tfp/cavity.hpp"

namespace tfp {

// Unit-visibility reflectivity R_0 = (1 + sqrt 5) / 2.
double golden_reflectivity();

// Two-cavity scattering of one incident electron. Outcomes:
//   reflected   P_v R^2     (double zigzag)
//   transmitted P_v (1+R)   (direct pass)
//   pair        P_v R       (signed exchange combination |r r' r - r' t t'|^2)
// with P_v = (1+R)^{-2}. The pair term is assembled from diagrams.
ExperimentReport double_cavity(const CavityCoeffs& cavity);
ExperimentReport double_cavity(double R);

// Visibility V = 2 R sqrt(T) / (T + R^2).
double interferometer_visibility(double R);

// theta is the already-offset interferometer phase (it absorbs
// 2 arg r_tot - arg t_tot); theta_from_chi converts a physical phase-shifter
// setting chi and the cavity times into theta, xi_from_chi into the bare
// accumulated phase xi = chi - 2E (tB - tA).
double theta_from_chi(double chi, double E, double tB, double tA,
                      const CavityCoeffs& cavity);
double xi_from_chi(double chi, double E, double tB, double tA);

// Three-detector retrocausal interferometer, built from the six signed
// diagrams (two to D1 alone, one to D3 alone, three to the D1 D2 D3
// coincidence). Outcomes: D1_only, D1_D2_D3, D3_only.
ExperimentReport interferometer(const CavityCoeffs& cavity, double theta);

struct GameConfig {
  long long trials = 0;  // 0 = analytic only
  unsigned long long seed = 12345;
  int workers = 0;  // 0 = hardware concurrency
};

struct GameJointEntry {
  double theta;         // +pi/2 or -pi/2
  std::string outcome;  // D1_only / D1_D2_D3 / D3_only
  double jointProbability;
};

struct GameReport {
  double analyticGain = 0.0;     // 3/4 - R/(4 (1+R)^2) at R = R_0
  double classicalBound = 0.5;
  double postselectedGain = 1.0;  // conditioned on D1_only
  std::vector<GameJointEntry> joint;
  bool hasMonteCarlo = false;
  double mcGain = 0.0;
  double mcStdErr = 0.0;
  long long trials = 0;
  unsigned long long seed = 0;
};

// Guessing game in the unit-visibility regime (requires R = R_0): the agent
// sees the detector pattern, guesses theta = +pi/2 with certainty on
// D1_only and flips a fair coin otherwise. Monte Carlo trials are split
// into fixed-size blocks with per-block seeds so the result is independent
// of the worker count.
GameReport retro_game(const CavityCoeffs& cavity, const GameConfig& cfg = {});

// <G> = R^2 / (1+R)^2
double gyni_gain(double R);

struct SwitchSpec {
  UnitaryMatrix2 uA{Mat2::identity()};
  UnitaryMatrix2 uB{Mat2::identity()};
  Spinor2 psi0{1.0, 0.0};
  double xi = 0.0;
  CavityCoeffs cavity;
  double p = 1.0;  // momentum magnitude of the mode sectors
  double m = 1.0;
};

struct SwitchReport {
  ExperimentReport report;  // D2_only, D3_only, electron_other
  std::array<complexd, 2> cAB;  // C_s for the A-then-B order
  std::array<complexd, 2> cBA;  // C_s for the reversed (backward) order
  // Enumerated pair-creation outcomes over the four vacuum channels; their
  // sum plus P_v must be 1.
  std::map<std::string, double> pairChannels;
  double vacuumAudit = 1.0;
};

// Fixed-temporal-order quantum switch: direct path applies U_B U_A in the
// (-p, +E) sector, zigzag path applies U_A^-1 U_B^-1 in the (+p, -E)
// sector; D2/D3 amplitudes are assembled from the two signed diagrams.
SwitchReport quantum_switch(const SwitchSpec& spec);

enum class CtcCoefficientVariant { TSquared, RSquared };

struct CtcSpec {
  UnitaryMatrix2 u{Mat2::identity()};
  double xi = 0.0;
  CavityCoeffs cavity;
  double alpha = 1.0;  // backward-mode beam-splitter correction
  Spinor2 a{1.0, 0.0};  // input amplitudes, unit norm
  double p = 1.0;
  double m = 1.0;
};

struct CtcVariantReport {
  double vacuumProbability = 1.0;
  std::map<std::string, double> channels;  // pair_A .. pair_E
  double sumResidual = 0.0;  // |1 - (P_v + sum of channels)|
};

struct CtcReport {
  ExperimentReport report;  // D1_only, D3_only, electron_other
  Spinor2 b, c;
  double fixedPointResidual = 0.0;
  double conditionNumber = 1.0;
  // The pair-channel matrices are written with t_tot^2 where the ring
  // fixed point uses r_tot^2; both coefficient readings are evaluated.
  // Headline probabilities use the TSquared variant's P_v.
  CtcVariantReport variantT2;
  CtcVariantReport variantR2;
};

// Ring resonator CTC: solves the self-consistency system
//   c = (1/sqrt2) (I + zeta U)^-1 a,
//   b = (i/sqrt2) [I + zeta U (I + zeta U)^-1] a,  zeta = (i rTot^2/sqrt2) e^{i xi},
// returns P(D1, no D2/D3) = P_v ||b||^2 and P(D3, no D1/D2) = P_v T ||c||^2,
// and computes P_v from the five-pair-channel trace sum rule for both
// coefficient variants.
CtcReport ctc_ring(const CtcSpec& spec);

// Deutsch-style CTC in the destructive-port regime (requires R = 1 when
// strict): P_v = 1 / (1 + T R (1+alpha) + alpha T^2 R^2), and with the
// phase tuned for a dark c port P(D1, nothing else) = (P_v/2)(1+R)^2 = 2 P_v.
ExperimentReport deutsch_ctc(double alpha, double R = 1.0, bool strict = true);

}  // namespace tfp

#endif
