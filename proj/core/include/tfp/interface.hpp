#ifndef TFP_INTERFACE_HPP
#define TFP_INTERFACE_HPP

#include "tfp/spinor.hpp"

namespace tfp {

// The four scattering configurations at a sharp temporal step of the
// vector potential (collinear geometry, k(t) jumps from p to q = p - eA):
//   PositiveIntoPotential:  positive-energy E incident from the vacuum side,
//                           reflected into -E, transmitted into E'.
//   NegativeInsidePotential: negative-energy -E' incident from the potential
//                           side (backward in time), reflected into E',
//                           transmitted into -E.
//   PositiveOutOfPotential: positive-energy E' incident from the potential
//                           side, reflected into -E', transmitted into E.
//   NegativeInVacuum:       negative-energy -E incident from the vacuum side
//                           (backward in time), reflected into E,
//                           transmitted into -E'.
enum class InterfaceConfig {
  PositiveIntoPotential,
  NegativeInsidePotential,
  PositiveOutOfPotential,
  NegativeInVacuum,
};

struct InterfaceCoeffs {
  complexd r{0.0};
  complexd t{1.0};
  double E = 0.0;       // sqrt(p^2 + m^2)
  double Eprime = 0.0;  // sqrt(q^2 + m^2)
  double p = 0.0;
  double q = 0.0;
  double m = 1.0;
};

// Authoritative definition: matches upper and lower spinor components of the
// incident + r * reflected and t * transmitted modes at the step (2x2 linear
// solve). q = 0 (eA = p) is handled by two-sided continuity.
InterfaceCoeffs solve_interface(InterfaceConfig cfg, double p, double eA,
                                double m = 1.0);

// All four configurations at once (single kinematics computation).
std::array<InterfaceCoeffs, 4> solve_all_interfaces(double p, double eA,
                                                    double m = 1.0);

// Closed form for the PositiveIntoPotential reflection coefficient,
// evaluated in the 0/0-safe product form
//   r = (p (E'+m) - q (E+m)) / ((E+m)(E'+m) + p q).
// Requires E > m.
complexd closed_form_r(double E, double Eprime, double p, double q,
                       double m = 1.0);

// Conservation-consistent closed form for t (matches the continuity solve):
//   t = 2 sqrt(E E' (E+m)(E'+m)) / ((E+m)(E'+m) + p q).
complexd closed_form_t(double E, double Eprime, double p, double q,
                       double m = 1.0);

// Alternative closed form sometimes quoted for this geometry:
//   t = sqrt((E+m)/(E'+m)) * 2E / (E+m + pq/(E'+m));
// does NOT satisfy |t|^2 = 1 + |r|^2 and does not match the continuity
// solve. Kept for the discrepancy ledger.
complexd closed_form_t_alt(double E, double Eprime, double p, double q,
                           double m = 1.0);

// Generic signed-energy closed forms used by the substitution rules.
complexd closed_r_signed(double Ea, double Eb, double pa, double pb,
                         double m = 1.0);
complexd closed_t_signed(double Ea, double Eb, double pa, double pb,
                         double m = 1.0);

// Applies the substitution rules (E -> -E', E' -> -E, p <-> q and the two
// partial rules) to the PositiveIntoPotential coefficients to produce the
// requested configuration. Exposes the identity r(-E,-E') = -r(E,E').
InterfaceCoeffs derive_config_coeffs(InterfaceConfig cfg,
                                     const InterfaceCoeffs& base);

}  // namespace tfp

#endif
