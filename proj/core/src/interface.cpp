#include "tfp/interface.hpp"

#include <cmath>

namespace tfp {

namespace {

struct Mode {
  complexd u;  // upper spin-up component
  complexd l;  // lower spin-up component
};

Mode collinearMode(double k, EnergySign sign, double m) {
  const Bispinor psi =
      plane_wave(Vec3{0.0, 0.0, k}, sign, Spinor2{1.0, 0.0}, m, 1.0);
  return {psi.upper.c0, psi.lower.c0};
}

// inc + r * refl = t * trans, matched componentwise.
InterfaceCoeffs solveConfig(const Mode& inc, const Mode& refl,
                            const Mode& trans) {
  const Mat2 a{refl.u, -trans.u, refl.l, -trans.l};
  const Spinor2 rhs{-inc.u, -inc.l};
  const Spinor2 x = solve2x2(a, rhs);
  InterfaceCoeffs c;
  c.r = x.c0;
  c.t = x.c1;
  return c;
}

InterfaceCoeffs solveSharp(InterfaceConfig cfg, double p, double eA,
                           double m) {
  const double q = p - eA;
  const double E = std::sqrt(p * p + m * m);
  const double Ep = std::sqrt(q * q + m * m);

  InterfaceCoeffs c;
  switch (cfg) {
    case InterfaceConfig::PositiveIntoPotential:
      c = solveConfig(collinearMode(p, EnergySign::Positive, m),
                      collinearMode(p, EnergySign::Negative, m),
                      collinearMode(q, EnergySign::Positive, m));
      break;
    case InterfaceConfig::NegativeInsidePotential:
      c = solveConfig(collinearMode(q, EnergySign::Negative, m),
                      collinearMode(q, EnergySign::Positive, m),
                      collinearMode(p, EnergySign::Negative, m));
      break;
    case InterfaceConfig::PositiveOutOfPotential:
      c = solveConfig(collinearMode(q, EnergySign::Positive, m),
                      collinearMode(q, EnergySign::Negative, m),
                      collinearMode(p, EnergySign::Positive, m));
      break;
    case InterfaceConfig::NegativeInVacuum:
      c = solveConfig(collinearMode(p, EnergySign::Negative, m),
                      collinearMode(p, EnergySign::Positive, m),
                      collinearMode(q, EnergySign::Negative, m));
      break;
    default:
      throw ValidationError("unknown interface configuration");
  }
  c.E = E;
  c.Eprime = Ep;
  c.p = p;
  c.q = q;
  c.m = m;
  return c;
}

void validateInputs(double p, double eA, double m) {
  if (!std::isfinite(p) || !std::isfinite(eA) || !std::isfinite(m)) {
    throw ValidationError("interface parameters must be finite");
  }
  if (!(p > 0.0)) throw ValidationError("momentum p must be positive");
  if (!(eA >= 0.0)) throw ValidationError("potential eA must be >= 0");
  if (!(m > 0.0)) throw ValidationError("mass must be positive");
}

}  // namespace

InterfaceCoeffs solve_interface(InterfaceConfig cfg, double p, double eA,
                                double m) {
  validateInputs(p, eA, m);
  const double q = p - eA;
  if (q == 0.0 && cfg != InterfaceConfig::PositiveIntoPotential) {
    // The branch at q = 0 exactly is fixed by continuity from both sides.
    // The sign convention sgn(0) = +1 matches the q -> 0+ side; the q -> 0-
    // limit of the incident mode carries an overall sign flip, so the two
    // sides are aligned on the transmission coefficient before comparing.
    const double delta = 1e-9 * std::max({1.0, std::abs(p), std::abs(eA)});
    const InterfaceCoeffs plus = solveSharp(cfg, p, eA - delta, m);   // q > 0
    InterfaceCoeffs minus = solveSharp(cfg, p, eA + delta, m);       // q < 0
    // Whether r, t or both flip depends on which of the three modes carries
    // the zero-crossing momentum, so each coefficient is aligned on its own.
    if ((plus.r * std::conj(minus.r)).real() < 0.0) minus.r = -minus.r;
    if ((plus.t * std::conj(minus.t)).real() < 0.0) minus.t = -minus.t;
    const double dr = std::abs(plus.r - minus.r);
    const double dt = std::abs(plus.t - minus.t);
    const double scale = std::max(1.0, std::abs(plus.t));
    if (dr > 1e-5 * scale || dt > 1e-5 * scale) {
      throw NumericError("two-sided continuity at q = 0 disagrees");
    }
    InterfaceCoeffs c = plus;
    c.r = 0.5 * (plus.r + minus.r);
    c.t = 0.5 * (plus.t + minus.t);
    c.q = 0.0;
    c.Eprime = m;
    return c;
  }
  return solveSharp(cfg, p, eA, m);
}

std::array<InterfaceCoeffs, 4> solve_all_interfaces(double p, double eA,
                                                    double m) {
  return {solve_interface(InterfaceConfig::PositiveIntoPotential, p, eA, m),
          solve_interface(InterfaceConfig::NegativeInsidePotential, p, eA, m),
          solve_interface(InterfaceConfig::PositiveOutOfPotential, p, eA, m),
          solve_interface(InterfaceConfig::NegativeInVacuum, p, eA, m)};
}

namespace {

// E + m evaluated without cancellation: for E < 0 with |E| = sqrt(p^2+m^2),
// E + m = -(|E| - m) = -p^2 / (|E| + m).
double energyPlusMass(double E, double p, double m) {
  if (E >= 0.0) return E + m;
  return -(p * p) / (-E + m);
}

}  // namespace

complexd closed_r_signed(double Ea, double Eb, double pa, double pb,
                         double m) {
  const double sgnE = Ea >= 0.0 ? 1.0 : -1.0;
  const double sgnP = pa >= 0.0 ? 1.0 : -1.0;
  const double epsA = energyPlusMass(Ea, pa, m);
  const double epsB = energyPlusMass(Eb, pb, m);
  const double num = pa * epsB - pb * epsA;
  const double den = epsA * epsB + pa * pb;
  return complexd{sgnE * sgnP * num / den, 0.0};
}

complexd closed_t_signed(double Ea, double Eb, double pa, double pb,
                         double m) {
  const double epsA = energyPlusMass(Ea, pa, m);
  const double epsB = energyPlusMass(Eb, pb, m);
  const double den = epsA * epsB + pa * pb;
  const double rad = Ea * Eb * epsA * epsB;
  return complexd{2.0 * std::sqrt(rad) / den, 0.0};
}

complexd closed_form_r(double E, double Eprime, double p, double q, double m) {
  if (!(E > m)) throw ValidationError("closed_form_r requires E > m");
  return closed_r_signed(E, Eprime, p, q, m);
}

complexd closed_form_t(double E, double Eprime, double p, double q, double m) {
  if (!(E > m)) throw ValidationError("closed_form_t requires E > m");
  return closed_t_signed(E, Eprime, p, q, m);
}

complexd closed_form_t_alt(double E, double Eprime, double p, double q,
                           double m) {
  if (!(E > m)) throw ValidationError("closed_form_t_alt requires E > m");
  return complexd{std::sqrt((E + m) / (Eprime + m)) * 2.0 * E /
                      (E + m + p * q / (Eprime + m)),
                  0.0};
}

InterfaceCoeffs derive_config_coeffs(InterfaceConfig cfg,
                                     const InterfaceCoeffs& base) {
  const double E = base.E;
  const double Ep = base.Eprime;
  const double p = base.p;
  const double q = base.q;
  const double m = base.m;

  double ea, eb, pa, pb;
  switch (cfg) {
    case InterfaceConfig::PositiveIntoPotential:
      ea = E; eb = Ep; pa = p; pb = q;
      break;
    case InterfaceConfig::NegativeInsidePotential:  // E -> -E', E' -> -E, p <-> q
      ea = -Ep; eb = -E; pa = q; pb = p;
      break;
    case InterfaceConfig::PositiveOutOfPotential:  // E <-> E', p <-> q
      ea = Ep; eb = E; pa = q; pb = p;
      break;
    case InterfaceConfig::NegativeInVacuum:  // E -> -E, E' -> -E'
      ea = -E; eb = -Ep; pa = p; pb = q;
      break;
    default:
      throw ValidationError("unknown interface configuration");
  }

  InterfaceCoeffs c = base;
  c.r = closed_r_signed(ea, eb, pa, pb, m);
  c.t = closed_t_signed(ea, eb, pa, pb, m);
  return c;
}

}  // namespace tfp
