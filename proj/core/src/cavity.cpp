#include "tfp/cavity.hpp"

#include <algorithm>
#include <cmath>

namespace tfp {

namespace {

constexpr complexd kI{0.0, 1.0};

void validateParams(const CavityParams& params) {
  if (!std::isfinite(params.p) || !std::isfinite(params.eA) ||
      !std::isfinite(params.tau)) {
    throw ValidationError("cavity parameters must be finite");
  }
  if (!(params.p > 0.0)) throw ValidationError("momentum p must be positive");
  if (!(params.tau > 0.0)) throw ValidationError("tau must be positive");
  if (!(params.m > 0.0)) throw ValidationError("mass must be positive");
  if (!(params.resonanceFloor >= 0.0)) {
    throw ValidationError("resonance floor must be non-negative");
  }
}

}  // namespace

CavityCoeffs cavity_coefficients(const CavityParams& params) {
  validateParams(params);
  const auto coeffs = solve_all_interfaces(params.p, params.eA, params.m);
  const InterfaceCoeffs& in = coeffs[0];    // (E, E') opening step
  const InterfaceCoeffs& back = coeffs[1];  // (-E', -E) backward inside
  const InterfaceCoeffs& out = coeffs[2];   // (E', E) closing step
  const InterfaceCoeffs& neg = coeffs[3];   // (-E, -E') backward outside

  CavityCoeffs c;
  c.E = in.E;
  c.Eprime = in.Eprime;
  c.delta = -in.Eprime * params.tau;
  c.beyondSchwinger = params.eA / (params.m * params.m * params.tau) > 1.0;

  const complexd ph = std::exp(kI * c.delta);
  const complexd ph2 = ph * ph;
  const complexd den = 1.0 - out.r * back.r * ph2;
  c.denomMagnitude = std::abs(den);
  if (c.denomMagnitude < params.resonanceFloor) {
    throw ResonanceError("cavity resonance: |denominator| below floor",
                         c.denomMagnitude);
  }

  c.rTot = in.r + in.t * out.r * back.t * ph2 / den;
  c.tTot = in.t * out.t * ph / den;
  c.rTotPrime = neg.r + neg.t * back.r * out.t * ph2 / den;
  c.tTotPrime = c.tTot;
  return c;
}

namespace {

double modDistance(double x, double target, double period) {
  // distance of x from target modulo period
  double d = std::fmod(std::abs(x - target), period);
  return std::min(d, period - d);
}

}  // namespace

SymmetryReport verify_symmetries(const CavityCoeffs& c) {
  SymmetryReport rep{};
  rep.conservation =
      std::abs(std::norm(c.tTot) + c.rTotPrime * std::conj(c.rTot) - 1.0);
  rep.crossTerm = std::abs(c.rTot * std::conj(c.tTot) +
                           std::conj(c.rTot) * c.tTotPrime);
  const double phiR = std::arg(c.rTot);
  const double phiT = std::arg(c.tTot);
  const double phiTp = std::arg(c.tTotPrime);
  const double pi = std::acos(-1.0);
  if (std::abs(c.rTot) == 0.0) {
    rep.phaseSum = 0.0;
    rep.phaseQuarter = 0.0;
  } else {
    rep.phaseSum = modDistance(2.0 * phiR - phiT - phiTp, pi, 2.0 * pi);
    rep.phaseQuarter = modDistance(std::abs(phiR - phiT), pi / 2.0, pi);
  }
  rep.phaseEqual = modDistance(phiT - phiTp, 0.0, 2.0 * pi);
  rep.maxViolation = std::max({rep.conservation, rep.crossTerm, rep.phaseSum,
                               rep.phaseEqual, rep.phaseQuarter});
  return rep;
}

CavityCoeffs truncated_cavity(const CavityParams& params, int bounces) {
  if (bounces < 0) throw ValidationError("bounce count must be >= 0");
  validateParams(params);
  const auto coeffs = solve_all_interfaces(params.p, params.eA, params.m);
  const InterfaceCoeffs& in = coeffs[0];
  const InterfaceCoeffs& back = coeffs[1];
  const InterfaceCoeffs& out = coeffs[2];
  const InterfaceCoeffs& neg = coeffs[3];

  CavityCoeffs c;
  c.E = in.E;
  c.Eprime = in.Eprime;
  c.delta = -in.Eprime * params.tau;
  c.beyondSchwinger = params.eA / (params.m * params.m * params.tau) > 1.0;

  const complexd ph = std::exp(kI * c.delta);
  const complexd ph2 = ph * ph;
  const complexd loop = out.r * back.r * ph2;
  c.denomMagnitude = std::abs(1.0 - loop);

  // Partial geometric sum 1 + loop + ... + loop^bounces.
  complexd partial = 0.0;
  complexd power = 1.0;
  for (int n = 0; n <= bounces; ++n) {
    partial += power;
    power *= loop;
  }
  c.rTot = in.r + in.t * out.r * back.t * ph2 * partial;
  c.tTot = in.t * out.t * ph * partial;
  c.rTotPrime = neg.r + neg.t * back.r * out.t * ph2 * partial;
  c.tTotPrime = c.tTot;
  return c;
}

CavityCoeffs cavity_from_reflectivity(double R) {
  if (!(R >= 0.0) || !std::isfinite(R)) {
    throw ValidationError("reflectivity must be finite and >= 0");
  }
  CavityCoeffs c;
  c.rTot = kI * std::sqrt(R);
  c.tTot = std::sqrt(1.0 + R);
  c.rTotPrime = -c.rTot;
  c.tTotPrime = c.tTot;
  return c;
}

GridSpec default_rmax_grid(double eAOverM) {
  GridSpec g;
  g.start = std::max(1e-3, eAOverM - 3.0);
  g.stop = eAOverM + 3.0;
  g.count = 1024;
  return g;
}

RmaxResult find_rmax(double mTau, double eAOverM, const GridSpec& kGrid) {
  if (kGrid.count < 512) {
    throw ValidationError("rmax grid needs at least 512 points");
  }
  if (!(kGrid.start > 0.0) || !(kGrid.stop > kGrid.start)) {
    throw ValidationError("rmax grid must satisfy 0 < start < stop");
  }

  auto evalR = [&](double k) {
    CavityParams params;
    params.p = k;
    params.eA = eAOverM;
    params.tau = mTau;
    return cavity_coefficients(params);
  };

  RmaxResult best{};
  if (eAOverM == 0.0) return best;  // no interface, R identically 0

  const double step = (kGrid.stop - kGrid.start) / (kGrid.count - 1);
  int bestIdx = 0;
  double bestR = -1.0;
  for (int i = 0; i < kGrid.count; ++i) {
    const double k = kGrid.start + step * i;
    const double R = evalR(k).R();
    if (R > bestR) {
      bestR = R;
      bestIdx = i;
    }
  }

  // Golden-section refinement in the bracket around the best grid point.
  double a = kGrid.start + step * std::max(0, bestIdx - 1);
  double b = kGrid.start + step * std::min(kGrid.count - 1, bestIdx + 1);
  const double gr = (1.0 + std::sqrt(5.0)) / 2.0;
  double c = b - (b - a) / gr;
  double d = a + (b - a) / gr;
  for (int it = 0; it < 200 && std::abs(b - a) > 1e-10; ++it) {
    if (evalR(c).R() > evalR(d).R()) {
      b = d;
    } else {
      a = c;
    }
    c = b - (b - a) / gr;
    d = a + (b - a) / gr;
  }
  double kStar = 0.5 * (a + b);
  if (evalR(kStar).R() < bestR) {
    kStar = kGrid.start + step * bestIdx;  // refinement bracket was multimodal
  }
  const CavityCoeffs cc = evalR(kStar);

  best.kStar = kStar;
  best.Rmax = cc.R();
  best.eta = best.Rmax * best.Rmax / ((1.0 + best.Rmax) * (1.0 + best.Rmax));
  best.denomMagnitude = cc.denomMagnitude;
  best.beyondSchwinger = cc.beyondSchwinger;
  return best;
}

}  // namespace tfp
