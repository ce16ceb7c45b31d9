#include "tfp/oracle.hpp"

#include <array>
#include <cmath>
#include <functional>

#include <boost/numeric/odeint.hpp>

namespace tfp {

namespace {

constexpr complexd kI{0.0, 1.0};

// State layout: (Re a, Im a, Re c, Im c) for the two-component amplitude.
using State = std::array<double, 4>;

struct DiracRhs {
  double m;
  std::function<double(double)> k;

  void operator()(const State& y, State& dy, double t) const {
    const complexd a{y[0], y[1]};
    const complexd c{y[2], y[3]};
    const double kt = k(t);
    const complexd da = -kI * (m * a + kt * c);
    const complexd dc = -kI * (kt * a - m * c);
    dy[0] = da.real();
    dy[1] = da.imag();
    dy[2] = dc.real();
    dy[3] = dc.imag();
  }
};

struct Mode2 {
  double u, l;  // eigenvector components
  double energy;  // signed eigenvalue
};

Mode2 posMode(double k, double m) {
  const double E = std::sqrt(k * k + m * m);
  return {std::sqrt((E + m) / (2.0 * E)), k / std::sqrt(2.0 * E * (E + m)), E};
}

Mode2 negMode(double k, double m) {
  const double E = std::sqrt(k * k + m * m);
  const double s = k >= 0.0 ? 1.0 : -1.0;
  return {std::sqrt((E - m) / (2.0 * E)), -s * std::sqrt((E + m) / (2.0 * E)),
          -E};
}

struct Transfer {
  complexd r, t;
};

// Evolves both incoming-region basis modes across the profile and extracts
// (r, t) for the scattering boundary conditions (incident 1, reflected r)
// -> (transmitted t, 0).
Transfer transferCoefficients(const DiracRhs& rhs, double t0, double t1,
                              double kIn, double kOut, double relTol,
                              double absTol) {
  namespace ode = boost::numeric::odeint;
  const Mode2 inP = posMode(kIn, rhs.m);
  const Mode2 inN = negMode(kIn, rhs.m);
  const Mode2 outP = posMode(kOut, rhs.m);
  const Mode2 outN = negMode(kOut, rhs.m);

  auto evolve = [&](const Mode2& mode) {
    const complexd phase = std::exp(-kI * mode.energy * t0);
    State y{(mode.u * phase).real(), (mode.u * phase).imag(),
            (mode.l * phase).real(), (mode.l * phase).imag()};
    auto stepper = ode::make_controlled<
        ode::runge_kutta_dopri5<State>>(absTol, relTol);
    ode::integrate_adaptive(stepper, rhs, y, t0, t1, (t1 - t0) / 1000.0);
    return y;
  };

  auto decompose = [&](const State& y) {
    const complexd a{y[0], y[1]};
    const complexd c{y[2], y[3]};
    // w_pm(t1) = v_pm e^{-i E_pm t1}; coefficients in the outgoing basis.
    const complexd cp =
        (outP.u * a + outP.l * c) * std::exp(kI * outP.energy * t1);
    const complexd cn =
        (outN.u * a + outN.l * c) * std::exp(kI * outN.energy * t1);
    return std::array<complexd, 2>{cp, cn};
  };

  const auto colP = decompose(evolve(inP));
  const auto colN = decompose(evolve(inN));
  // n maps incoming-basis coefficients to outgoing-basis coefficients.
  const Mat2 n{colP[0], colN[0], colP[1], colN[1]};
  const Mat2 nInv = n.inverse();
  // (1, r)^T = nInv (t, 0)^T
  const complexd t = 1.0 / nInv.m00;
  const complexd r = nInv.m10 * t;
  return {r, t};
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

OracleResult runLevels(const std::function<Transfer(double)>& level,
                       const OracleSettings& settings) {
  if (!(settings.epsilon > 0.0)) {
    throw ValidationError("oracle epsilon must be positive");
  }
  if (settings.levels < 3) {
    throw ValidationError("oracle needs at least 3 refinement levels");
  }

  OracleResult result;
  double eps = settings.epsilon;
  for (int i = 0; i < settings.levels; ++i) {
    const Transfer tr = level(eps);
    result.levels.push_back({eps, tr.r, tr.t});
    eps /= 2.0;
  }

  auto richardson = [&](auto getter) {
    const int nLevels = static_cast<int>(result.levels.size());
    const double x0 = getter(result.levels[nLevels - 3]);
    const double x1 = getter(result.levels[nLevels - 2]);
    const double x2 = getter(result.levels[nLevels - 1]);
    const double d1 = x1 - x0;
    const double d2 = x2 - x1;
    if (d2 == 0.0) return std::array<double, 3>{x2, 0.0, 0.0};
    if (std::abs(d2) >= std::abs(d1)) {
      throw NumericError(
          "oracle refinement not converging (Richardson residual " +
          std::to_string(std::abs(d2)) + ")");
    }
    const double ratio = d1 / d2;
    const double order = std::log2(std::abs(ratio));
    const double extrap = x2 + d2 / (ratio - 1.0);
    return std::array<double, 3>{extrap, order, std::abs(d2)};
  };

  const auto rExtrap =
      richardson([](const OracleLevel& l) { return std::abs(l.r); });
  const auto tExtrap =
      richardson([](const OracleLevel& l) { return std::abs(l.t); });
  result.rAbs = rExtrap[0];
  result.tAbs = tExtrap[0];
  result.order = rExtrap[1];
  result.residual = rExtrap[2];
  return result;
}

}  // namespace

OracleResult ode_interface_oracle(double p, double eA, double m,
                                  const OracleSettings& settings) {
  if (!(p > 0.0) || !(m > 0.0) || !std::isfinite(eA)) {
    throw ValidationError("invalid oracle parameters");
  }
  const double q = p - eA;
  if (q == 0.0) {
    throw ValidationError(
        "degenerate q = 0 profile not supported by the oracle");
  }
  return runLevels(
      [&](double eps) {
        DiracRhs rhs{m, [=](double t) { return p - eA * sigmoid(t / eps); }};
        const double pad = settings.pad * eps;
        return transferCoefficients(rhs, -pad, pad, p, q, settings.relTol,
                                    settings.absTol);
      },
      settings);
}

OracleResult ode_cavity_oracle(double p, double eA, double tau, double m,
                               const OracleSettings& settings) {
  if (!(p > 0.0) || !(m > 0.0) || !(tau > 0.0) || !std::isfinite(eA)) {
    throw ValidationError("invalid oracle parameters");
  }
  return runLevels(
      [&](double eps) {
        DiracRhs rhs{m, [=](double t) {
                       return p - eA * (sigmoid(t / eps) -
                                        sigmoid((t - tau) / eps));
                     }};
        const double pad = settings.pad * eps;
        return transferCoefficients(rhs, -pad, tau + pad, p, p,
                                    settings.relTol, settings.absTol);
      },
      settings);
}

}  // namespace tfp
