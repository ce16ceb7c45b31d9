#include <doctest.h>

#include <cmath>
#include <random>

#include "tfp/experiments.hpp"

using tfp::CavityCoeffs;
using tfp::complexd;
using tfp::ExperimentReport;

namespace {

CavityCoeffs refCavity() {
  tfp::CavityParams params;
  params.p = 1.0;
  params.eA = 3.0;
  params.tau = 1.5;
  return tfp::cavity_coefficients(params);
}

const double kPi = std::acos(-1.0);

}  // namespace

TEST_CASE("golden reflectivity and unit visibility") {
  const double R0 = tfp::golden_reflectivity();
  CHECK(R0 == doctest::Approx(1.6180339887498949).epsilon(1e-15));
  CHECK(R0 * R0 == doctest::Approx(1.0 + R0).epsilon(1e-14));
  CHECK(tfp::interferometer_visibility(R0) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("double cavity: R = 0 is all transmission") {
  const ExperimentReport rep = tfp::double_cavity(0.0);
  CHECK(rep.outcomes.at("transmitted") == doctest::Approx(1.0));
  CHECK(rep.outcomes.at("reflected") == doctest::Approx(0.0));
  CHECK(rep.outcomes.at("electron_pair") == doctest::Approx(0.0));
}

TEST_CASE("double cavity closed forms and normalization") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> rd(0.0, 20.0);
  for (int i = 0; i < 1000; ++i) {
    const double R = rd(rng);
    const ExperimentReport rep = tfp::double_cavity(R);
    const double pv = 1.0 / ((1.0 + R) * (1.0 + R));
    CHECK(std::abs(rep.outcomes.at("reflected") - pv * R * R) < 1e-12);
    CHECK(std::abs(rep.outcomes.at("transmitted") - pv * (1.0 + R)) < 1e-12);
    CHECK(std::abs(rep.outcomes.at("electron_pair") - pv * R) < 1e-12);
    CHECK(std::abs(rep.sumCheck - 1.0) < 1e-10);
  }
  // R near the small golden point 1/R0^2.
  const ExperimentReport rep = tfp::double_cavity(0.3819660112501051);
  CHECK(std::abs(rep.sumCheck - 1.0) < 1e-12);
}

TEST_CASE("interferometer reference point (frozen)") {
  const ExperimentReport rep = tfp::interferometer(refCavity(), 0.9);
  CHECK(rep.outcomes.at("D1_only") ==
        doctest::Approx(0.51151052180125989).epsilon(1e-12));
  CHECK(rep.outcomes.at("D3_only") ==
        doctest::Approx(0.4799819869676602).epsilon(1e-12));
  CHECK(rep.outcomes.at("D1_D2_D3") ==
        doctest::Approx(0.0085074912310803517).epsilon(1e-12));
}

TEST_CASE("interferometer equals the closed forms for random (R, theta)") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> rd(0.0, 10.0);
  std::uniform_real_distribution<double> td(-kPi, kPi);
  for (int i = 0; i < 500; ++i) {
    const double R = rd(rng);
    const double theta = td(rng);
    const CavityCoeffs c = tfp::cavity_from_reflectivity(R);
    const ExperimentReport rep = tfp::interferometer(c, theta);
    const double T = 1.0 + R;
    const double pv = 1.0 / (T * T);
    const double V = tfp::interferometer_visibility(R);
    const double pD1 =
        0.5 * pv * (T + R * R) * (1.0 + V * std::sin(theta));
    const double pD3 = 0.5 * pv * T;
    const double pD123 =
        0.5 * pv * R * (1.0 + T - 2.0 * std::sqrt(T) * std::sin(theta));
    CHECK(std::abs(rep.outcomes.at("D1_only") - pD1) < 1e-10);
    CHECK(std::abs(rep.outcomes.at("D3_only") - pD3) < 1e-10);
    CHECK(std::abs(rep.outcomes.at("D1_D2_D3") - pD123) < 1e-10);
    CHECK(std::abs(rep.sumCheck - 1.0) < 1e-10);
  }
}

TEST_CASE("theta marginal of D1 is flat (retro signalling impossible)") {
  const CavityCoeffs c =
      tfp::cavity_from_reflectivity(tfp::golden_reflectivity());
  // P(D1) = P(D1 alone) + P(D1 D2 D3) must not depend on theta.
  double ref = -1.0;
  for (int i = 0; i < 100; ++i) {
    const double theta = -kPi + 2.0 * kPi * i / 99.0;
    const ExperimentReport rep = tfp::interferometer(c, theta);
    const double pD1 =
        rep.outcomes.at("D1_only") + rep.outcomes.at("D1_D2_D3");
    if (ref < 0.0) ref = pD1;
    CHECK(std::abs(pD1 - ref) < 1e-10);
  }
}

TEST_CASE("dark port: P(D1 alone) = 0 at (R_0, theta = -pi/2)") {
  const CavityCoeffs c =
      tfp::cavity_from_reflectivity(tfp::golden_reflectivity());
  const ExperimentReport rep = tfp::interferometer(c, -kPi / 2.0);
  CHECK(rep.outcomes.at("D1_only") < 1e-12);
}

TEST_CASE("theta_from_chi / xi_from_chi round trip") {
  const CavityCoeffs c = refCavity();
  const double chi = 0.37, E = c.E, tB = 2.0, tA = 0.5;
  const double xi = tfp::xi_from_chi(chi, E, tB, tA);
  CHECK(xi == doctest::Approx(chi - 2.0 * E * 1.5));
  const double theta = tfp::theta_from_chi(chi, E, tB, tA, c);
  CHECK(theta == doctest::Approx(xi + 2.0 * std::arg(c.rTot) -
                                 std::arg(c.tTot)));
}

TEST_CASE("retro game: analytic values") {
  const CavityCoeffs c =
      tfp::cavity_from_reflectivity(tfp::golden_reflectivity());
  const tfp::GameReport rep = tfp::retro_game(c);
  CHECK(rep.analyticGain ==
        doctest::Approx(0.69098300562505255).epsilon(1e-14));
  CHECK(rep.classicalBound == 0.5);
  CHECK(rep.postselectedGain == 1.0);
  CHECK(rep.joint.size() == 6);
  double sum = 0.0;
  for (const auto& e : rep.joint) sum += e.jointProbability;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(rep.hasMonteCarlo);
}

TEST_CASE("retro game rejects wrong reflectivity") {
  CHECK_THROWS_AS(tfp::retro_game(tfp::cavity_from_reflectivity(1.0)),
                  tfp::ValidationError);
}

TEST_CASE("retro game Monte Carlo agrees within 3 sigma and is "
          "worker-count independent") {
  const CavityCoeffs c =
      tfp::cavity_from_reflectivity(tfp::golden_reflectivity());
  tfp::GameConfig cfg;
  cfg.trials = 1000000;
  cfg.seed = 20240901;
  cfg.workers = 1;
  const tfp::GameReport serial = tfp::retro_game(c, cfg);
  cfg.workers = 4;
  const tfp::GameReport parallel = tfp::retro_game(c, cfg);
  CHECK(serial.mcGain == parallel.mcGain);  // bitwise
  CHECK(std::abs(serial.mcGain - serial.analyticGain) <
        3.0 * serial.mcStdErr);
}

TEST_CASE("GYNI gain thresholds") {
  CHECK(tfp::gyni_gain(1.0 + std::sqrt(2.0)) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(tfp::gyni_gain(143.13) ==
        doctest::Approx(0.9861717767349546).epsilon(1e-12));
  CHECK(std::abs(tfp::gyni_gain(143.13) - 0.9862) < 1e-4);
  CHECK(tfp::gyni_gain(0.0) == 0.0);
  // Root bracketing of gain = 1/2 around R = 1 + sqrt 2.
  double lo = 2.0, hi = 3.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (tfp::gyni_gain(mid) < 0.5) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  CHECK(0.5 * (lo + hi) ==
        doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("quantum switch reference point (frozen)") {
  tfp::SwitchSpec spec;
  spec.uA = tfp::UnitaryMatrix2(tfp::Mat2::sigmaX());
  spec.uB = tfp::UnitaryMatrix2(tfp::Mat2::sigmaZ());
  spec.xi = 0.7;
  spec.cavity = refCavity();
  const tfp::SwitchReport rep = tfp::quantum_switch(spec);
  CHECK(rep.report.outcomes.at("D2_only") ==
        doctest::Approx(0.21664277524764963).epsilon(1e-12));
  CHECK(rep.report.outcomes.at("D3_only") ==
        doctest::Approx(0.24486119360738998).epsilon(1e-12));

  // Swapping both unitaries to the identity exchanges the two detectors.
  tfp::SwitchSpec ident = spec;
  ident.uA = tfp::UnitaryMatrix2(tfp::Mat2::identity());
  ident.uB = tfp::UnitaryMatrix2(tfp::Mat2::identity());
  const tfp::SwitchReport repId = tfp::quantum_switch(ident);
  CHECK(repId.report.outcomes.at("D2_only") ==
        doctest::Approx(0.24486119360738998).epsilon(1e-12));
  CHECK(repId.report.outcomes.at("D3_only") ==
        doctest::Approx(0.21664277524764963).epsilon(1e-12));
}

TEST_CASE("quantum switch: P(D2)+P(D3) is xi-invariant; audit closes") {
  tfp::SwitchSpec spec;
  spec.uA = tfp::UnitaryMatrix2(tfp::Mat2::sigmaX());
  spec.uB = tfp::UnitaryMatrix2(tfp::Mat2::sigmaZ());
  spec.cavity = refCavity();
  double ref = -1.0;
  for (double xi : {0.0, 0.3, 0.7, 1.9, 3.0}) {
    spec.xi = xi;
    const tfp::SwitchReport rep = tfp::quantum_switch(spec);
    const double total = rep.report.outcomes.at("D2_only") +
                         rep.report.outcomes.at("D3_only");
    if (ref < 0.0) ref = total;
    CHECK(std::abs(total - ref) < 1e-10);
    CHECK(std::abs(rep.vacuumAudit - 1.0) < 1e-10);
    CHECK(std::abs(rep.report.sumCheck - 1.0) < 1e-10);
  }
  const double R = spec.cavity.R();
  const double T = spec.cavity.T();
  const double expected =
      0.5 * (T * T + R * R) / std::pow(1.0 + R, 4);
  CHECK(ref == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(0.4615039688550393).epsilon(1e-12));
}

TEST_CASE("ctc ring reference point (frozen)") {
  tfp::CtcSpec spec;
  spec.u = tfp::UnitaryMatrix2(tfp::Mat2::sigmaX());
  spec.xi = 0.7;
  spec.cavity = refCavity();
  const tfp::CtcReport rep = tfp::ctc_ring(spec);
  CHECK(rep.b.norm2() == doctest::Approx(0.50034773710241198).epsilon(1e-12));
  CHECK(rep.c.norm2() == doctest::Approx(0.50052285750378123).epsilon(1e-12));
  CHECK(rep.variantT2.vacuumProbability ==
        doctest::Approx(0.33568052554057082).epsilon(1e-12));
  CHECK(rep.variantR2.vacuumProbability ==
        doctest::Approx(0.43407621207881036).epsilon(1e-12));
  CHECK(rep.report.outcomes.at("D1_only") ==
        doctest::Approx(0.16795699134357303).epsilon(1e-12));
  CHECK(rep.report.outcomes.at("D3_only") ==
        doctest::Approx(0.17502300129364856).epsilon(1e-12));
  CHECK(rep.fixedPointResidual < 1e-12);
  CHECK(rep.variantT2.sumResidual < 1e-12);
  CHECK(rep.variantR2.sumResidual < 1e-12);
}

TEST_CASE("ctc ring: zero reflectivity loop is a plain beam splitter") {
  tfp::CtcSpec spec;
  spec.cavity = tfp::cavity_from_reflectivity(0.0);
  const tfp::CtcReport rep = tfp::ctc_ring(spec);
  CHECK(rep.b.norm2() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rep.c.norm2() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rep.fixedPointResidual < 1e-14);
  CHECK(rep.conditionNumber == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("ctc ring: scalar loop amplitude scales as 1/|1 + zeta|") {
  // With U = identity the fixed point is scalar: c = a / (sqrt2 (1 + zeta)).
  tfp::CtcSpec spec;
  spec.cavity = refCavity();
  const tfp::CtcReport rep = tfp::ctc_ring(spec);
  const complexd r2 = spec.cavity.rTot * spec.cavity.rTot;
  const complexd zeta = complexd(0.0, 1.0) * r2 / std::sqrt(2.0);
  const double expected = 0.5 / std::norm(1.0 + zeta);
  CHECK(rep.c.norm2() == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("deutsch CTC exact points") {
  const ExperimentReport a0 = tfp::deutsch_ctc(0.0);
  CHECK(a0.outcomes.at("D1_only") == 2.0 / 3.0);  // exact in fp
  const ExperimentReport a1 = tfp::deutsch_ctc(1.0);
  CHECK(a1.outcomes.at("D1_only") == 2.0 / 9.0);
  CHECK_THROWS_AS(tfp::deutsch_ctc(0.0, 0.5), tfp::ValidationError);
  CHECK_NOTHROW(tfp::deutsch_ctc(0.0, 0.5, false));
}
