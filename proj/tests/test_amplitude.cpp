#include <doctest.h>

#include <cmath>
#include <random>

#include "tfp/amplitude.hpp"

using tfp::complexd;
using tfp::DiagramTerm;
using tfp::VacuumChannel;
using tfp::VacuumSpec;

TEST_CASE("beam splitter convention") {
  CHECK(std::abs(tfp::beam_splitter_reflect() -
                 complexd(0.0, 1.0 / std::sqrt(2.0))) < 1e-15);
  CHECK(std::abs(tfp::beam_splitter_transmit() - 1.0 / std::sqrt(2.0)) <
        1e-15);
  CHECK(std::norm(tfp::beam_splitter_reflect()) +
            std::norm(tfp::beam_splitter_transmit()) ==
        doctest::Approx(1.0));
}

TEST_CASE("compose_path sums signed products") {
  const DiagramTerm a{{complexd(2.0, 0.0), complexd(0.0, 1.0)}, 1};
  const DiagramTerm b{{complexd(0.0, 1.0)}, -1};
  const complexd sum = tfp::compose_path({a, b});
  CHECK(std::abs(sum - complexd(0.0, 1.0)) < 1e-15);  // 2i - i
}

TEST_CASE("exchange antisymmetry: swapped-parity pair cancels") {
  const DiagramTerm a{{complexd(0.3, 0.7)}, 1};
  const DiagramTerm b{{complexd(0.3, 0.7)}, -1};
  CHECK(std::abs(tfp::compose_path({a, b})) < 1e-15);
}

TEST_CASE("invalid parity is rejected") {
  DiagramTerm term{{complexd(1.0, 0.0)}, 2};
  CHECK_THROWS_AS(term.amplitude(), tfp::ValidationError);
}

TEST_CASE("phase factor value") {
  const tfp::PhaseFactor ph{2.0, 1.5};
  CHECK(std::abs(ph.value() - std::exp(complexd(0.0, -3.0))) < 1e-15);
}

TEST_CASE("vacuum probability factorizes over channels") {
  const VacuumSpec spec{{{0.5, 2}, {3.0, 1}}};
  CHECK(tfp::vacuum_probability(spec) ==
        doctest::Approx(1.0 / (1.5 * 1.5 * 4.0)).epsilon(1e-15));
  CHECK(tfp::vacuum_probability({}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(tfp::vacuum_probability(VacuumSpec{{{-0.1, 1}}}),
                  tfp::ValidationError);
  CHECK_THROWS_AS(tfp::vacuum_probability(VacuumSpec{{{0.1, 0}}}),
                  tfp::ValidationError);
}

TEST_CASE("marginal ratio rule cancels unmeasured channels exactly") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> rd(0.0, 5.0);
  for (int n : {2, 5, 10}) {
    VacuumSpec all, unmeasured;
    for (int i = 0; i < n; ++i) {
      const double R = rd(rng);
      all.channels.push_back({R, 1});
      if (i % 2 == 0) unmeasured.channels.push_back({R, 1});
    }
    VacuumSpec measured;
    for (int i = 1; i < n; i += 2) measured.channels.push_back(all.channels[i]);
    const double viaRatio = tfp::marginal_probability(1.0, all, unmeasured);
    const double direct = tfp::vacuum_probability(measured);
    CHECK(viaRatio == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("normalize_report multiplies by P_v and audits the sum") {
  const VacuumSpec spec{{{1.0, 1}}};  // P_v = 1/2
  const auto rep = tfp::normalize_report({{"a", 0.5}, {"b", 1.5}}, spec);
  CHECK(rep.vacuumProbability == doctest::Approx(0.5));
  CHECK(rep.outcomes.at("a") == doctest::Approx(0.25));
  CHECK(rep.outcomes.at("b") == doctest::Approx(0.75));
  CHECK(rep.sumCheck == doctest::Approx(1.0));
  CHECK_THROWS_AS(tfp::normalize_report({{"a", 0.5}}, spec),
                  tfp::NumericError);
}
