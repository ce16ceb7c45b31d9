#ifndef TFP_AMPLITUDE_HPP
#define TFP_AMPLITUDE_HPP

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tfp/spinor.hpp"

namespace tfp {

// Balanced beam splitter convention: reflection i/sqrt(2), transmission
// 1/sqrt(2).
complexd beam_splitter_reflect();
complexd beam_splitter_transmit();

// e^{-i energy timeArg}
struct PhaseFactor {
  double energy = 0.0;
  double timeArg = 0.0;
  complexd value() const;
};

// One path amplitude: ordered product of coefficients with a Pauli
// exclusion sign.
struct DiagramTerm {
  std::vector<complexd> factors;
  int exchangeParity = 1;  // +1 or -1
  complexd amplitude() const;
};

// Sum of signed path amplitudes (relative amplitude before vacuum
// normalization).
complexd compose_path(const std::vector<DiagramTerm>& terms);

// Independent pair-creation channels of an experiment.
struct VacuumChannel {
  double reflectivity = 0.0;
  int multiplicity = 1;
};
struct VacuumSpec {
  std::vector<VacuumChannel> channels;
};

// P_v = prod_i (1 + R_i)^{-m_i}
double vacuum_probability(const VacuumSpec& spec);

// Ratio rule for unmeasured modes: the probability of an outcome in the
// measured channels with any outcome in the unmeasured channels is
//   raw * vacuum_probability(all) / vacuum_probability(unmeasured),
// which cancels the unmeasured factors exactly.
double marginal_probability(double raw, const VacuumSpec& all,
                            const VacuumSpec& unmeasured);

struct ExperimentReport {
  std::map<std::string, double> outcomes;
  double vacuumProbability = 1.0;
  double sumCheck = 1.0;
};

// Multiplies every raw |amplitude|^2 by P_v and audits completeness.
// Throws NumericError when |sumCheck - 1| > tol.
ExperimentReport normalize_report(const std::map<std::string, double>& raw,
                                  const VacuumSpec& spec, double tol = 1e-8);

void to_json(nlohmann::json& j, const ExperimentReport& r);

}  // namespace tfp

#endif
