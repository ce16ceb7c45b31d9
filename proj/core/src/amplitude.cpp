#include "tfp/amplitude.hpp"

#include <cmath>

namespace tfp {

namespace {
constexpr complexd kI{0.0, 1.0};
}

complexd beam_splitter_reflect() { return kI / std::sqrt(2.0); }

complexd beam_splitter_transmit() { return 1.0 / std::sqrt(2.0); }

complexd PhaseFactor::value() const { return std::exp(-kI * energy * timeArg); }

complexd DiagramTerm::amplitude() const {
  if (exchangeParity != 1 && exchangeParity != -1) {
    throw ValidationError("exchange parity must be +1 or -1");
  }
  complexd prod = static_cast<double>(exchangeParity);
  for (const complexd& f : factors) prod *= f;
  if (!std::isfinite(prod.real()) || !std::isfinite(prod.imag())) {
    throw ValidationError("diagram amplitude is not finite");
  }
  return prod;
}

complexd compose_path(const std::vector<DiagramTerm>& terms) {
  complexd sum = 0.0;
  for (const DiagramTerm& term : terms) sum += term.amplitude();
  return sum;
}

double vacuum_probability(const VacuumSpec& spec) {
  double pv = 1.0;
  for (const VacuumChannel& ch : spec.channels) {
    if (!(ch.reflectivity >= 0.0) || !std::isfinite(ch.reflectivity)) {
      throw ValidationError("channel reflectivity must be finite and >= 0");
    }
    if (ch.multiplicity < 1) {
      throw ValidationError("channel multiplicity must be >= 1");
    }
    pv /= std::pow(1.0 + ch.reflectivity, ch.multiplicity);
  }
  return pv;
}

double marginal_probability(double raw, const VacuumSpec& all,
                            const VacuumSpec& unmeasured) {
  return raw * vacuum_probability(all) / vacuum_probability(unmeasured);
}

ExperimentReport normalize_report(const std::map<std::string, double>& raw,
                                  const VacuumSpec& spec, double tol) {
  ExperimentReport rep;
  rep.vacuumProbability = vacuum_probability(spec);
  double sum = 0.0;
  for (const auto& [label, weight] : raw) {
    if (!(weight >= 0.0)) {
      throw ValidationError("raw outcome weight must be >= 0: " + label);
    }
    const double prob = weight * rep.vacuumProbability;
    rep.outcomes[label] = prob;
    sum += prob;
  }
  rep.sumCheck = sum;
  if (std::abs(sum - 1.0) > tol) {
    throw NumericError("incomplete outcome set: sum deviates from 1 by " +
                       std::to_string(sum - 1.0));
  }
  return rep;
}

void to_json(nlohmann::json& j, const ExperimentReport& r) {
  j = nlohmann::json{{"outcomes", r.outcomes},
                     {"vacuumProbability", r.vacuumProbability},
                     {"sumCheck", r.sumCheck}};
}

}  // namespace tfp
