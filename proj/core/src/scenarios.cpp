#include "qtomo/scenarios.hpp"

namespace qtomo {

StateVector source_state(SourceState s) {
  switch (s) {
    case SourceState::Psi1: return {1.0, 0.0, 0.0};
    case SourceState::Psi2: return {0.0, 1.0, 0.0};
    case SourceState::Psi3: return {0.0, 0.0, 1.0};
  }
  throw InvalidArgumentError("unknown source state");
}

StateVector psi_perp() { return StateVector(1.0 / kSqrt2, 0.0, -1.0 / kSqrt2); }

SourceState parse_source(const std::string& name) {
  if (name == "psi1" || name == "Psi1" || name == "20") return SourceState::Psi1;
  if (name == "psi2" || name == "Psi2" || name == "11") return SourceState::Psi2;
  if (name == "psi3" || name == "Psi3" || name == "02") return SourceState::Psi3;
  throw InvalidArgumentError("unknown source state '" + name + "' (expected psi1, psi2 or psi3)");
}

std::string to_string(SourceState s) {
  switch (s) {
    case SourceState::Psi1: return "psi1";
    case SourceState::Psi2: return "psi2";
    case SourceState::Psi3: return "psi3";
  }
  return "unknown";
}

StateVector plate_prepared(SourceState source, const WavePlateSetting& plate) {
  return normalize(apply_plate(source_state(source), plate));
}

StateVector pulsed_state(double alpha_deg) {
  return plate_prepared(SourceState::Psi3, WavePlateSetting(kPulsedPlateRetardation, deg_to_rad(alpha_deg)));
}

StateVector cw_state(double alpha_deg) {
  return plate_prepared(SourceState::Psi2, WavePlateSetting(kCwPlateRetardation, deg_to_rad(alpha_deg)));
}

std::vector<WeightedComponent> reference_mixture(const TomographyProtocol& p, double events_per_component) {
  std::vector<WeightedComponent> out;
  for (double alpha : {-30.0, 45.0}) {
    out.push_back({1.0, scale_to_events(p, pulsed_state(alpha), events_per_component)});
  }
  return out;
}

DensityMatrix reference_mixture_density() {
  return DensityMatrix::from_unnormalized(mixture_intensity_matrix(reference_mixture(build_protocol1(), 1.0)));
}

}  // namespace qtomo
