#pragma once

#include <string>
#include <vector>

#include "qtomo/simulator.hpp"

namespace qtomo {

/// Plate retardations used for state preparation in the two source regimes.
inline constexpr double kPulsedPlateRetardation = 0.656;
inline constexpr double kCwPlateRetardation = 0.9046;

enum class SourceState { Psi1, Psi2, Psi3 };

/// |2,0>, |1,1>, |0,2>.
StateVector source_state(SourceState s);
/// (|2,0> - |0,2>) / sqrt2, the state a half-wave plate at 22.5 deg maps to -|1,1>.
StateVector psi_perp();

SourceState parse_source(const std::string& name);
std::string to_string(SourceState s);

/// Source state sent through one plate, normalized and gauge-fixed.
StateVector plate_prepared(SourceState source, const WavePlateSetting& plate);

/// |0,2> through a 0.656 rad plate at alpha (pulsed regime).
StateVector pulsed_state(double alpha_deg);
/// |1,1> through a 0.9046 rad plate at alpha (cw regime).
StateVector cw_state(double alpha_deg);

/// Two-component mixture: |0,2> through 0.656 rad plates at -30 deg and +45 deg,
/// each scaled so that it produces `events_per_component` expected events under p.
std::vector<WeightedComponent> reference_mixture(const TomographyProtocol& p, double events_per_component);

/// Unit-trace density matrix of reference_mixture for the nine-row protocol
/// with unit exposures (scale independent).
DensityMatrix reference_mixture_density();

}  // namespace qtomo
