#pragma once

#include "qtomo/state.hpp"

namespace qtomo {

inline constexpr double kQuarterWave = kPi / 4.0;
inline constexpr double kHalfWave = kPi / 2.0;

/// Retardation plate: optical thickness delta in [0, pi] and orientation angle,
/// both in radians. The orientation is reduced to (-pi/2, pi/2] since the plate
/// acts with period pi.
class WavePlateSetting {
 public:
  WavePlateSetting() = default;
  WavePlateSetting(double delta, double angle);

  static WavePlateSetting quarter(double angle) { return {kQuarterWave, angle}; }
  static WavePlateSetting half(double angle) { return {kHalfWave, angle}; }

  double delta() const { return delta_; }
  double angle() const { return angle_; }

  WavePlateSetting rotated(double extra_angle) const { return {delta_, angle_ + extra_angle}; }

 private:
  double delta_ = 0.0;
  double angle_ = 0.0;
};

struct PlateCoefficients {
  Complex t;
  Complex r;
};

/// t = cos d + i sin d cos 2a, r = i sin d sin 2a.
PlateCoefficients plate_coeffs(const WavePlateSetting& p);

/// Single-photon 2x2 transfer matrix ((t, r), (-r*, t*)) on (H, V) modes.
Eigen::Matrix2cd jones_matrix(const WavePlateSetting& p);

/// Induced 3x3 unitary on the biphoton basis |2,0>, |1,1>, |0,2>.
Mat3 qutrit_unitary(const WavePlateSetting& p);

StateVector apply_plate(const StateVector& v, const WavePlateSetting& p);

/// Quarter-wave then half-wave plate in front of a polarizing prism in one
/// arm of the coincidence scheme.
struct ArmPlates {
  WavePlateSetting quarter;
  WavePlateSetting half;
};

/// Biphoton projection amplitude row for one setting of the two arms.
///
/// Each arm contributes the vertical-output row of half * quarter. The idler arm
/// reads its orientation angles mirrored (see the ledger), which reproduces the
/// nine tabulated rows of the first protocol. The beam-splitter factors are
/// included, so |row . c|^2 is the coincidence rate. Gauge-fixed.
Row3 projection_row(const ArmPlates& signal, const ArmPlates& idler);

}  // namespace qtomo
