#include "qtomo/optics.hpp"

#include <cmath>

namespace qtomo {

WavePlateSetting::WavePlateSetting(double delta, double angle) : delta_(delta) {
  if (!(delta >= 0.0 && delta <= kPi)) {
    throw InvalidArgumentError("plate optical thickness must lie in [0, pi]");
  }
  if (!std::isfinite(angle)) throw InvalidArgumentError("plate angle must be finite");
  double a = std::remainder(angle, kPi);  // [-pi/2, pi/2]
  if (a <= -kPi / 2.0) a += kPi;
  angle_ = a;
}

PlateCoefficients plate_coeffs(const WavePlateSetting& p) {
  const double sd = std::sin(p.delta());
  const double c2 = std::cos(2.0 * p.angle());
  const double s2 = std::sin(2.0 * p.angle());
  return {Complex(std::cos(p.delta()), sd * c2), Complex(0.0, sd * s2)};
}

Eigen::Matrix2cd jones_matrix(const WavePlateSetting& p) {
  auto [t, r] = plate_coeffs(p);
  Eigen::Matrix2cd d;
  d << t, r, -std::conj(r), std::conj(t);
  return d;
}

Mat3 qutrit_unitary(const WavePlateSetting& p) {
  auto [t, r] = plate_coeffs(p);
  const Complex tc = std::conj(t);
  const Complex rc = std::conj(r);
  Mat3 g;
  g << t * t, kSqrt2 * t * r, r * r,
      -kSqrt2 * t * rc, std::norm(t) - std::norm(r), kSqrt2 * tc * r,
      rc * rc, -kSqrt2 * tc * rc, tc * tc;
  return g;
}

StateVector apply_plate(const StateVector& v, const WavePlateSetting& p) {
  return StateVector(qutrit_unitary(p) * v.amplitudes());
}

namespace {

Eigen::RowVector2cd arm_row(const ArmPlates& arm) {
  Eigen::Matrix2cd m = jones_matrix(arm.half) * jones_matrix(arm.quarter);
  return m.row(1);
}

ArmPlates mirrored(const ArmPlates& arm) {
  return {WavePlateSetting(arm.quarter.delta(), -arm.quarter.angle()),
          WavePlateSetting(arm.half.delta(), -arm.half.angle())};
}

}  // namespace

Row3 projection_row(const ArmPlates& signal, const ArmPlates& idler) {
  const Eigen::RowVector2cd u = arm_row(signal);
  const Eigen::RowVector2cd w = arm_row(mirrored(idler));
  Vec3 row(u[0] * w[0] / kSqrt2, 0.5 * (u[0] * w[1] + u[1] * w[0]), u[1] * w[1] / kSqrt2);
  return gauge_fixed(StateVector(row)).amplitudes().transpose();
}

}  // namespace qtomo
