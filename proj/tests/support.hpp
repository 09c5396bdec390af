#pragma once

// Seeded generators and independent oracles shared by the unit and acceptance tests.

#include <array>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "qtomo/qtomo.hpp"

namespace qtomo::oracle {

inline StateVector random_state(Rng& rng) {
  Vec3 c;
  for (int j = 0; j < 3; ++j) c[j] = Complex(rng.normal(), rng.normal());
  return StateVector(c / c.norm());
}

inline WavePlateSetting random_plate(Rng& rng) {
  return WavePlateSetting(kPi * rng.uniform(), kPi * (rng.uniform() - 0.5));
}

inline DensityMatrix random_density(Rng& rng) {
  Mat3 a;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) a(r, c) = Complex(rng.normal(), rng.normal());
  return DensityMatrix::from_unnormalized(a * a.adjoint());
}

inline PoincarePair random_pair(Rng& rng) {
  // Uniform on the sphere: cos(theta) uniform.
  auto theta = [&] { return std::acos(1.0 - 2.0 * rng.uniform()); };
  const double ts = theta();
  const double ps = 2.0 * kPi * rng.uniform();
  const double ti = theta();
  const double pi = 2.0 * kPi * rng.uniform();
  return PoincarePair(ts, ps, ti, pi);
}

/// Isometry from the symmetric subspace of two photons (HH, HV, VH, VV) onto
/// |2,0>, |1,1>, |0,2>.
inline Eigen::Matrix<Complex, 3, 4> symmetric_projector() {
  Eigen::Matrix<Complex, 3, 4> s = Eigen::Matrix<Complex, 3, 4>::Zero();
  s(0, 0) = 1.0;
  s(1, 1) = s(1, 2) = 1.0 / std::sqrt(2.0);
  s(2, 3) = 1.0;
  return s;
}

/// Qutrit unitary as the restriction of D (x) D to the symmetric subspace.
inline Mat3 unitary_from_tensor(const Eigen::Matrix2cd& d) {
  Eigen::Matrix4cd dd;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int e = 0; e < 2; ++e) dd(2 * a + b, 2 * c + e) = d(a, c) * d(b, e);
  auto s = symmetric_projector();
  return s * dd * s.adjoint();
}

/// Tabulated moment expressions of the nine-row protocol, evaluated from A..F.
inline std::array<double, 9> table1_moments(const CoherenceMatrix& k) {
  return {k.A / 4.0,
          k.C / 4.0,
          k.B / 4.0,
          (k.B + k.C + 2.0 * k.F.imag()) / 8.0,
          (k.B + k.C - 2.0 * k.F.real()) / 8.0,
          (k.A + k.C - 2.0 * k.D.real()) / 8.0,
          (k.A + k.C + 2.0 * k.D.imag()) / 8.0,
          (k.A + k.B - 2.0 * k.E.imag()) / 16.0,
          (k.A + k.B - 2.0 * k.E.real()) / 16.0};
}

/// The printed 9x3 instrumental matrix of the nine-row protocol.
inline Eigen::Matrix<Complex, 9, 3> printed_protocol1_matrix() {
  const double r2 = std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  Eigen::Matrix<Complex, 9, 3> x;
  x << 1.0 / r2, 0.0, 0.0,
      0.0, 0.5, 0.0,
      0.0, 0.0, 1.0 / r2,
      0.0, 1.0 / (2.0 * r2), -0.5 * i,
      0.0, 1.0 / (2.0 * r2), -0.5,
      0.5, -1.0 / (2.0 * r2), 0.0,
      0.5, -i / (2.0 * r2), 0.0,
      1.0 / (2.0 * r2), 0.0, i / (2.0 * r2),
      1.0 / (2.0 * r2), 0.0, -1.0 / (2.0 * r2);
  return x;
}

/// Max over rows of the distance between two rows after removing their relative phase.
inline double rowwise_phase_distance(const Row3& a, const Row3& b) {
  const Complex ov = b.dot(a);  // conj(b) . a
  const Complex ph = std::abs(ov) > 0.0 ? ov / std::abs(ov) : Complex(1.0);
  return (a - ph * b).cwiseAbs().maxCoeff();
}

inline double max_abs(const Mat3& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace qtomo::oracle
