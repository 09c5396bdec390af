#pragma once

#include <span>
#include <vector>

#include "qtomo/types.hpp"

namespace qtomo {

/// Complex amplitudes (c1, c2, c3) on the basis |2,0>, |1,1>, |0,2>.
///
/// The vector is not required to be normalized: estimators return vectors
/// whose squared norm carries the total event rate (units 1/sqrt(time)).
class StateVector {
 public:
  StateVector() : amp_(Vec3::Zero()) {}
  StateVector(Complex c1, Complex c2, Complex c3) : amp_(c1, c2, c3) {}
  explicit StateVector(const Vec3& amp) : amp_(amp) {}

  const Vec3& amplitudes() const { return amp_; }
  Complex operator[](int j) const { return amp_[j]; }

  double norm() const { return amp_.norm(); }
  double squared_norm() const { return amp_.squaredNorm(); }

  StateVector operator*(Complex factor) const { return StateVector(amp_ * factor); }
  StateVector operator*(double factor) const { return StateVector(amp_ * factor); }

 private:
  Vec3 amp_;
};

/// Rotates the global phase so the largest-modulus amplitude is real and
/// nonnegative (lowest index wins ties). The norm is unchanged.
StateVector gauge_fixed(const StateVector& v);

/// Unit norm plus canonical gauge. Throws DegenerateStateError on a zero vector.
StateVector normalize(const StateVector& v);

/// Squared modulus of the normalized overlap; 1 for identical rays.
double fidelity_pure(const StateVector& a, const StateVector& b);

/// 3x3 Hermitian, unit-trace, positive-semidefinite matrix.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kPsdTol = 1e-10;

  /// Validates every invariant; throws InvalidArgumentError on violation.
  static DensityMatrix from_matrix(const Mat3& m);
  /// Hermitizes, divides by the trace and validates positivity.
  static DensityMatrix from_unnormalized(const Mat3& m);
  /// |c><c| / <c|c>.
  static DensityMatrix pure(const StateVector& c);

  const Mat3& matrix() const { return rho_; }
  Complex operator()(int row, int col) const { return rho_(row, col); }
  /// Ascending eigenvalues.
  Eigen::Vector3d eigenvalues() const;

 private:
  explicit DensityMatrix(const Mat3& m) : rho_(m) {}
  Mat3 rho_;
};

/// Sum of outer products c c^dagger, normalized to unit trace.
/// Throws DegenerateStateError when every component is zero.
DensityMatrix density_from_components(std::span<const StateVector> components);

/// Uhlmann fidelity [Tr sqrt(sqrt(rho0) rho sqrt(rho0))]^2.
double fidelity_mixed(const DensityMatrix& rho0, const DensityMatrix& rho);

/// Six fourth-order field moments. A, B, C are real; D, E, F complex.
struct CoherenceMatrix {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  Complex D;
  Complex E;
  Complex F;

  /// The 3x3 arrangement ((A, D, E), (D*, C, F), (E*, F*, B)).
  Mat3 matrix() const;
};

CoherenceMatrix coherence_matrix(const DensityMatrix& rho);
CoherenceMatrix coherence_matrix(const StateVector& c);

/// sqrt((|c1|^2 - |c3|^2)^2 + 2 |c1* c2 + c2* c3|^2) for a normalized vector.
double polarization_degree(const StateVector& v);

/// Two points on the Poincare sphere, one per photon. Angles in radians,
/// theta in [0, pi], phi in [0, 2 pi).
class PoincarePair {
 public:
  PoincarePair() = default;
  /// Reduces arbitrary angles to the principal ranges.
  PoincarePair(double theta_s, double phi_s, double theta_i, double phi_i);

  double theta_s() const { return theta_s_; }
  double phi_s() const { return phi_s_; }
  double theta_i() const { return theta_i_; }
  double phi_i() const { return phi_i_; }

 private:
  double theta_s_ = 0.0;
  double phi_s_ = 0.0;
  double theta_i_ = 0.0;
  double phi_i_ = 0.0;
};

/// Normalized state created by the symmetrized pair of single-photon
/// creation operators a^dagger(theta, phi) = cos(theta/2) a^dagger + e^{i phi} sin(theta/2) b^dagger.
StateVector from_poincare(const PoincarePair& p);

/// Inverse of from_poincare. The pair is unordered; the returned ordering is
/// deterministic but arbitrary.
PoincarePair to_poincare(const StateVector& v);

/// Angle between the two points as seen from the sphere center, in [0, pi].
double beta_angle(const PoincarePair& p);

/// 2 cos(beta/2) / (1 + cos^2(beta/2)).
double polarization_degree_from_beta(double beta);

}  // namespace qtomo
