#include "qtomo/state.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace qtomo {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

// Eigenvalues this far below the largest are rounding noise of a rank-deficient
// matrix; their square roots (~1e-8) would otherwise dominate the fidelity error.
constexpr double kRankCut = 1e-14;

Eigen::Vector3d sqrt_spectrum(const Eigen::Vector3d& w) {
  const double cut = kRankCut * std::max(w.maxCoeff(), 0.0);
  return w.unaryExpr([cut](double x) { return x > cut ? std::sqrt(x) : 0.0; });
}

// Square root of a PSD Hermitian matrix; eigenvalues above -kPsdTol are clamped.
Mat3 psd_sqrt(const Mat3& m) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(m);
  const Eigen::Vector3d& w = es.eigenvalues();
  if (w.minCoeff() < -DensityMatrix::kPsdTol) {
    throw InvalidArgumentError("density matrix is not positive semidefinite");
  }
  return es.eigenvectors() * sqrt_spectrum(w).asDiagonal() * es.eigenvectors().adjoint();
}

double wrap_2pi(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

// Reduces (theta, phi) to theta in [0, pi], phi in [0, 2pi) describing the same point.
void reduce_angles(double& theta, double& phi) {
  theta = wrap_2pi(theta);
  if (theta > kPi) {
    theta = kTwoPi - theta;
    phi += kPi;
  }
  phi = wrap_2pi(phi);
}

Eigen::Vector3d unit_vector(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// Spinor (cos(theta/2), e^{i phi} sin(theta/2)) of a point on the sphere.
Eigen::Vector2cd spinor(double theta, double phi) {
  return {std::cos(0.5 * theta), std::polar(std::sin(0.5 * theta), phi)};
}

// Point whose stereographic coordinate is num/den (den = 0 is the south pole).
void point_from_projective(Complex num, Complex den, double& theta, double& phi) {
  theta = 2.0 * std::atan2(std::abs(num), std::abs(den));
  phi = (num == Complex(0.0) || den == Complex(0.0)) ? (num == Complex(0.0) ? 0.0 : std::arg(num))
                                                     : std::arg(num) - std::arg(den);
  reduce_angles(theta, phi);
}

}  // namespace

StateVector gauge_fixed(const StateVector& v) {
  const Vec3& a = v.amplitudes();
  double best = 0.0;
  for (int j = 0; j < kDim; ++j) best = std::max(best, std::abs(a[j]));
  if (best == 0.0) return v;
  int pivot = 0;
  // Near-equal moduli count as ties so that the choice is stable under rounding.
  while (std::abs(a[pivot]) < best * (1.0 - 1e-12)) ++pivot;
  Complex phase = std::conj(a[pivot]) / std::abs(a[pivot]);
  Vec3 out = a * phase;
  out[pivot] = Complex(std::abs(a[pivot]), 0.0);
  return StateVector(out);
}

StateVector normalize(const StateVector& v) {
  double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw DegenerateStateError("cannot normalize a zero or non-finite state vector");
  }
  return gauge_fixed(v * (1.0 / n));
}

double fidelity_pure(const StateVector& a, const StateVector& b) {
  double na = a.squared_norm();
  double nb = b.squared_norm();
  if (na == 0.0 || nb == 0.0) throw DegenerateStateError("fidelity of a zero vector");
  double f = std::norm(a.amplitudes().dot(b.amplitudes())) / (na * nb);
  return std::clamp(f, 0.0, 1.0);
}

DensityMatrix DensityMatrix::from_matrix(const Mat3& m) {
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw InvalidArgumentError("density matrix is not Hermitian");
  }
  if (std::abs(m.trace() - Complex(1.0)) > kTraceTol) {
    throw InvalidArgumentError("density matrix trace differs from 1");
  }
  Mat3 h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat3> es(h, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdTol) {
    throw InvalidArgumentError("density matrix has a negative eigenvalue");
  }
  return DensityMatrix(h);
}

DensityMatrix DensityMatrix::from_unnormalized(const Mat3& m) {
  Mat3 h = 0.5 * (m + m.adjoint());
  double tr = h.trace().real();
  if (!(tr > 0.0)) throw DegenerateStateError("matrix with nonpositive trace");
  h /= tr;
  for (int j = 0; j < kDim; ++j) h(j, j) = h(j, j).real();
  return from_matrix(h);
}

DensityMatrix DensityMatrix::pure(const StateVector& c) {
  double n = c.squared_norm();
  if (!(n > 0.0)) throw DegenerateStateError("projector onto a zero vector");
  Mat3 m = c.amplitudes() * c.amplitudes().adjoint() / n;
  return from_unnormalized(m);
}

Eigen::Vector3d DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Mat3> es(rho_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

DensityMatrix density_from_components(std::span<const StateVector> components) {
  Mat3 sum = Mat3::Zero();
  for (const auto& c : components) sum += c.amplitudes() * c.amplitudes().adjoint();
  if (!(sum.trace().real() > 0.0)) {
    throw DegenerateStateError("all mixture components are zero");
  }
  return DensityMatrix::from_unnormalized(sum);
}

double fidelity_mixed(const DensityMatrix& rho0, const DensityMatrix& rho) {
  Mat3 s = psd_sqrt(rho0.matrix());
  Mat3 inner = s * rho.matrix() * s;
  inner = 0.5 * (inner + inner.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat3> es(inner, Eigen::EigenvaluesOnly);
  double tr = sqrt_spectrum(es.eigenvalues()).sum();
  if (rho.eigenvalues().minCoeff() < -DensityMatrix::kPsdTol) {
    throw InvalidArgumentError("density matrix is not positive semidefinite");
  }
  return std::clamp(tr * tr, 0.0, 1.0);
}

Mat3 CoherenceMatrix::matrix() const {
  Mat3 m;
  m << A, D, E, std::conj(D), C, F, std::conj(E), std::conj(F), B;
  return m;
}

CoherenceMatrix coherence_matrix(const DensityMatrix& rho) {
  const Mat3& r = rho.matrix();
  CoherenceMatrix k;
  k.A = 2.0 * r(0, 0).real();
  k.B = 2.0 * r(2, 2).real();
  k.C = r(1, 1).real();
  // <c_m* c_k> is rho(k, m): the lower triangle keeps the pure-state formulas exact.
  k.D = kSqrt2 * r(1, 0);
  k.E = 2.0 * r(2, 0);
  k.F = kSqrt2 * r(2, 1);
  return k;
}

CoherenceMatrix coherence_matrix(const StateVector& c) {
  const Vec3& a = c.amplitudes();
  CoherenceMatrix k;
  k.A = 2.0 * std::norm(a[0]);
  k.B = 2.0 * std::norm(a[2]);
  k.C = std::norm(a[1]);
  k.D = kSqrt2 * std::conj(a[0]) * a[1];
  k.E = 2.0 * std::conj(a[0]) * a[2];
  k.F = kSqrt2 * std::conj(a[1]) * a[2];
  return k;
}

double polarization_degree(const StateVector& v) {
  double n = v.squared_norm();
  if (!(n > 0.0)) throw DegenerateStateError("polarization degree of a zero vector");
  const Vec3& a = v.amplitudes();
  double z = (std::norm(a[0]) - std::norm(a[2])) / n;
  Complex x = (std::conj(a[0]) * a[1] + std::conj(a[1]) * a[2]) / n;
  return std::min(1.0, std::sqrt(z * z + 2.0 * std::norm(x)));
}

PoincarePair::PoincarePair(double theta_s, double phi_s, double theta_i, double phi_i)
    : theta_s_(theta_s), phi_s_(phi_s), theta_i_(theta_i), phi_i_(phi_i) {
  reduce_angles(theta_s_, phi_s_);
  reduce_angles(theta_i_, phi_i_);
}

StateVector from_poincare(const PoincarePair& p) {
  Eigen::Vector2cd u = spinor(p.theta_s(), p.phi_s());
  Eigen::Vector2cd w = spinor(p.theta_i(), p.phi_i());
  Vec3 c(kSqrt2 * u[0] * w[0], u[0] * w[1] + u[1] * w[0], kSqrt2 * u[1] * w[1]);
  return normalize(StateVector(c));
}

// The stereographic coordinates z = e^{i phi} tan(theta/2) of the two points are the
// roots of c1 z^2 - sqrt2 c2 z + c3 = 0. Roots are kept in projective form (num, den)
// so that points at the south pole (infinite z) need no special branch.
PoincarePair to_poincare(const StateVector& v) {
  StateVector n = normalize(v);
  const Complex a = n[0];
  const Complex b = -kSqrt2 * n[1];
  const Complex c = n[2];
  Complex root = std::sqrt(b * b - 4.0 * a * c);
  if ((std::conj(b) * root).real() < 0.0) root = -root;
  const Complex q = -0.5 * (b + root);

  Complex num1, den1, num2, den2;
  if (std::abs(q) <= 1e-14) {
    // b ~ 0 and a c ~ 0: a double root at 0 (c ~ 0) or at infinity (a ~ 0).
    if (std::abs(a) >= std::abs(c)) {
      num1 = num2 = 0.0;
      den1 = den2 = 1.0;
    } else {
      num1 = num2 = 1.0;
      den1 = den2 = 0.0;
    }
  } else {
    num1 = q;
    den1 = a;
    num2 = c;
    den2 = q;
  }
  double ts, ps, ti, pi;
  point_from_projective(num1, den1, ts, ps);
  point_from_projective(num2, den2, ti, pi);
  return PoincarePair(ts, ps, ti, pi);
}

double beta_angle(const PoincarePair& p) {
  Eigen::Vector3d u = unit_vector(p.theta_s(), p.phi_s());
  Eigen::Vector3d w = unit_vector(p.theta_i(), p.phi_i());
  // atan2 keeps full precision near coincident and antipodal points.
  return std::atan2(u.cross(w).norm(), u.dot(w));
}

double polarization_degree_from_beta(double beta) {
  double c = std::cos(0.5 * beta);
  return 2.0 * c / (1.0 + c * c);
}

}  // namespace qtomo
