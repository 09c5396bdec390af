#include <gtest/gtest.h>

#include <vector>

#include "support.hpp"

using namespace qtomo;
using qtomo::oracle::random_density;
using qtomo::oracle::random_pair;
using qtomo::oracle::random_state;

namespace {

void expect_vec_near(const StateVector& a, const StateVector& b, double tol) {
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(std::abs(a[j] - b[j]), 0.0, tol) << "component " << j;
}

}  // namespace

TEST(Normalize, ScalesToUnitNorm) {
  expect_vec_near(normalize(StateVector(2.0, 0.0, 0.0)), StateVector(1.0, 0.0, 0.0), 1e-15);
}

TEST(Normalize, RemovesGlobalPhase) {
  expect_vec_near(normalize(StateVector(0.0, Complex(0, 1), 0.0)), StateVector(0.0, 1.0, 0.0), 1e-15);
}

TEST(Normalize, JointScaleAndPhase) {
  const Complex f(1.0, 1.0);
  const double s = 1.0 / std::sqrt(3.0);
  expect_vec_near(normalize(StateVector(f, f, f)), StateVector(s, s, s), 1e-15);
}

TEST(Normalize, ZeroVectorThrows) {
  EXPECT_THROW(normalize(StateVector()), DegenerateStateError);
}

TEST(Normalize, GaugeConventionOnRandomStates) {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    StateVector v = random_state(rng) * Complex(rng.normal(), rng.normal());
    StateVector n = normalize(v);
    EXPECT_NEAR(n.squared_norm(), 1.0, 1e-12);
    int big = 0;
    for (int j = 1; j < 3; ++j)
      if (std::abs(n[j]) > std::abs(n[big]) * (1 + 1e-12)) big = j;
    EXPECT_EQ(n[big].imag(), 0.0);
    EXPECT_GE(n[big].real(), 0.0);
    EXPECT_NEAR(fidelity_pure(n, v), 1.0, 1e-12);  // same ray
  }
}

TEST(Normalize, TiesBreakTowardLowestIndex) {
  const StateVector n = normalize(StateVector(Complex(0, 1), Complex(0, 1), 0.0));
  EXPECT_EQ(n[0].imag(), 0.0);
  EXPECT_GT(n[0].real(), 0.0);
}

TEST(CoherenceMatrix, PureBasisStates) {
  auto k1 = coherence_matrix(DensityMatrix::pure({1.0, 0.0, 0.0}));
  EXPECT_DOUBLE_EQ(k1.A, 2.0);
  EXPECT_DOUBLE_EQ(k1.B, 0.0);
  EXPECT_DOUBLE_EQ(k1.C, 0.0);
  EXPECT_EQ(std::abs(k1.D) + std::abs(k1.E) + std::abs(k1.F), 0.0);

  auto k2 = coherence_matrix(DensityMatrix::pure({0.0, 1.0, 0.0}));
  EXPECT_DOUBLE_EQ(k2.C, 1.0);
  EXPECT_DOUBLE_EQ(k2.A, 0.0);
  EXPECT_DOUBLE_EQ(k2.B, 0.0);
}

TEST(CoherenceMatrix, EqualMixtureOfExtremes) {
  std::vector<StateVector> comps{{1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}};
  auto k = coherence_matrix(density_from_components(comps));
  // Oracle: average of the two pure coherence matrices.
  EXPECT_NEAR(k.A, 1.0, 1e-15);
  EXPECT_NEAR(k.B, 1.0, 1e-15);
  EXPECT_NEAR(k.C, 0.0, 1e-15);
  EXPECT_NEAR(std::abs(k.E), 0.0, 1e-15);
}

TEST(CoherenceMatrix, NormalizationHoldsForPureAndMixed) {
  Rng rng(12);
  for (int i = 0; i < 1000; ++i) {
    StateVector c = random_state(rng);
    auto kp = coherence_matrix(c);
    EXPECT_NEAR(kp.A + kp.B + 2 * kp.C, 2.0, 1e-12);
    auto km = coherence_matrix(random_density(rng));
    EXPECT_NEAR(km.A + km.B + 2 * km.C, 2.0, 1e-12);
  }
}

TEST(CoherenceMatrix, DensityPathMatchesAmplitudeFormulas) {
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    StateVector c = random_state(rng);
    auto a = coherence_matrix(c);
    auto b = coherence_matrix(DensityMatrix::pure(c));
    EXPECT_NEAR(a.A, b.A, 1e-12);
    EXPECT_NEAR(std::abs(a.D - b.D), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(a.E - b.E), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(a.F - b.F), 0.0, 1e-12);
    EXPECT_LT(oracle::max_abs(a.matrix() - a.matrix().adjoint()), 1e-15);
  }
}

TEST(PolarizationDegree, Extremes) {
  EXPECT_NEAR(polarization_degree({1.0, 0.0, 0.0}), 1.0, 1e-15);
  EXPECT_NEAR(polarization_degree({0.0, 0.0, 1.0}), 1.0, 1e-15);
  EXPECT_NEAR(polarization_degree({0.0, 1.0, 0.0}), 0.0, 1e-15);
}

TEST(PolarizationDegree, IntermediateValue) {
  StateVector v(std::sqrt(2.0 / 3.0), 1.0 / std::sqrt(3.0), 0.0);
  EXPECT_NEAR(polarization_degree(v), 2.0 * std::sqrt(2.0) / 3.0, 1e-12);
  EXPECT_NEAR(polarization_degree_from_beta(kPi / 2), 2.0 * std::sqrt(2.0) / 3.0, 1e-12);
}

TEST(PolarizationDegree, GaugeInvariantAndBounded) {
  Rng rng(14);
  for (int i = 0; i < 500; ++i) {
    StateVector c = random_state(rng);
    double p = polarization_degree(c);
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 1.0);
    EXPECT_NEAR(polarization_degree(c * std::polar(1.0, 2 * kPi * rng.uniform())), p, 1e-12);
  }
}

TEST(Poincare, NorthPolePairIsFirstBasisState) {
  expect_vec_near(from_poincare(PoincarePair(0, 0, 0, 0)), StateVector(1.0, 0.0, 0.0), 1e-15);
}

TEST(Poincare, AntipodalPairIsMiddleBasisState) {
  expect_vec_near(from_poincare(PoincarePair(0, 0, kPi, 0)), StateVector(0.0, 1.0, 0.0), 1e-15);
}

TEST(Poincare, EquatorPartner) {
  expect_vec_near(from_poincare(PoincarePair(0, 0, kPi / 2, 0)),
                  StateVector(std::sqrt(2.0 / 3.0), 1.0 / std::sqrt(3.0), 0.0), 1e-15);
}

TEST(Poincare, MatchesSymmetrizedTensorOracle) {
  Rng rng(15);
  auto s = oracle::symmetric_projector();
  for (int i = 0; i < 200; ++i) {
    PoincarePair p = random_pair(rng);
    auto spin = [](double t, double f) {
      return Eigen::Vector2cd(std::cos(t / 2), std::polar(std::sin(t / 2), f));
    };
    Eigen::Vector2cd u = spin(p.theta_s(), p.phi_s()), w = spin(p.theta_i(), p.phi_i());
    Eigen::Vector4cd uw, wu;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        uw[2 * a + b] = u[a] * w[b];
        wu[2 * a + b] = w[a] * u[b];
      }
    Vec3 oracle = s * (uw + wu);
    EXPECT_NEAR(fidelity_pure(from_poincare(p), StateVector(oracle)), 1.0, 1e-12);
  }
}

TEST(Poincare, BetaAngleSpecialCases) {
  EXPECT_NEAR(beta_angle(PoincarePair(0.3, 1.0, 0.3, 1.0)), 0.0, 1e-15);
  EXPECT_NEAR(polarization_degree_from_beta(0.0), 1.0, 1e-15);
  EXPECT_NEAR(beta_angle(PoincarePair(0, 0, kPi, 0)), kPi, 1e-15);
  EXPECT_NEAR(polarization_degree_from_beta(kPi), 0.0, 1e-15);
  EXPECT_NEAR(beta_angle(PoincarePair(0, 0, kPi / 2, 0.7)), kPi / 2, 1e-15);
}

TEST(Poincare, AnglesStayInPrincipalRange) {
  PoincarePair p(-0.5, -1.0, 7.0, 13.0);
  for (double t : {p.theta_s(), p.theta_i()}) {
    EXPECT_GE(t, 0.0);
    EXPECT_LE(t, kPi);
  }
  for (double f : {p.phi_s(), p.phi_i()}) {
    EXPECT_GE(f, 0.0);
    EXPECT_LT(f, 2 * kPi);
  }
  // (-0.5, -1) is the same point as (0.5, pi - 1).
  EXPECT_NEAR(p.theta_s(), 0.5, 1e-15);
  EXPECT_NEAR(p.phi_s(), kPi - 1.0, 1e-15);
}

TEST(Poincare, DegreeFromAnglesMatchesAmplitudes) {
  Rng rng(16);
  for (int i = 0; i < 1000; ++i) {
    PoincarePair p = random_pair(rng);
    EXPECT_NEAR(polarization_degree(from_poincare(p)), polarization_degree_from_beta(beta_angle(p)), 1e-10);
  }
}

TEST(Poincare, RoundTripRandomStates) {
  Rng rng(17);
  for (int i = 0; i < 1000; ++i) {
    StateVector c = random_state(rng);
    EXPECT_NEAR(fidelity_pure(from_poincare(to_poincare(c)), c), 1.0, 1e-12);
  }
}

TEST(Poincare, RoundTripDegenerateStates) {
  for (const StateVector& c : {StateVector(1.0, 0.0, 0.0), StateVector(0.0, 1.0, 0.0), StateVector(0.0, 0.0, 1.0),
                               StateVector(1.0, 0.0, 1.0), StateVector(0.0, 1.0, 1.0), StateVector(1.0, 1.0, 0.0),
                               from_poincare(PoincarePair(0.2, 0.3, 0.2, 0.3))}) {
    EXPECT_NEAR(fidelity_pure(from_poincare(to_poincare(c)), c), 1.0, 1e-12);
  }
}

TEST(Poincare, RoundTripRecoversUnorderedPair) {
  Rng rng(18);
  for (int i = 0; i < 100; ++i) {
    PoincarePair p = random_pair(rng);
    PoincarePair q = to_poincare(from_poincare(p));
    auto dir = [](double t, double f) {
      return Eigen::Vector3d(std::sin(t) * std::cos(f), std::sin(t) * std::sin(f), std::cos(t));
    };
    auto a1 = dir(p.theta_s(), p.phi_s()), a2 = dir(p.theta_i(), p.phi_i());
    auto b1 = dir(q.theta_s(), q.phi_s()), b2 = dir(q.theta_i(), q.phi_i());
    double same = std::max((a1 - b1).norm(), (a2 - b2).norm());
    double swapped = std::max((a1 - b2).norm(), (a2 - b1).norm());
    EXPECT_LT(std::min(same, swapped), 1e-7);
  }
}

TEST(Fidelity, PureBasics) {
  StateVector a(1.0, 0.0, 0.0);
  EXPECT_DOUBLE_EQ(fidelity_pure(a, a), 1.0);
  EXPECT_DOUBLE_EQ(fidelity_pure(a, StateVector(0.0, 1.0, 0.0)), 0.0);
  EXPECT_NEAR(fidelity_pure(a, StateVector(1.0, 1.0, 0.0) * (1 / std::sqrt(2.0))), 0.5, 1e-15);
}

TEST(Fidelity, PureIsGaugeInvariant) {
  Rng rng(19);
  for (int i = 0; i < 200; ++i) {
    StateVector a = random_state(rng);
    EXPECT_NEAR(fidelity_pure(a, a * std::polar(1.0, 6.0 * rng.uniform())), 1.0, 1e-12);
  }
}

TEST(Fidelity, MixedReducesToPure) {
  Rng rng(20);
  for (int i = 0; i < 1000; ++i) {
    StateVector a = random_state(rng), b = random_state(rng);
    EXPECT_NEAR(fidelity_mixed(DensityMatrix::pure(a), DensityMatrix::pure(b)), fidelity_pure(a, b), 1e-12);
  }
}

TEST(Fidelity, MixedBasics) {
  auto r1 = DensityMatrix::pure({1.0, 0.0, 0.0});
  auto r2 = DensityMatrix::pure({0.0, 1.0, 0.0});
  EXPECT_NEAR(fidelity_mixed(r1, r1), 1.0, 1e-12);
  EXPECT_NEAR(fidelity_mixed(r1, r2), 0.0, 1e-12);
  Rng rng(21);
  auto r = random_density(rng);
  EXPECT_NEAR(fidelity_mixed(r, r), 1.0, 1e-10);
}

TEST(DensityMatrix, RejectsInvalidInput) {
  Mat3 m = Mat3::Identity() / 3.0;
  m(0, 1) = 0.1;  // not Hermitian
  EXPECT_THROW(DensityMatrix::from_matrix(m), InvalidArgumentError);
  EXPECT_THROW(DensityMatrix::from_matrix(Mat3::Identity()), InvalidArgumentError);  // trace 3
  Mat3 neg = Mat3::Zero();
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix::from_matrix(neg), InvalidArgumentError);
}

TEST(DensityMatrix, FromComponentsSatisfiesInvariants) {
  Rng rng(22);
  for (int i = 0; i < 300; ++i) {
    std::vector<StateVector> comps;
    int n = 1 + static_cast<int>(rng.uniform() * 3);
    for (int m = 0; m < n; ++m) comps.push_back(random_state(rng) * (0.1 + 5 * rng.uniform()));
    DensityMatrix rho = density_from_components(comps);
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_LT(oracle::max_abs(rho.matrix() - rho.matrix().adjoint()), 1e-12);
    EXPECT_GE(rho.eigenvalues().minCoeff(), -1e-10);
  }
}

TEST(DensityMatrix, SingleComponentIsProjector) {
  Rng rng(23);
  StateVector c = random_state(rng);
  std::vector<StateVector> comps{c * 3.0};
  Mat3 expect = c.amplitudes() * c.amplitudes().adjoint();
  EXPECT_LT(oracle::max_abs(density_from_components(comps).matrix() - expect), 1e-14);
}

TEST(DensityMatrix, AllZeroComponentsThrow) {
  std::vector<StateVector> comps{StateVector(), StateVector()};
  EXPECT_THROW(density_from_components(comps), DegenerateStateError);
}
