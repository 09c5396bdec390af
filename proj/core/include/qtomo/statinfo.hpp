#pragma once

#include <vector>

#include "qtomo/simulator.hpp"

namespace qtomo {

/// I_js = sum_nu t_nu conj(X_nu j) X_nu s.
Mat3 fisher_I(const TomographyProtocol& p);

/// J_js = sum_nu (k_nu / lambda_nu) conj(X_nu j) X_nu s with lambda floored as in the estimators.
Mat3 empirical_J(const TomographyProtocol& p, const CountData& d, const StateVector& c,
                 double intensity_floor = 1e-12);

/// K_sj = sum_nu (k_nu / M_nu^2) X_nu s X_nu j with the complex square of M = X c.
/// Complex symmetric, generally not Hermitian.
Mat3 fisher_K(const TomographyProtocol& p, const CountData& d, const StateVector& c,
              double intensity_floor = 1e-12);

/// ((Re(I+K), -Im(I+K)), (Im(I-K), Re(I-K))). Throws NumericalError when the
/// result is not symmetric to 1e-10 relative.
Mat6 info_matrix_H(const Mat3& I, const Mat3& K);

/// (Re c, Im c) and back.
Vec6 realify(const Vec3& c);
Vec3 complexify(const Vec6& xi);

/// Real vector of the infinitesimal global phase change i c.
Vec6 gauge_direction(const StateVector& c);

enum class InformationKind { Observed, Expected };

struct InformationBundle {
  Mat3 I;
  Mat3 K;
  Mat6 H;
  Vec6 eigenvalues;   // ascending
  Mat6 eigenvectors;  // columns
  StateVector point;  // where K and H were evaluated
  double total_counts = 0.0;
};

/// Observed: counts from d. Expected: k_nu -> lambda_nu(c) t_nu (d supplies only exposures).
InformationBundle make_bundle(const TomographyProtocol& p, const CountData& d, const StateVector& c,
                              InformationKind kind = InformationKind::Observed);
/// Expected information at c with the protocol's own exposures.
InformationBundle expected_bundle(const TomographyProtocol& p, const StateVector& c);

struct CompletenessReport {
  bool complete = false;
  int zero_count = 0;
  Vec6 eigenvalues;
  double threshold = 0.0;
};

/// Counts eigenvalues of H below rel_tol * max(h); complete iff exactly one.
CompletenessReport completeness_check(const InformationBundle& b, double rel_tol = 1e-8);

struct PrincipalVariance {
  double variance;   // 1 / (2 h_j)
  Vec6 direction;
};

/// The 2s - 1 physical fluctuation variances, largest first (gauge mode excluded).
/// Throws IncompleteProtocolError if the bundle is not complete.
std::vector<PrincipalVariance> principal_variances(const InformationBundle& b, double rel_tol = 1e-8);

/// estimate * e^{i phi} with phi maximizing Re <truth | estimate e^{i phi}>.
StateVector gauge_align(const StateVector& truth, const StateVector& estimate);

/// 1 - <dxi|H|dxi> / <xi|H|xi> with dxi = truth - aligned estimate, where the
/// estimate is the bundle's point. K is rotated together with the alignment
/// (K -> e^{-2i phi} K), so the result does not depend on the bundle's gauge.
double info_fidelity(const InformationBundle& b, const StateVector& truth);

/// 4 n (1 - F_H), distributed as chi-square with 2s - 1 degrees of freedom under
/// pure statistical noise.
double chi2_statistic(const InformationBundle& b, const StateVector& truth);

struct Band {
  double lower = 0.0;   // lower quantile
  double center = 0.0;  // mean (F_H) or median (fidelity)
  double upper = 0.0;   // upper quantile
};

/// F_H band 1 - chi2_q(2s - 1) / (4 n) for the given quantiles of the
/// chi-square variable (lower band edge uses q_hi).
Band fh_band(double n_events, double q_lo = 0.05, double q_hi = 0.95);

/// Band of the conventional fidelity under the Gaussian fluctuation law with
/// covariance (2H)^-1 restricted to the physical directions, evaluated at `truth`
/// with the expected information of protocol p. Monte Carlo over `samples` draws.
Band fidelity_band(const TomographyProtocol& p, const StateVector& truth, std::uint64_t seed,
                   int samples = 20000, double q_lo = 0.05, double q_hi = 0.95);

}  // namespace qtomo
