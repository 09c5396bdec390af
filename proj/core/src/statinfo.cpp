#include "qtomo/statinfo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <boost/math/distributions/chi_squared.hpp>

namespace qtomo {

namespace {

Eigen::VectorXd counts_of(const CountData& d) {
  return Eigen::Map<const Eigen::VectorXd>(d.counts.data(), d.size());
}

double floor_level(const Eigen::VectorXd& lambda, double floor) {
  return std::max(floor * lambda.sum() / static_cast<double>(lambda.size()),
                  std::numeric_limits<double>::min());
}

Mat6 h_from(const Mat3& I, const Mat3& K) {
  const Mat3 plus = I + K;
  const Mat3 minus = I - K;
  Mat6 h;
  h.topLeftCorner<3, 3>() = plus.real();
  h.topRightCorner<3, 3>() = -plus.imag();
  h.bottomLeftCorner<3, 3>() = minus.imag();
  h.bottomRightCorner<3, 3>() = minus.real();
  return h;
}

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

Mat3 fisher_I(const TomographyProtocol& p) { return p.fisher(); }

Mat3 empirical_J(const TomographyProtocol& p, const CountData& d, const StateVector& c, double intensity_floor) {
  check_compatible(p, d);
  Eigen::VectorXd lambda = intensities(p, c);
  lambda = lambda.cwiseMax(floor_level(lambda, intensity_floor));
  Mat3 j = p.X().adjoint() * counts_of(d).cwiseQuotient(lambda).asDiagonal() * p.X();
  return 0.5 * (j + j.adjoint());
}

Mat3 fisher_K(const TomographyProtocol& p, const CountData& d, const StateVector& c, double intensity_floor) {
  check_compatible(p, d);
  const Eigen::VectorXcd m = p.X() * c.amplitudes();
  const double lo = floor_level(m.cwiseAbs2(), intensity_floor);
  Eigen::VectorXcd w(p.size());
  for (int nu = 0; nu < p.size(); ++nu) {
    Complex a = m[nu];
    if (std::norm(a) < lo) a = std::abs(a) > 0.0 ? a / std::abs(a) * std::sqrt(lo) : Complex(std::sqrt(lo));
    w[nu] = d.counts[nu] / (a * a);
  }
  Mat3 k = p.X().transpose() * w.asDiagonal() * p.X();
  return 0.5 * (k + k.transpose());
}

Mat6 info_matrix_H(const Mat3& I, const Mat3& K) {
  Mat6 h = h_from(I, K);
  const double scale = std::max(h.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw NumericalError("information matrix H is not symmetric; I must be Hermitian and K symmetric");
  }
  return 0.5 * (h + h.transpose());
}

Vec6 realify(const Vec3& c) {
  Vec6 xi;
  xi << c.real(), c.imag();
  return xi;
}

Vec3 complexify(const Vec6& xi) {
  Vec3 c;
  for (int j = 0; j < 3; ++j) c[j] = Complex(xi[j], xi[j + 3]);
  return c;
}

Vec6 gauge_direction(const StateVector& c) { return realify(Complex(0.0, 1.0) * c.amplitudes()); }

InformationBundle make_bundle(const TomographyProtocol& p, const CountData& d, const StateVector& c,
                              InformationKind kind) {
  CountData used = d;
  if (kind == InformationKind::Expected) {
    check_compatible(p, d);
    const Eigen::VectorXd lambda = intensities(p, c);
    for (int nu = 0; nu < d.size(); ++nu) used.counts[nu] = lambda[nu] * d.exposures[nu];
  }
  // Exposures of the data define I (they differ from the protocol's after thinning).
  std::vector<ProtocolRow> rows = p.rows();
  for (int nu = 0; nu < p.size() && nu < used.size(); ++nu) rows[nu].exposure = used.exposures[nu];
  TomographyProtocol q = TomographyProtocol::from_rows(p.name(), std::move(rows), p.design());

  InformationBundle b;
  b.I = q.fisher();
  b.K = fisher_K(q, used, c);
  b.H = info_matrix_H(b.I, b.K);
  b.point = c;
  b.total_counts = used.total();
  Eigen::SelfAdjointEigenSolver<Mat6> es(b.H);
  b.eigenvalues = es.eigenvalues();
  b.eigenvectors = es.eigenvectors();
  return b;
}

InformationBundle expected_bundle(const TomographyProtocol& p, const StateVector& c) {
  return make_bundle(p, noiseless_counts(p, c), c, InformationKind::Expected);
}

CompletenessReport completeness_check(const InformationBundle& b, double rel_tol) {
  CompletenessReport r;
  r.eigenvalues = b.eigenvalues;
  r.threshold = rel_tol * b.eigenvalues.cwiseAbs().maxCoeff();
  for (int j = 0; j < 6; ++j) {
    if (b.eigenvalues[j] < r.threshold) ++r.zero_count;
  }
  r.complete = r.zero_count == 1;
  return r;
}

std::vector<PrincipalVariance> principal_variances(const InformationBundle& b, double rel_tol) {
  CompletenessReport rep = completeness_check(b, rel_tol);
  if (!rep.complete) {
    throw IncompleteProtocolError("information matrix has more than one zero mode");
  }
  std::vector<PrincipalVariance> out;
  for (int j = 1; j < 6; ++j) {
    out.push_back({1.0 / (2.0 * b.eigenvalues[j]), b.eigenvectors.col(j)});
  }
  return out;  // eigenvalues ascend, so variances descend
}

StateVector gauge_align(const StateVector& truth, const StateVector& estimate) {
  const Complex overlap = estimate.amplitudes().dot(truth.amplitudes());  // <est|truth>
  if (std::abs(overlap) == 0.0) return estimate;
  return estimate * (overlap / std::abs(overlap));
}

double info_fidelity(const InformationBundle& b, const StateVector& truth) {
  const Complex overlap = b.point.amplitudes().dot(truth.amplitudes());
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
  const Vec3 est = b.point.amplitudes() * phase;
  // K is quadratic in 1/M, so c -> e^{i phi} c maps K -> e^{-2 i phi} K.
  const Mat6 h = h_from(b.I, b.K * std::conj(phase * phase));
  const Vec6 xi = realify(est);
  const Vec6 dxi = realify(truth.amplitudes() - est);
  return 1.0 - dxi.dot(h * dxi) / xi.dot(h * xi);
}

double chi2_statistic(const InformationBundle& b, const StateVector& truth) {
  return 4.0 * b.total_counts * (1.0 - info_fidelity(b, truth));
}

Band fh_band(double n_events, double q_lo, double q_hi) {
  if (!(n_events > 0.0)) throw InvalidArgumentError("event count must be positive");
  boost::math::chi_squared chi2(kPhysicalParams);
  const double scale = 4.0 * n_events;
  return {1.0 - boost::math::quantile(chi2, q_hi) / scale, 1.0 - kPhysicalParams / scale,
          1.0 - boost::math::quantile(chi2, q_lo) / scale};
}

Band fidelity_band(const TomographyProtocol& p, const StateVector& truth, std::uint64_t seed, int samples,
                   double q_lo, double q_hi) {
  if (samples < 2) throw InvalidArgumentError("fidelity band needs at least two samples");
  const InformationBundle b = expected_bundle(p, truth);
  const auto pv = principal_variances(b);
  Rng rng(seed);
  std::vector<double> f(static_cast<std::size_t>(samples));
  for (auto& v : f) {
    Vec6 dxi = Vec6::Zero();
    for (const auto& comp : pv) dxi += std::sqrt(comp.variance) * rng.normal() * comp.direction;
    v = fidelity_pure(truth, StateVector(Vec3(truth.amplitudes() + complexify(dxi))));
  }
  Band out;
  out.lower = quantile(f, q_lo);
  out.center = quantile(f, 0.5);
  out.upper = quantile(f, q_hi);
  return out;
}

}  // namespace qtomo
