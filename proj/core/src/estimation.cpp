#include "qtomo/estimation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qtomo {

namespace {

Eigen::VectorXd counts_vector(const CountData& d) {
  return Eigen::Map<const Eigen::VectorXd>(d.counts.data(), d.size());
}

Eigen::VectorXd floored(Eigen::VectorXd lambda, double floor) {
  const double lo = floor * lambda.sum() / static_cast<double>(lambda.size());
  const double tiny = std::numeric_limits<double>::min();
  return lambda.cwiseMax(std::max(lo, tiny));
}

// X^dagger diag(w) X.
Mat3 weighted_gram(const RowMatrix& x, const Eigen::VectorXd& w) {
  Mat3 m = x.adjoint() * w.asDiagonal() * x;
  return 0.5 * (m + m.adjoint());
}

// Hermitian basis E_jj, E_jl + E_lj, -i E_jl + i E_lj (j < l).
std::array<Mat3, 9> hermitian_basis() {
  std::array<Mat3, 9> b;
  int n = 0;
  for (int j = 0; j < 3; ++j) {
    b[n] = Mat3::Zero();
    b[n++](j, j) = 1.0;
  }
  for (int j = 0; j < 3; ++j) {
    for (int l = j + 1; l < 3; ++l) {
      b[n] = Mat3::Zero();
      b[n](j, l) = b[n](l, j) = 1.0;
      ++n;
      b[n] = Mat3::Zero();
      b[n](j, l) = Complex(0.0, -1.0);
      b[n](l, j) = Complex(0.0, 1.0);
      ++n;
    }
  }
  return b;
}

StateVector scaled_to_total(const TomographyProtocol& p, const StateVector& c, double total) {
  double e = (c.amplitudes().adjoint() * p.fisher() * c.amplitudes())(0, 0).real();
  if (!(e > 0.0) || !(total > 0.0)) return c;
  return c * std::sqrt(total / e);
}

ReconstructionResult degenerate_result(const CountData& d) {
  ReconstructionResult r;
  r.status = SolverStatus::DegenerateData;
  r.converged = false;
  r.total_counts = d.total();
  r.residual = std::numeric_limits<double>::quiet_NaN();
  return r;
}

void finish(ReconstructionResult& r, const TomographyProtocol& p, const CountData& d, const StateVector& c) {
  r.estimate = gauge_fixed(c);
  r.normalized = normalize(c);
  r.loglik = log_likelihood(p, d, r.estimate);
  r.total_counts = d.total();
  r.total_expected = expected_counts(p, r.estimate).sum();
  r.status = r.converged ? SolverStatus::Converged : SolverStatus::MaxIterations;
}

bool usable(const StateVector& c) { return c.amplitudes().allFinite() && c.squared_norm() > 0.0; }

}  // namespace

const char* to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::Converged: return "converged";
    case SolverStatus::MaxIterations: return "max_iterations";
    case SolverStatus::DegenerateData: return "degenerate_data";
  }
  return "unknown";
}

Eigen::VectorXd amplitude_estimates(const CountData& d) {
  Eigen::VectorXd m(d.size());
  for (int nu = 0; nu < d.size(); ++nu) m[nu] = std::sqrt(d.counts[nu] / d.exposures[nu]);
  return m;
}

double log_likelihood(const TomographyProtocol& p, const CountData& d, const StateVector& c) {
  Eigen::VectorXd lambda = floored(intensities(p, c), 1e-300);
  double ll = 0.0;
  for (int nu = 0; nu < d.size(); ++nu) {
    const double mu = lambda[nu] * d.exposures[nu];
    if (d.counts[nu] > 0.0) ll += d.counts[nu] * std::log(mu);
    ll -= mu;
  }
  return ll;
}

StateVector linear_inversion_start(const TomographyProtocol& p, const CountData& d) {
  check_compatible(p, d);
  static const std::array<Mat3, 9> basis = hermitian_basis();
  const int n = p.size();
  Eigen::MatrixXd a(n, 9);
  Eigen::VectorXd y(n);
  for (int nu = 0; nu < n; ++nu) {
    const Row3 x = p.X().row(nu);
    for (int b = 0; b < 9; ++b) a(nu, b) = (x * basis[b] * x.adjoint())(0, 0).real();
    y[nu] = d.counts[nu] / d.exposures[nu];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  StateVector fallback = scaled_to_total(p, StateVector(Vec3::Constant(Complex(1.0 / std::sqrt(3.0)))), d.total());
  if (svd.rank() < 9) return fallback;
  Eigen::VectorXd coef = svd.solve(y);
  Mat3 rho = Mat3::Zero();
  for (int b = 0; b < 9; ++b) rho += coef[b] * basis[b];
  Eigen::SelfAdjointEigenSolver<Mat3> es(rho);
  const double top = es.eigenvalues()[2];
  if (!(top > 0.0)) return fallback;
  return StateVector(Vec3(es.eigenvectors().col(2) * std::sqrt(top)));
}

namespace {

// Sum over rows of (|X c| - sqrt(k / t))^2, the quantity the LSM iteration decreases.
double lsm_objective(const TomographyProtocol& p, const CountData& d, const StateVector& c) {
  return ((p.X() * c.amplitudes()).cwiseAbs() - amplitude_estimates(d)).squaredNorm();
}

// Leading eigenvector of the mixed-state likelihood fit. The pure-state objectives are
// multimodal when counts are sparse; the mixed-state problem is concave, so its maximum
// does not depend on where it starts and lands in the basin of the global pure optimum.
std::optional<StateVector> mixed_state_start(const TomographyProtocol& p, const CountData& d,
                                             const SolverOptions& opts) {
  try {
    MixtureOptions mo;
    mo.tol = 1e-6;  // only has to land in the right basin
    mo.max_iterations = 300;
    mo.intensity_floor = opts.intensity_floor;
    MixtureResult m = separate_mixture(p, d, kDim, 0x5eedULL, mo);
    return scaled_to_total(p, m.principal_components[0], d.total());
  } catch (const Error&) {
    return std::nullopt;
  }
}

ReconstructionResult lsm_from(const TomographyProtocol& p, const CountData& d, const StateVector& start,
                              const SolverOptions& opts) {
  const RowMatrix& x = p.X();
  const Mat3 gram = x.adjoint() * x;
  Eigen::LLT<Mat3> llt(0.5 * (gram + gram.adjoint()));
  if (llt.info() != Eigen::Success) throw IncompleteProtocolError("X^dagger X is not invertible");
  const Eigen::Matrix<Complex, 3, Eigen::Dynamic> proj = llt.solve(x.adjoint());
  const Eigen::VectorXd mabs = amplitude_estimates(d);

  Vec3 c = start.amplitudes();
  ReconstructionResult r;
  Eigen::VectorXcd m(p.size());
  for (r.iterations = 1; r.iterations <= opts.max_iterations; ++r.iterations) {
    const Eigen::VectorXcd model = x * c;
    for (int nu = 0; nu < p.size(); ++nu) {
      const double a = std::abs(model[nu]);
      m[nu] = a > 0.0 ? mabs[nu] * model[nu] / a : Complex(mabs[nu]);
    }
    const Vec3 next = proj * m;
    const double nn = next.norm();
    r.residual = nn > 0.0 ? (next - c).norm() / nn : 0.0;
    c = next;
    if (!(nn > 0.0)) break;
    if (r.residual < opts.tol) {
      r.converged = true;
      break;
    }
  }
  r.iterations = std::min(r.iterations, opts.max_iterations);
  if (!usable(StateVector(c))) return degenerate_result(d);
  finish(r, p, d, StateVector(c));
  return r;
}

ReconstructionResult mlm_from(const TomographyProtocol& p, const CountData& d, const StateVector& start,
                              const SolverOptions& opts) {
  const double total = d.total();
  const RowMatrix& x = p.X();
  const Mat3 fisher = p.fisher();
  Eigen::LLT<Mat3> llt(fisher);
  if (llt.info() != Eigen::Success) throw IncompleteProtocolError("Fisher matrix is not invertible");
  const Eigen::VectorXd k = counts_vector(d);
  Vec3 c = scaled_to_total(p, start, total).amplitudes();

  auto step = [&](const Vec3& v) {
    const Eigen::VectorXd lambda = floored((x * v).cwiseAbs2(), opts.intensity_floor);
    const Mat3 j = weighted_gram(x, k.cwiseQuotient(lambda));
    return Vec3(llt.solve(j * v));
  };

  ReconstructionResult r;
  for (r.iterations = 1; r.iterations <= opts.max_iterations; ++r.iterations) {
    Vec3 next = step(c);
    const double e = (next.adjoint() * fisher * next)(0, 0).real();
    if (!(e > 0.0) || !next.allFinite()) break;
    next *= std::sqrt(total / e);
    const double change = (next - c).norm() / next.norm();
    c = next;
    if (change < opts.tol) {
      r.converged = true;
      break;
    }
  }
  r.iterations = std::min(r.iterations, opts.max_iterations);
  if (!usable(StateVector(c))) return degenerate_result(d);
  r.residual = (step(c) - c).norm() / c.norm();
  finish(r, p, d, StateVector(c));
  return r;
}

// Keeps `alt` if it scores better by more than rounding, or converged where `best` did not.
template <class Score>
void keep_better(ReconstructionResult& best, ReconstructionResult alt, Score score) {
  if (alt.status == SolverStatus::DegenerateData) return;
  if (best.status == SolverStatus::DegenerateData) {
    best = std::move(alt);
    return;
  }
  const double sb = score(best), sa = score(alt);
  if (sa > sb + 1e-9 * std::abs(sb) || (!best.converged && alt.converged)) best = std::move(alt);
}

ReconstructionResult lsm_multistart(const TomographyProtocol& p, const CountData& d,
                                    const std::optional<StateVector>& mixed, const SolverOptions& opts) {
  ReconstructionResult best = lsm_from(p, d, linear_inversion_start(p, d), opts);
  if (mixed) {
    keep_better(best, lsm_from(p, d, *mixed, opts),
                [&](const ReconstructionResult& r) { return -lsm_objective(p, d, r.estimate); });
  }
  return best;
}

}  // namespace

ReconstructionResult lsm_reconstruct(const TomographyProtocol& p, const CountData& d,
                                     std::optional<StateVector> init, const SolverOptions& opts) {
  check_compatible(p, d);
  p.require_complete();
  if (!(d.total() > 0.0)) return degenerate_result(d);
  if (init && usable(*init)) return lsm_from(p, d, *init, opts);
  return lsm_multistart(p, d, mixed_state_start(p, d, opts), opts);
}

ReconstructionResult mlm_reconstruct(const TomographyProtocol& p, const CountData& d,
                                     std::optional<StateVector> init, const SolverOptions& opts) {
  check_compatible(p, d);
  p.require_complete();
  if (!(d.total() > 0.0)) return degenerate_result(d);
  if (init && usable(*init)) return mlm_from(p, d, *init, opts);

  const std::optional<StateVector> mixed = mixed_state_start(p, d, opts);
  const ReconstructionResult ls = lsm_multistart(p, d, mixed, opts);
  ReconstructionResult best =
      mlm_from(p, d, ls.status != SolverStatus::DegenerateData ? ls.estimate : linear_inversion_start(p, d), opts);
  if (mixed) keep_better(best, mlm_from(p, d, *mixed, opts), [](const ReconstructionResult& r) { return r.loglik; });
  return best;
}

MixtureResult separate_mixture(const TomographyProtocol& p, const CountData& d, int n_components,
                               std::uint64_t seed, const MixtureOptions& opts) {
  if (n_components < 1 || n_components > kDim) {
    throw InvalidArgumentError("number of mixture components must lie in [1, 3]");
  }
  check_compatible(p, d);
  p.require_complete();
  const double total = d.total();
  if (!(total > 0.0)) throw DegenerateStateError("mixture separation needs at least one event");

  const RowMatrix& x = p.X();
  const Mat3 fisher = p.fisher();
  Eigen::LLT<Mat3> llt(fisher);
  const Eigen::VectorXd k = counts_vector(d);

  Rng rng(seed);
  std::vector<Vec3> comps(n_components);
  for (auto& c : comps) {
    for (int j = 0; j < kDim; ++j) c[j] = Complex(rng.normal(), rng.normal());
  }
  auto outer_sum = [](const std::vector<Vec3>& cs) {
    Mat3 m = Mat3::Zero();
    for (const auto& c : cs) m += c * c.adjoint();
    return m;
  };

  MixtureResult out{{}, DensityMatrix::pure(StateVector(1.0, 0.0, 0.0)), {}, {}, {}, 0, false};
  Mat3 prev = outer_sum(comps);
  for (out.iterations = 1; out.iterations <= opts.max_iterations; ++out.iterations) {
    Eigen::VectorXd lambda = Eigen::VectorXd::Zero(p.size());
    for (const auto& c : comps) lambda += (x * c).cwiseAbs2();
    lambda = floored(lambda, opts.intensity_floor);
    // Each component's share k lambda_m / Lambda gives J_m = X^dagger diag(k / Lambda) X,
    // the same operator for every component.
    const Mat3 a = llt.solve(weighted_gram(x, k.cwiseQuotient(lambda)));
    double e = 0.0;
    for (auto& c : comps) {
      c = a * c;
      e += (c.adjoint() * fisher * c)(0, 0).real();
    }
    if (!(e > 0.0)) throw NumericalError("mixture iteration collapsed to zero");
    const double s = std::sqrt(total / e);
    for (auto& c : comps) c *= s;
    const Mat3 cur = outer_sum(comps);
    const double change = (cur - prev).cwiseAbs().maxCoeff() / cur.cwiseAbs().maxCoeff();
    prev = cur;
    if (change < opts.tol) {
      out.converged = true;
      break;
    }
  }
  out.iterations = std::min(out.iterations, opts.max_iterations);

  double norm_sum = 0.0;
  for (const auto& c : comps) {
    out.components.push_back(gauge_fixed(StateVector(c)));
    norm_sum += c.squaredNorm();
  }
  for (const auto& c : comps) out.component_weights.push_back(c.squaredNorm() / norm_sum);
  out.rho = density_from_components(out.components);

  Eigen::SelfAdjointEigenSolver<Mat3> es(out.rho.matrix());
  for (int j = kDim - 1; j >= 0; --j) {
    out.principal_weights.push_back(std::max(0.0, es.eigenvalues()[j]));
    out.principal_components.push_back(normalize(StateVector(Vec3(es.eigenvectors().col(j)))));
  }
  return out;
}

}  // namespace qtomo
