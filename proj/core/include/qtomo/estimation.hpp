#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qtomo/simulator.hpp"

namespace qtomo {

struct SolverOptions {
  double tol = 1e-10;          // relative change of c between iterations
  int max_iterations = 10000;
  double intensity_floor = 1e-12;  // lambda >= floor * sum(lambda) / rows
};

enum class SolverStatus { Converged, MaxIterations, DegenerateData };

const char* to_string(SolverStatus s);

struct ReconstructionResult {
  StateVector estimate;    // un-normalized, units 1/sqrt(time), gauge-fixed
  StateVector normalized;  // unit norm, gauge-fixed (zero for degenerate data)
  int iterations = 0;
  bool converged = false;
  SolverStatus status = SolverStatus::MaxIterations;
  double loglik = 0.0;     // sum k ln(lambda t) - lambda t (ln k! dropped)
  double residual = 0.0;   // LSM: last step size; MLM: ||I^-1 J c - c|| / ||c||
  double total_counts = 0.0;
  double total_expected = 0.0;  // sum lambda t at the estimate
};

/// |M_nu| = sqrt(k_nu / t_nu).
Eigen::VectorXd amplitude_estimates(const CountData& d);

/// Deterministic starting vector: leading eigenvector (scaled by the root of its
/// eigenvalue) of a least-squares Hermitian fit to the observed rates.
/// Falls back to (1, 1, 1) / sqrt3 scaled to the data when the fit is rank deficient.
StateVector linear_inversion_start(const TomographyProtocol& p, const CountData& d);

/// Phase-retrieval least squares: c = (X^dagger X)^-1 X^dagger M with the phases of M
/// taken from X c of the previous step.
ReconstructionResult lsm_reconstruct(const TomographyProtocol& p, const CountData& d,
                                     std::optional<StateVector> init = std::nullopt,
                                     const SolverOptions& opts = {});

/// Likelihood-equation fixed point c = I^-1 J(c) c. Defaults to the LSM estimate as
/// the starting point. Each iterate is rescaled so sum(lambda t) = sum(k).
ReconstructionResult mlm_reconstruct(const TomographyProtocol& p, const CountData& d,
                                     std::optional<StateVector> init = std::nullopt,
                                     const SolverOptions& opts = {});

/// Poisson log-likelihood without the ln k! term.
double log_likelihood(const TomographyProtocol& p, const CountData& d, const StateVector& c);

struct MixtureOptions {
  double tol = 1e-12;  // max relative entry change of the summed intensity matrix
  int max_iterations = 100000;
  double intensity_floor = 1e-12;
};

struct MixtureResult {
  std::vector<StateVector> components;  // un-normalized, gauge-fixed
  DensityMatrix rho;
  std::vector<double> component_weights;   // |c_m|^2 / sum, sums to 1
  std::vector<double> principal_weights;   // eigenvalues of rho, descending
  std::vector<StateVector> principal_components;  // normalized eigenvectors, same order
  int iterations = 0;
  bool converged = false;
};

/// Quasi-Bayesian separation: counts are split among components in proportion to
/// their intensities and every component takes a likelihood step on its share.
/// Starts from random complex Gaussian components drawn from `seed`.
/// Throws InvalidArgumentError for n_components outside [1, 3], DegenerateStateError
/// for all-zero data.
MixtureResult separate_mixture(const TomographyProtocol& p, const CountData& d, int n_components,
                               std::uint64_t seed, const MixtureOptions& opts = {});

}  // namespace qtomo
