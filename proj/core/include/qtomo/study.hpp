#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qtomo/estimation.hpp"
#include "qtomo/statinfo.hpp"
#include "qtomo/statistics.hpp"

namespace qtomo {

enum class StudyMode { Pure, Mixture };
enum class Estimator { Lsm, Mlm };

struct StudyConfig {
  StudyMode mode = StudyMode::Pure;
  StateVector truth;                       // pure mode, any scale
  std::vector<WeightedComponent> mixture;  // mixture mode
  int n_components = 2;
  int mixture_inits = 1;  // >= 2 also records the spread between random starts
  double n_events = 1e4;  // expected events of the full-volume experiment
  int replicas = 10;
  std::vector<double> f_grid{1.0};
  double jitter_deg = 0.0;
  bool noiseless = false;  // k = lambda t instead of Poisson draws
  Estimator estimator = Estimator::Mlm;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0: hardware concurrency
  int band_samples = 20000;
  SolverOptions solver;
  MixtureOptions mixture_solver;
};

struct StudyRow {
  int replica = 0;
  double f = 1.0;
  double n_events = 0.0;  // observed events
  double fidelity = 0.0;
  double info_fidelity = 0.0;  // NaN in mixture mode
  double chi2_stat = 0.0;      // 4 n (1 - F_H); NaN in mixture mode
  bool converged = false;
  int iterations = 0;
  double init_spread = 0.0;  // max entrywise rho difference between starts; NaN if one start
  std::string error;
};

struct StudySummary {
  double f = 1.0;
  double expected_events = 0.0;
  int replicas = 0;
  int failures = 0;
  double mean_fidelity = 0.0;
  double sd_fidelity = 0.0;
  double mean_info_fidelity = 0.0;
  double sd_info_fidelity = 0.0;
  double mean_chi2 = 0.0;
  Band fh;        // theoretical F_H band (5% / mean / 95%)
  Band fidelity;  // theoretical fidelity band (5% / median / 95%)
};

struct StudyResult {
  std::vector<StudyRow> rows;  // replica-major, f-minor
  std::vector<StudySummary> summary;
  std::optional<BetaFit> beta_fit;  // mixture mode, largest f
};

/// Simulates every replica once at full volume (one instrument draw when jitter
/// is on), thins it to each f, reconstructs with the nominal protocol and scores
/// the estimate. Replicas run concurrently with seeds derived from (seed, replica);
/// the result does not depend on the thread count. Per-replica failures are
/// recorded in StudyRow::error and never abort the study.
StudyResult monte_carlo_study(const TomographyProtocol& p, const StudyConfig& cfg);

}  // namespace qtomo
