#include "qtomo/study.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace qtomo {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Seed streams within one replica.
enum : std::uint64_t { kInstrumentStream = 1, kSampleStream = 2, kThinStream = 100, kMixtureStream = 1000 };

struct Prepared {
  std::vector<TomographyProtocol> per_f;  // nominal protocol with exposures scaled by f
  StateVector truth;                      // pure mode, scaled to n_events
  Mat3 intensity = Mat3::Zero();          // mixture mode, scaled to n_events
  std::optional<DensityMatrix> rho;
};

CountData scaled_noiseless(const CountData& full, double f) {
  CountData d = full;
  for (int nu = 0; nu < d.size(); ++nu) {
    d.counts[nu] *= f;
    d.exposures[nu] *= f;
  }
  return d;
}

void score_pure(const Prepared& prep, const StudyConfig& cfg, const TomographyProtocol& pf, const CountData& d,
                StudyRow& row) {
  ReconstructionResult r = cfg.estimator == Estimator::Mlm ? mlm_reconstruct(pf, d, std::nullopt, cfg.solver)
                                                            : lsm_reconstruct(pf, d, std::nullopt, cfg.solver);
  row.converged = r.converged;
  row.iterations = r.iterations;
  if (r.status == SolverStatus::DegenerateData) {
    row.error = "degenerate data";
    row.fidelity = row.info_fidelity = row.chi2_stat = kNaN;
    return;
  }
  row.fidelity = fidelity_pure(prep.truth, r.estimate);
  InformationBundle b = make_bundle(pf, d, r.estimate);
  row.info_fidelity = info_fidelity(b, prep.truth);
  row.chi2_stat = 4.0 * d.total() * (1.0 - row.info_fidelity);
}

void score_mixture(const Prepared& prep, const StudyConfig& cfg, const TomographyProtocol& pf, const CountData& d,
                   std::uint64_t rs, std::size_t fi, StudyRow& row) {
  row.info_fidelity = row.chi2_stat = kNaN;
  row.init_spread = kNaN;
  std::optional<Mat3> first;
  for (int i = 0; i < std::max(1, cfg.mixture_inits); ++i) {
    MixtureResult m = separate_mixture(pf, d, cfg.n_components,
                                       derive_seed(rs, kMixtureStream + 16 * fi + static_cast<std::uint64_t>(i)),
                                       cfg.mixture_solver);
    if (i == 0) {
      row.converged = m.converged;
      row.iterations = m.iterations;
      row.fidelity = fidelity_mixed(*prep.rho, m.rho);
      first = m.rho.matrix();
    } else {
      row.converged = row.converged && m.converged;
      const double spread = (m.rho.matrix() - *first).cwiseAbs().maxCoeff();
      row.init_spread = std::isnan(row.init_spread) ? spread : std::max(row.init_spread, spread);
    }
  }
}

void run_replica(const TomographyProtocol& p, const StudyConfig& cfg, const Prepared& prep, int replica,
                 StudyRow* rows) {
  const std::uint64_t rs = derive_seed(cfg.seed, static_cast<std::uint64_t>(replica));
  const std::size_t nf = cfg.f_grid.size();
  for (std::size_t fi = 0; fi < nf; ++fi) {
    rows[fi].replica = replica;
    rows[fi].f = cfg.f_grid[fi];
    rows[fi].init_spread = kNaN;
  }
  try {
    TomographyProtocol actual = p;
    if (cfg.jitter_deg > 0.0) {
      Rng rng(derive_seed(rs, kInstrumentStream));
      actual = perturb_protocol(p, deg_to_rad(cfg.jitter_deg), rng);
    }
    Eigen::VectorXd rates = cfg.mode == StudyMode::Pure ? intensities(actual, prep.truth)
                                                        : intensities(actual, prep.intensity);
    CountData full;
    if (cfg.noiseless) {
      full.exposures.assign(actual.exposures().data(), actual.exposures().data() + actual.size());
      full.counts.resize(actual.size());
      for (int nu = 0; nu < actual.size(); ++nu) full.counts[nu] = rates[nu] * full.exposures[nu];
    } else {
      full = sample_from_rates(actual, rates, derive_seed(rs, kSampleStream));
    }
    full.protocol_hash = p.hash();

    for (std::size_t fi = 0; fi < nf; ++fi) {
      StudyRow& row = rows[fi];
      try {
        const double f = cfg.f_grid[fi];
        CountData d = cfg.noiseless ? scaled_noiseless(full, f) : thin_counts(full, f, derive_seed(rs, kThinStream + fi));
        row.n_events = d.total();
        if (cfg.mode == StudyMode::Pure) {
          score_pure(prep, cfg, prep.per_f[fi], d, row);
        } else {
          score_mixture(prep, cfg, prep.per_f[fi], d, rs, fi, row);
        }
      } catch (const std::exception& e) {
        row.error = e.what();
        row.fidelity = row.info_fidelity = row.chi2_stat = kNaN;
      }
    }
  } catch (const std::exception& e) {
    for (std::size_t fi = 0; fi < nf; ++fi) {
      rows[fi].error = e.what();
      rows[fi].fidelity = rows[fi].info_fidelity = rows[fi].chi2_stat = kNaN;
    }
  }
}

std::vector<double> finite_values(const std::vector<StudyRow>& rows, std::size_t fi, std::size_t nf,
                                  double StudyRow::*field) {
  std::vector<double> v;
  for (std::size_t i = fi; i < rows.size(); i += nf) {
    const double x = rows[i].*field;
    if (std::isfinite(x)) v.push_back(x);
  }
  return v;
}

}  // namespace

StudyResult monte_carlo_study(const TomographyProtocol& p, const StudyConfig& cfg) {
  if (cfg.replicas < 1) throw InvalidArgumentError("study needs at least one replica");
  if (cfg.f_grid.empty()) throw InvalidArgumentError("study needs a nonempty f grid");
  for (double f : cfg.f_grid) {
    if (!(f > 0.0 && f <= 1.0)) throw InvalidArgumentError("every f must lie in (0, 1]");
  }
  if (!(cfg.jitter_deg >= 0.0)) throw InvalidArgumentError("jitter must be >= 0");
  p.require_complete();

  Prepared prep;
  for (double f : cfg.f_grid) prep.per_f.push_back(p.with_exposures_scaled(f));
  if (cfg.mode == StudyMode::Pure) {
    prep.truth = scale_to_events(p, cfg.truth, cfg.n_events);
  } else {
    if (cfg.mixture.empty()) throw InvalidArgumentError("mixture study needs components");
    const Mat3 m = mixture_intensity_matrix(cfg.mixture);
    const double expected = intensities(p, m).dot(p.exposures());
    if (!(expected > 0.0)) throw DegenerateStateError("mixture produces no events");
    prep.intensity = m * (cfg.n_events / expected);
    prep.rho = DensityMatrix::from_unnormalized(m);
  }

  const std::size_t nf = cfg.f_grid.size();
  StudyResult out;
  out.rows.resize(static_cast<std::size_t>(cfg.replicas) * nf);

  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(cfg.replicas));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r = next++; r < cfg.replicas; r = next++) {
      run_replica(p, cfg, prep, r, &out.rows[static_cast<std::size_t>(r) * nf]);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::size_t fi = 0; fi < nf; ++fi) {
    StudySummary s;
    s.f = cfg.f_grid[fi];
    s.expected_events = cfg.n_events * s.f;
    s.replicas = cfg.replicas;
    for (std::size_t i = fi; i < out.rows.size(); i += nf) {
      if (!out.rows[i].error.empty()) ++s.failures;
    }
    const auto fid = finite_values(out.rows, fi, nf, &StudyRow::fidelity);
    s.mean_fidelity = mean(fid);
    s.sd_fidelity = stddev(fid);
    if (cfg.mode == StudyMode::Pure) {
      const auto fh = finite_values(out.rows, fi, nf, &StudyRow::info_fidelity);
      const auto chi = finite_values(out.rows, fi, nf, &StudyRow::chi2_stat);
      s.mean_info_fidelity = mean(fh);
      s.sd_info_fidelity = stddev(fh);
      s.mean_chi2 = mean(chi);
      s.fh = fh_band(s.expected_events);
      s.fidelity = fidelity_band(prep.per_f[fi], prep.truth, derive_seed(cfg.seed, 0xb4d0ULL + fi),
                                 cfg.band_samples);
    } else {
      s.mean_info_fidelity = s.sd_info_fidelity = s.mean_chi2 = kNaN;
      s.fh = s.fidelity = Band{kNaN, kNaN, kNaN};
    }
    out.summary.push_back(s);
  }

  if (cfg.mode == StudyMode::Mixture) {
    const auto full = static_cast<std::size_t>(
        std::max_element(cfg.f_grid.begin(), cfg.f_grid.end()) - cfg.f_grid.begin());
    const auto fid = finite_values(out.rows, full, nf, &StudyRow::fidelity);
    try {
      out.beta_fit = fit_beta(fid);
    } catch (const InvalidArgumentError&) {
      // Degenerate spread (e.g. noiseless replicas): no fit to report.
    }
  }
  return out;
}

}  // namespace qtomo
