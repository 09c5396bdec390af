#include "qtomo/simulator.hpp"

#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace qtomo {

double CountData::total() const { return std::accumulate(counts.begin(), counts.end(), 0.0); }

void check_compatible(const TomographyProtocol& p, const CountData& d) {
  if (d.size() != p.size() || static_cast<int>(d.exposures.size()) != p.size()) {
    throw InvalidArgumentError(
        fmt::format("count data has {} rows but the protocol has {}", d.size(), p.size()));
  }
  for (int nu = 0; nu < d.size(); ++nu) {
    if (!(d.exposures[nu] > 0.0)) throw InvalidArgumentError(fmt::format("row {}: exposure must be > 0", nu + 1));
    if (!(d.counts[nu] >= 0.0) || !std::isfinite(d.counts[nu])) {
      throw InvalidArgumentError(fmt::format("row {}: counts must be finite and >= 0", nu + 1));
    }
  }
}

Eigen::VectorXd expected_counts(const TomographyProtocol& p, const StateVector& c) {
  return intensities(p, c).cwiseProduct(p.exposures());
}

CountData noiseless_counts(const TomographyProtocol& p, const StateVector& c) {
  Eigen::VectorXd k = expected_counts(p, c);
  CountData d;
  d.counts.assign(k.data(), k.data() + k.size());
  d.exposures.assign(p.exposures().data(), p.exposures().data() + p.size());
  d.protocol_hash = p.hash();
  return d;
}

StateVector scale_to_events(const TomographyProtocol& p, const StateVector& c, double n_events) {
  if (!(n_events > 0.0)) throw InvalidArgumentError("target event count must be positive");
  double expected = expected_counts(p, c).sum();
  if (!(expected > 0.0)) throw DegenerateStateError("state produces no events under this protocol");
  return c * std::sqrt(n_events / expected);
}

CountData sample_from_rates(const TomographyProtocol& p, const Eigen::VectorXd& rates, std::uint64_t seed) {
  if (rates.size() != p.size()) throw InvalidArgumentError("rate vector length differs from protocol size");
  Rng rng(seed);
  CountData d;
  d.seed = seed;
  d.protocol_hash = p.hash();
  d.exposures.assign(p.exposures().data(), p.exposures().data() + p.size());
  d.counts.resize(p.size());
  for (int nu = 0; nu < p.size(); ++nu) {
    d.counts[nu] = static_cast<double>(rng.poisson(rates[nu] * p.exposures()[nu]));
  }
  return d;
}

CountData sample_counts(const TomographyProtocol& p, const StateVector& c, std::uint64_t seed) {
  return sample_from_rates(p, intensities(p, c), seed);
}

CountData sample_counts(const TomographyProtocol& p, const Mat3& intensity_matrix, std::uint64_t seed) {
  return sample_from_rates(p, intensities(p, intensity_matrix), seed);
}

Mat3 mixture_intensity_matrix(const std::vector<WeightedComponent>& components) {
  Mat3 m = Mat3::Zero();
  for (const auto& wc : components) {
    if (!(wc.weight > 0.0)) throw InvalidArgumentError("mixture weights must be positive");
    m += wc.weight * wc.state.amplitudes() * wc.state.amplitudes().adjoint();
  }
  return m;
}

CountData mixture_counts(const TomographyProtocol& p, const std::vector<WeightedComponent>& components,
                         std::uint64_t seed) {
  if (components.empty()) throw InvalidArgumentError("mixture needs at least one component");
  Eigen::VectorXd rates = Eigen::VectorXd::Zero(p.size());
  for (const auto& wc : components) {
    if (!(wc.weight > 0.0)) throw InvalidArgumentError("mixture weights must be positive");
    rates += wc.weight * intensities(p, wc.state);
  }
  return sample_from_rates(p, rates, seed);
}

CountData thin_counts(const CountData& d, double f, std::uint64_t seed) {
  if (!(f > 0.0 && f <= 1.0)) throw InvalidArgumentError("thinning fraction must lie in (0, 1]");
  CountData out = d;
  out.seed = seed;
  if (f == 1.0) return out;
  Rng rng(seed);
  for (int nu = 0; nu < d.size(); ++nu) {
    const double k = d.counts[nu];
    if (k != std::floor(k) || k < 0.0) throw InvalidArgumentError("thinning requires integer counts");
    out.counts[nu] = static_cast<double>(rng.binomial(static_cast<std::int64_t>(k), f));
    out.exposures[nu] = f * d.exposures[nu];
  }
  return out;
}

TomographyProtocol perturb_protocol(const TomographyProtocol& p, double jitter_rad, Rng& rng) {
  if (!(jitter_rad >= 0.0)) throw InvalidArgumentError("angle jitter must be >= 0");
  ProtocolDesign design = p.design();
  auto shift = [&](const WavePlateSetting& s) { return s.rotated(rng.normal(0.0, jitter_rad)); };
  if (auto* a = std::get_if<ArmDesign>(&design)) {
    for (auto& row : a->rows) {
      row.signal.quarter = shift(row.signal.quarter);
      row.signal.half = shift(row.signal.half);
      row.idler.quarter = shift(row.idler.quarter);
      row.idler.half = shift(row.idler.half);
    }
  } else if (auto* c = std::get_if<ControlPlateDesign>(&design)) {
    c->chi_s += rng.normal(0.0, jitter_rad);
    c->theta_i += rng.normal(0.0, jitter_rad);
    for (auto& mu : c->orientations) mu += rng.normal(0.0, jitter_rad);
  }
  return rebuild_from_design(p, design);
}

CountData sample_with_instrument_error(const TomographyProtocol& p, const StateVector& c,
                                       double angle_jitter_deg, std::uint64_t seed) {
  if (!(angle_jitter_deg >= 0.0)) throw InvalidArgumentError("angle jitter must be >= 0");
  if (angle_jitter_deg == 0.0) return sample_counts(p, c, seed);
  Rng rng(derive_seed(seed, 0x6a177e7ULL));
  TomographyProtocol actual = perturb_protocol(p, deg_to_rad(angle_jitter_deg), rng);
  CountData d = sample_from_rates(actual, intensities(actual, c), seed);
  d.protocol_hash = p.hash();
  return d;
}

}  // namespace qtomo
