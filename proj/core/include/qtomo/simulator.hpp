#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qtomo/protocol.hpp"
#include "qtomo/random.hpp"

namespace qtomo {

/// Event counts per process with their exposure times.
///
/// Counts are stored as doubles: sampled data is integer-valued, while
/// noiseless oracle data (k = lambda t) may be fractional.
struct CountData {
  std::vector<double> counts;
  std::vector<double> exposures;  // seconds
  std::uint64_t seed = 0;
  std::string protocol_hash;

  int size() const { return static_cast<int>(counts.size()); }
  double total() const;
};

/// Throws InvalidArgumentError when d does not belong to p (row count, exposures).
void check_compatible(const TomographyProtocol& p, const CountData& d);

struct WeightedComponent {
  double weight = 1.0;
  StateVector state;
};

/// Expected counts lambda_nu t_nu.
Eigen::VectorXd expected_counts(const TomographyProtocol& p, const StateVector& c);

/// Noiseless data: k_nu = lambda_nu t_nu exactly.
CountData noiseless_counts(const TomographyProtocol& p, const StateVector& c);

/// c scaled so that the expected total number of events equals n_events.
StateVector scale_to_events(const TomographyProtocol& p, const StateVector& c, double n_events);

/// k_nu ~ Poisson(rates_nu t_nu), independent.
CountData sample_from_rates(const TomographyProtocol& p, const Eigen::VectorXd& rates, std::uint64_t seed);
CountData sample_counts(const TomographyProtocol& p, const StateVector& c, std::uint64_t seed);
/// Rates X_nu m X_nu^dagger for an un-normalized intensity matrix m (sum of c c^dagger).
CountData sample_counts(const TomographyProtocol& p, const Mat3& intensity_matrix, std::uint64_t seed);

/// Summed intensities of weighted components; weights must be > 0.
CountData mixture_counts(const TomographyProtocol& p, const std::vector<WeightedComponent>& components,
                         std::uint64_t seed);
/// sum_m w_m c_m c_m^dagger.
Mat3 mixture_intensity_matrix(const std::vector<WeightedComponent>& components);

/// Keeps each event with probability f: k' ~ Binomial(k, f), t' = f t.
/// Throws InvalidArgumentError for f outside (0, 1] or non-integer counts.
CountData thin_counts(const CountData& d, double f, std::uint64_t seed);

/// Protocol whose plate orientations carry independent Gaussian offsets
/// (standard deviation jitter_rad). Arm plates are perturbed once per plate;
/// with a control-plate design, each control orientation gets its own offset.
TomographyProtocol perturb_protocol(const TomographyProtocol& p, double jitter_rad, Rng& rng);

/// Counts drawn from the perturbed instrument; the reported protocol hash is the nominal one.
CountData sample_with_instrument_error(const TomographyProtocol& p, const StateVector& c,
                                       double angle_jitter_deg, std::uint64_t seed);

}  // namespace qtomo
