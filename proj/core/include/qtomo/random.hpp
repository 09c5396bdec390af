#pragma once

#include <array>
#include <cstdint>

namespace qtomo {

/// splitmix64 finalizer; used for seeding and for deriving child seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Child seed for an independent stream (e.g. one Monte Carlo replica).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// xoshiro256** generator with portable samplers. Every draw is a fixed
/// function of the seed on any platform with IEEE doubles and a conforming libm.
///
///   uniform   (next() >> 11) * 2^-53
///   normal    Box-Muller, both variates used
///   poisson   inversion for mean < 10, PTRS transformed rejection otherwise
///   binomial  inversion for n min(p, 1-p) < 10, BTRS otherwise
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  double uniform();
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }
  std::int64_t poisson(double mean);
  std::int64_t binomial(std::int64_t n, double p);

 private:
  std::int64_t poisson_inversion(double mean);
  std::int64_t poisson_ptrs(double mean);
  std::int64_t binomial_inversion(std::int64_t n, double p);
  std::int64_t binomial_btrs(std::int64_t n, double p);

  std::array<std::uint64_t, 4> s_{};
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// ln(k!) (exact table below 256, Stirling series above).
double log_factorial(std::int64_t k);

}  // namespace qtomo
