#include "qtomo/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qtomo/types.hpp"

namespace qtomo {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

struct LogFactorialTable {
  std::array<double, 256> v{};
  LogFactorialTable() {
    v[0] = 0.0;
    for (int k = 1; k < 256; ++k) v[k] = v[k - 1] + std::log(static_cast<double>(k));
  }
};

const LogFactorialTable& lf_table() {
  static const LogFactorialTable t;
  return t;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  std::uint64_t t = stream ^ 0xd1b54a32d192ed03ULL;
  std::uint64_t b = splitmix64(t);
  std::uint64_t mix = a ^ rotl(b, 17);
  return splitmix64(mix);
}

double log_factorial(std::int64_t k) {
  if (k < 0) throw InvalidArgumentError("log_factorial of a negative number");
  if (k < 256) return lf_table().v[static_cast<std::size_t>(k)];
  const double x = static_cast<double>(k) + 1.0;
  const double x2 = x * x;
  // ln Gamma(x) by Stirling with four correction terms; error < 1e-15 for x > 256.
  return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) +
         1.0 / (12.0 * x) - 1.0 / (360.0 * x * x2) + 1.0 / (1260.0 * x * x2 * x2) -
         1.0 / (1680.0 * x * x2 * x2 * x2);
}

Rng::Rng(std::uint64_t seed) {
  std::uint64_t st = seed;
  for (auto& w : s_) w = splitmix64(st);
}

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  double u1;
  do {
    u1 = uniform();
  } while (u1 == 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_normal_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

std::int64_t Rng::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw InvalidArgumentError("Poisson mean must be finite and >= 0");
  if (mean == 0.0) return 0;
  return mean < 10.0 ? poisson_inversion(mean) : poisson_ptrs(mean);
}

std::int64_t Rng::poisson_inversion(double mean) {
  const double u = uniform();
  double p = std::exp(-mean);
  double cdf = p;
  std::int64_t k = 0;
  while (u > cdf) {
    ++k;
    p *= mean / static_cast<double>(k);
    const double next_cdf = cdf + p;
    if (next_cdf == cdf) break;  // tail exhausted in double precision
    cdf = next_cdf;
  }
  return k;
}

// Hormann (1993), transformed rejection with squeeze.
std::int64_t Rng::poisson_ptrs(double mean) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = uniform() - 0.5;
    const double v = uniform();
    const double us = 0.5 - std::fabs(u);
    const auto k = static_cast<std::int64_t>(std::floor((2.0 * a / us + b) * u + mean + 0.43));
    if (us >= 0.07 && v <= vr) return k;
    if (k < 0 || (us < 0.013 && v > us)) continue;
    const double lhs = std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b);
    const double rhs = -mean + static_cast<double>(k) * loglam - log_factorial(k);
    if (lhs <= rhs) return k;
  }
}

std::int64_t Rng::binomial(std::int64_t n, double p) {
  if (n < 0) throw InvalidArgumentError("binomial trial count must be >= 0");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgumentError("binomial probability must lie in [0, 1]");
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  if (p > 0.5) return n - binomial(n, 1.0 - p);
  return static_cast<double>(n) * p < 10.0 ? binomial_inversion(n, p) : binomial_btrs(n, p);
}

std::int64_t Rng::binomial_inversion(std::int64_t n, double p) {
  const double q = 1.0 - p;
  const double ratio = p / q;
  const double u = uniform();
  double pk = std::exp(static_cast<double>(n) * std::log1p(-p));
  double cdf = pk;
  std::int64_t k = 0;
  while (u > cdf && k < n) {
    pk *= ratio * static_cast<double>(n - k) / static_cast<double>(k + 1);
    ++k;
    const double next_cdf = cdf + pk;
    if (next_cdf == cdf) break;
    cdf = next_cdf;
  }
  return k;
}

// Hormann (1993), BTRS; requires p <= 1/2 and n p >= 10.
std::int64_t Rng::binomial_btrs(std::int64_t n, double p) {
  const double nd = static_cast<double>(n);
  const double q = 1.0 - p;
  const double spq = std::sqrt(nd * p * q);
  const double b = 1.15 + 2.53 * spq;
  const double a = -0.0873 + 0.0248 * b + 0.01 * p;
  const double c = nd * p + 0.5;
  const double alpha = (2.83 + 5.1 / b) * spq;
  const double vr = 0.92 - 4.2 / b;
  const double lpq = std::log(p / q);
  const auto m = static_cast<std::int64_t>(std::floor((nd + 1.0) * p));
  const double h = log_factorial(m) + log_factorial(n - m);
  for (;;) {
    const double u = uniform() - 0.5;
    const double v = uniform();
    const double us = 0.5 - std::fabs(u);
    const auto k = static_cast<std::int64_t>(std::floor((2.0 * a / us + b) * u + c));
    if (k < 0 || k > n) continue;
    if (us >= 0.07 && v <= vr) return k;
    const double lhs = std::log(v * alpha / (a / (us * us) + b));
    const double rhs = h - log_factorial(k) - log_factorial(n - k) + static_cast<double>(k - m) * lpq;
    if (lhs <= rhs) return k;
  }
}

}  // namespace qtomo
