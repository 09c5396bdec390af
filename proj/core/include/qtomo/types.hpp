#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace qtomo {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3cd;
using Row3 = Eigen::RowVector3cd;
using Mat3 = Eigen::Matrix3cd;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

/// Hilbert-space dimension of a qutrit.
inline constexpr int kDim = 3;
/// Number of physical real parameters of an un-normalized state vector
/// (real dimension 2s minus the unobservable global phase).
inline constexpr int kPhysicalParams = 2 * kDim - 1;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSqrt2 = std::numbers::sqrt2;

inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Zero-norm state, zero-trace matrix, all-zero data.
class DegenerateStateError : public Error {
 public:
  using Error::Error;
};

/// The measurement protocol does not determine the state (singular Fisher matrix,
/// too few rows, more than one zero mode of H).
class IncompleteProtocolError : public Error {
 public:
  using Error::Error;
};

/// Argument outside its documented domain.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

/// Internal consistency failure of a numerical identity.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qtomo
