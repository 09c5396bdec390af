#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qtomo/optics.hpp"

namespace qtomo {

using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, 3>;

/// Default orientations of the second protocol (experimentally used values).
inline constexpr double kDefaultChiSignalDeg = 18.8;
inline constexpr double kDefaultThetaIdlerDeg = -28.5;
inline constexpr double kControlStepDeg = 5.0;
inline constexpr int kControlPositions = 72;
/// Fewest rows that can fix the 2s - 1 physical parameters.
inline constexpr int kMinRows = kPhysicalParams;

struct ProtocolRow {
  std::string label;
  std::string settings;  // human-readable plate description
  Row3 x;                // process-amplitude row
  double exposure = 1.0; // seconds
};

/// Per-row arm plates (first protocol).
struct ArmDesign {
  struct Row {
    ArmPlates signal;
    ArmPlates idler;
  };
  std::vector<Row> rows;
};

/// Fixed signal quarter-wave and idler half-wave plates, plus a rotating control
/// plate in front of the beam splitter (second protocol). Angles in radians.
struct ControlPlateDesign {
  double chi_s = 0.0;
  double theta_i = 0.0;
  std::vector<double> orientations;
  double control_delta = kQuarterWave;
};

using ProtocolDesign = std::variant<std::monostate, ArmDesign, ControlPlateDesign>;

class TomographyProtocol {
 public:
  /// Unchecked: callers that need a usable protocol call require_complete().
  static TomographyProtocol from_rows(std::string name, std::vector<ProtocolRow> rows,
                                      ProtocolDesign design = {});

  const std::string& name() const { return name_; }
  const std::vector<ProtocolRow>& rows() const { return rows_; }
  const ProtocolDesign& design() const { return design_; }
  int size() const { return static_cast<int>(rows_.size()); }

  /// Stacked rows, one per process.
  const RowMatrix& X() const { return x_; }
  const Eigen::VectorXd& exposures() const { return t_; }

  /// Fisher matrix sum_nu t_nu X_nu^dagger X_nu.
  Mat3 fisher() const;

  /// Throws IncompleteProtocolError if fewer than kMinRows rows or a singular Fisher matrix.
  void require_complete() const;

  /// Same rows with every exposure multiplied by factor.
  TomographyProtocol with_exposures_scaled(double factor) const;

  /// FNV-1a digest over the row data, hex encoded.
  std::string hash() const;

 private:
  TomographyProtocol() = default;
  std::string name_;
  std::vector<ProtocolRow> rows_;
  ProtocolDesign design_;
  RowMatrix x_;
  Eigen::VectorXd t_;
};

/// Nine-row protocol: every arm combination of the tabulated plate settings.
TomographyProtocol build_protocol1(double exposure = 1.0);

/// The arm settings of the nine-row protocol, in table order.
ArmDesign protocol1_design();

/// Fixed three-element row from the signal quarter-wave and idler half-wave coefficients:
/// (r_s r_i, (r_s t_i + r_i t_s) / sqrt2, t_s t_i).
Row3 protocol2_fixed_row(double chi_s, double theta_i);

/// Row i is fixed_row * G(control plate at orientation i). Angles in radians.
/// Throws IncompleteProtocolError for fewer than kMinRows orientations.
TomographyProtocol build_protocol2(const ControlPlateDesign& design, double exposure = 1.0);
/// Defaults: 18.8 deg, -28.5 deg, 0..355 deg in 5 deg steps, quarter-wave control plate.
ControlPlateDesign default_protocol2_design();
TomographyProtocol build_protocol2(double exposure = 1.0);

/// Rebuilds rows from a design, keeping names, labels and exposures of `like`.
TomographyProtocol rebuild_from_design(const TomographyProtocol& like, const ProtocolDesign& design);

/// lambda_nu = |X_nu c|^2.
Eigen::VectorXd intensities(const TomographyProtocol& p, const StateVector& c);
/// lambda_nu = X_nu m X_nu^dagger for a (possibly un-normalized) intensity matrix m.
Eigen::VectorXd intensities(const TomographyProtocol& p, const Mat3& m);

/// det of the Fisher matrix; 0 when it is singular (relative eigenvalue < 1e-12).
double design_metric(const TomographyProtocol& p);
/// det I / (tr I / 3)^3, in [0, 1]; 1 for an isotropic design. Scale invariant.
double design_isotropy(const TomographyProtocol& p);

enum class DesignCriterion { Determinant, Isotropy };

struct DesignPoint {
  double chi_s_deg = 0.0;
  double theta_i_deg = 0.0;
  double metric = 0.0;
};

struct Protocol2Optimum {
  DesignPoint best;
  /// All grid points within relative 1e-9 of the best metric (symmetry images).
  std::vector<DesignPoint> equivalent;
  DesignCriterion criterion = DesignCriterion::Isotropy;
};

/// Grid search over the signal quarter-wave and idler half-wave orientations in
/// (-90, 90] deg with the default control orientations. grid_step_deg in (0, 5].
Protocol2Optimum optimize_protocol2(double grid_step_deg,
                                    DesignCriterion criterion = DesignCriterion::Isotropy);

}  // namespace qtomo
