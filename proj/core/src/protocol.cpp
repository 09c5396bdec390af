#include "qtomo/protocol.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <fmt/format.h>

namespace qtomo {

namespace {

struct Table1Entry {
  const char* moment;
  double chi_s, theta_s, chi_i, theta_i;  // degrees
};

constexpr std::array<Table1Entry, 9> kTable1 = {{
    {"A/4", 0.0, 45.0, 0.0, -45.0},
    {"C/4", 0.0, 45.0, 0.0, 0.0},
    {"B/4", 0.0, 0.0, 0.0, 0.0},
    {"(B+C+2ImF)/8", 45.0, 0.0, 0.0, 0.0},
    {"(B+C-2ReF)/8", 45.0, 22.5, 0.0, 0.0},
    {"(A+C-2ReD)/8", 45.0, 22.5, 0.0, -45.0},
    {"(A+C+2ImD)/8", 45.0, 0.0, 0.0, -45.0},
    {"(A+B-2ImE)/16", -45.0, 11.25, -45.0, 11.25},
    {"(A+B-2ReE)/16", 45.0, 22.5, -45.0, 22.5},
}};

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

bool singular(const Mat3& fisher) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(fisher, Eigen::EigenvaluesOnly);
  const auto& w = es.eigenvalues();
  return !(w.maxCoeff() > 0.0) || w.minCoeff() <= 1e-12 * w.maxCoeff();
}

}  // namespace

TomographyProtocol TomographyProtocol::from_rows(std::string name, std::vector<ProtocolRow> rows,
                                                 ProtocolDesign design) {
  TomographyProtocol p;
  p.name_ = std::move(name);
  p.rows_ = std::move(rows);
  p.design_ = std::move(design);
  p.x_.resize(p.size(), 3);
  p.t_.resize(p.size());
  for (int nu = 0; nu < p.size(); ++nu) {
    if (!(p.rows_[nu].exposure > 0.0)) {
      throw InvalidArgumentError(fmt::format("row {} has a nonpositive exposure", nu + 1));
    }
    p.x_.row(nu) = p.rows_[nu].x;
    p.t_[nu] = p.rows_[nu].exposure;
  }
  return p;
}

Mat3 TomographyProtocol::fisher() const {
  Mat3 i = x_.adjoint() * t_.asDiagonal() * x_;
  return 0.5 * (i + i.adjoint());
}

void TomographyProtocol::require_complete() const {
  if (size() < kMinRows) {
    throw IncompleteProtocolError(
        fmt::format("protocol '{}' has {} rows; at least {} are required", name_, size(), kMinRows));
  }
  if (singular(fisher())) {
    throw IncompleteProtocolError(fmt::format("protocol '{}' has a singular Fisher matrix", name_));
  }
}

TomographyProtocol TomographyProtocol::with_exposures_scaled(double factor) const {
  std::vector<ProtocolRow> rows = rows_;
  for (auto& r : rows) r.exposure *= factor;
  return from_rows(name_, std::move(rows), design_);
}

std::string TomographyProtocol::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = fnv1a(h, name_);
  for (const auto& r : rows_) {
    for (int j = 0; j < 3; ++j) {
      h = fnv1a(h, fmt::format("{:.17g},{:.17g};", r.x[j].real(), r.x[j].imag()));
    }
    h = fnv1a(h, fmt::format("t={:.17g}|", r.exposure));
  }
  return fmt::format("{:016x}", h);
}

ArmDesign protocol1_design() {
  ArmDesign d;
  for (const auto& e : kTable1) {
    d.rows.push_back({{WavePlateSetting::quarter(deg_to_rad(e.chi_s)),
                       WavePlateSetting::half(deg_to_rad(e.theta_s))},
                      {WavePlateSetting::quarter(deg_to_rad(e.chi_i)),
                       WavePlateSetting::half(deg_to_rad(e.theta_i))}});
  }
  return d;
}

namespace {

std::vector<ProtocolRow> arm_rows(const ArmDesign& d, const std::vector<ProtocolRow>* like,
                                  double exposure) {
  std::vector<ProtocolRow> rows;
  for (std::size_t nu = 0; nu < d.rows.size(); ++nu) {
    const auto& s = d.rows[nu].signal;
    const auto& i = d.rows[nu].idler;
    ProtocolRow row;
    row.label = like ? (*like)[nu].label
                     : (nu < kTable1.size() ? kTable1[nu].moment : fmt::format("R{}", nu + 1));
    row.settings = fmt::format("chi_s={:g} theta_s={:g} chi_i={:g} theta_i={:g}",
                               rad_to_deg(s.quarter.angle()), rad_to_deg(s.half.angle()),
                               rad_to_deg(i.quarter.angle()), rad_to_deg(i.half.angle()));
    row.x = projection_row(s, i);
    row.exposure = like ? (*like)[nu].exposure : exposure;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ProtocolRow> control_rows(const ControlPlateDesign& d, const std::vector<ProtocolRow>* like,
                                      double exposure) {
  const Row3 l = protocol2_fixed_row(d.chi_s, d.theta_i);
  std::vector<ProtocolRow> rows;
  for (std::size_t nu = 0; nu < d.orientations.size(); ++nu) {
    ProtocolRow row;
    row.label = like ? (*like)[nu].label : fmt::format("mu{}", nu + 1);
    row.settings = fmt::format("mu={:g}", rad_to_deg(d.orientations[nu]));
    row.x = l * qutrit_unitary(WavePlateSetting(d.control_delta, d.orientations[nu]));
    row.exposure = like ? (*like)[nu].exposure : exposure;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TomographyProtocol build_protocol1(double exposure) {
  if (!(exposure > 0.0)) throw InvalidArgumentError("exposure must be positive");
  ArmDesign d = protocol1_design();
  return TomographyProtocol::from_rows("protocol1", arm_rows(d, nullptr, exposure), d);
}

Row3 protocol2_fixed_row(double chi_s, double theta_i) {
  auto [ts, rs] = plate_coeffs(WavePlateSetting::quarter(chi_s));
  auto [ti, ri] = plate_coeffs(WavePlateSetting::half(theta_i));
  return Row3(rs * ri, (rs * ti + ri * ts) / kSqrt2, ts * ti);
}

ControlPlateDesign default_protocol2_design() {
  ControlPlateDesign d;
  d.chi_s = deg_to_rad(kDefaultChiSignalDeg);
  d.theta_i = deg_to_rad(kDefaultThetaIdlerDeg);
  for (int i = 0; i < kControlPositions; ++i) d.orientations.push_back(deg_to_rad(kControlStepDeg * i));
  return d;
}

TomographyProtocol build_protocol2(const ControlPlateDesign& design, double exposure) {
  if (!(exposure > 0.0)) throw InvalidArgumentError("exposure must be positive");
  if (static_cast<int>(design.orientations.size()) < kMinRows) {
    throw IncompleteProtocolError(fmt::format("{} control orientations given; at least {} are required",
                                              design.orientations.size(), kMinRows));
  }
  return TomographyProtocol::from_rows("protocol2", control_rows(design, nullptr, exposure), design);
}

TomographyProtocol build_protocol2(double exposure) {
  return build_protocol2(default_protocol2_design(), exposure);
}

TomographyProtocol rebuild_from_design(const TomographyProtocol& like, const ProtocolDesign& design) {
  const auto* rows = &like.rows();
  if (const auto* a = std::get_if<ArmDesign>(&design)) {
    if (a->rows.size() != rows->size()) throw InvalidArgumentError("design row count mismatch");
    return TomographyProtocol::from_rows(like.name(), arm_rows(*a, rows, 1.0), design);
  }
  if (const auto* c = std::get_if<ControlPlateDesign>(&design)) {
    if (c->orientations.size() != rows->size()) throw InvalidArgumentError("design row count mismatch");
    return TomographyProtocol::from_rows(like.name(), control_rows(*c, rows, 1.0), design);
  }
  throw InvalidArgumentError("protocol has no plate design to rebuild from");
}

Eigen::VectorXd intensities(const TomographyProtocol& p, const StateVector& c) {
  return (p.X() * c.amplitudes()).cwiseAbs2();
}

Eigen::VectorXd intensities(const TomographyProtocol& p, const Mat3& m) {
  Eigen::VectorXd out(p.size());
  for (int nu = 0; nu < p.size(); ++nu) {
    const Row3 x = p.X().row(nu);
    out[nu] = std::max(0.0, (x * m * x.adjoint())(0, 0).real());
  }
  return out;
}

double design_metric(const TomographyProtocol& p) {
  Mat3 i = p.fisher();
  if (singular(i)) return 0.0;
  return i.determinant().real();
}

double design_isotropy(const TomographyProtocol& p) {
  Mat3 i = p.fisher();
  if (singular(i)) return 0.0;
  double mean = i.trace().real() / 3.0;
  return i.determinant().real() / (mean * mean * mean);
}

Protocol2Optimum optimize_protocol2(double grid_step_deg, DesignCriterion criterion) {
  if (!(grid_step_deg > 0.0 && grid_step_deg <= 5.0)) {
    throw InvalidArgumentError("grid step must lie in (0, 5] degrees");
  }
  ControlPlateDesign base = default_protocol2_design();
  std::vector<Mat3> controls;
  for (double mu : base.orientations) controls.push_back(qutrit_unitary(WavePlateSetting(base.control_delta, mu)));

  const int steps = static_cast<int>(std::floor(180.0 / grid_step_deg + 1e-9));
  std::vector<DesignPoint> grid;
  grid.reserve(static_cast<std::size_t>(steps) * steps);
  for (int a = 1; a <= steps; ++a) {
    double chi = -90.0 + a * grid_step_deg;
    for (int b = 1; b <= steps; ++b) {
      double theta = -90.0 + b * grid_step_deg;
      Row3 l = protocol2_fixed_row(deg_to_rad(chi), deg_to_rad(theta));
      Mat3 fisher = Mat3::Zero();
      for (const auto& g : controls) {
        Row3 x = l * g;
        fisher += x.adjoint() * x;
      }
      double metric = 0.0;
      if (!singular(fisher)) {
        double det = fisher.determinant().real();
        double mean = fisher.trace().real() / 3.0;
        metric = criterion == DesignCriterion::Determinant ? det : det / (mean * mean * mean);
      }
      grid.push_back({chi, theta, metric});
    }
  }
  double best = 0.0;
  for (const auto& g : grid) best = std::max(best, g.metric);

  Protocol2Optimum out;
  out.criterion = criterion;
  for (const auto& g : grid) {
    if (g.metric >= best * (1.0 - 1e-9)) out.equivalent.push_back(g);
  }
  // Representative: the image closest to the experimentally used orientations.
  auto distance = [](const DesignPoint& g) {
    return std::hypot(g.chi_s_deg - kDefaultChiSignalDeg, g.theta_i_deg - kDefaultThetaIdlerDeg);
  };
  out.best = *std::min_element(out.equivalent.begin(), out.equivalent.end(),
                               [&](const DesignPoint& x, const DesignPoint& y) { return distance(x) < distance(y); });
  return out;
}

}  // namespace qtomo
