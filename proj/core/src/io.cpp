#include "qtomo/io.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "qtomo/scenarios.hpp"
#include "qtomo/version.hpp"

namespace qtomo {

namespace {

std::string at(const std::string& where, const std::string& key) { return where + "/" + key; }

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where, fmt::format("missing field '{}'", key));
  return *it;
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where, "expected a number");
  return j.get<double>();
}

std::vector<double> numbers(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], fmt::format("{}/{}", where, i)));
  return out;
}

// JSON has no NaN; non-finite values are written as null.
Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string csv_num(double v) { return std::isfinite(v) ? format_double(v) : "nan"; }

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_num(const std::string& s, const std::string& where) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw ParseError(where, "trailing characters in '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError(where, "not a number: '" + s + "'");
  }
}

// Reads data lines (skipping '#' comments and the header), checking the header text.
std::vector<std::pair<int, std::vector<std::string>>> read_table(std::istream& is, const std::string& name,
                                                                 const std::string& header) {
  std::vector<std::pair<int, std::vector<std::string>>> rows;
  std::string line;
  int lineno = 0;
  bool seen_header = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      if (line != header) throw ParseError(fmt::format("{}:{}", name, lineno), "expected header '" + header + "'");
      seen_header = true;
      continue;
    }
    rows.emplace_back(lineno, split(line));
  }
  if (!seen_header) throw ParseError(name, "missing header '" + header + "'");
  return rows;
}

}  // namespace

const char* tool_version() { return QTOMO_VERSION_STRING; }

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

Json to_json(const StateVector& v) {
  Json re = Json::array(), im = Json::array();
  for (int j = 0; j < kDim; ++j) {
    re.push_back(v[j].real());
    im.push_back(v[j].imag());
  }
  return Json{{"re", re}, {"im", im}};
}

StateVector state_from_json(const Json& j, const std::string& where) {
  auto re = numbers(require(j, "re", where), at(where, "re"));
  auto im = numbers(require(j, "im", where), at(where, "im"));
  if (re.size() != 3 || im.size() != 3) throw ParseError(where, "state vectors have exactly 3 components");
  return StateVector(Complex(re[0], im[0]), Complex(re[1], im[1]), Complex(re[2], im[2]));
}

Json to_json(const DensityMatrix& rho) {
  Json re = Json::array(), im = Json::array();
  for (int r = 0; r < kDim; ++r) {
    Json rr = Json::array(), ii = Json::array();
    for (int c = 0; c < kDim; ++c) {
      rr.push_back(rho(r, c).real());
      ii.push_back(rho(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  return Json{{"re", re}, {"im", im}};
}

Mat3 matrix_from_json(const Json& j, const std::string& where) {
  const Json& re = require(j, "re", where);
  const Json& im = require(j, "im", where);
  if (!re.is_array() || !im.is_array() || re.size() != 3 || im.size() != 3) {
    throw ParseError(where, "matrices are 3 rows of 3 numbers");
  }
  Mat3 m;
  for (int r = 0; r < 3; ++r) {
    auto rr = numbers(re[r], fmt::format("{}/re/{}", where, r));
    auto ii = numbers(im[r], fmt::format("{}/im/{}", where, r));
    if (rr.size() != 3 || ii.size() != 3) throw ParseError(where, "matrices are 3 rows of 3 numbers");
    for (int c = 0; c < 3; ++c) m(r, c) = Complex(rr[c], ii[c]);
  }
  return m;
}

WavePlateSetting plate_from_json(const Json& j, const std::string& where) {
  const Json& d = require(j, "delta", where);
  double delta;
  if (d.is_string()) {
    const auto s = d.get<std::string>();
    if (s == "half") delta = kHalfWave;
    else if (s == "quarter") delta = kQuarterWave;
    else throw ParseError(at(where, "delta"), "expected radians, \"half\" or \"quarter\"");
  } else {
    delta = number(d, at(where, "delta"));
  }
  const double angle = number(require(j, "angle_deg", where), at(where, "angle_deg"));
  try {
    return WavePlateSetting(delta, deg_to_rad(angle));
  } catch (const InvalidArgumentError& e) {
    throw ParseError(where, e.what());
  }
}

StateVector state_from_spec(const Json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where, "expected a state object");
  try {
    if (j.contains("amplitudes")) return normalize(state_from_json(j["amplitudes"], at(where, "amplitudes")));
    if (j.contains("poincare_deg")) {
      auto a = numbers(j["poincare_deg"], at(where, "poincare_deg"));
      if (a.size() != 4) throw ParseError(at(where, "poincare_deg"), "expected [theta_s, phi_s, theta_i, phi_i]");
      return from_poincare(PoincarePair(deg_to_rad(a[0]), deg_to_rad(a[1]), deg_to_rad(a[2]), deg_to_rad(a[3])));
    }
    if (j.contains("recipe")) {
      const Json& r = j["recipe"];
      const std::string w = at(where, "recipe");
      const Json& src = require(r, "source", w);
      if (!src.is_string()) throw ParseError(at(w, "source"), "expected psi1, psi2 or psi3");
      SourceState s;
      try {
        s = parse_source(src.get<std::string>());
      } catch (const InvalidArgumentError& e) {
        throw ParseError(at(w, "source"), e.what());
      }
      if (!r.contains("plate")) return source_state(s);
      return plate_prepared(s, plate_from_json(r["plate"], at(w, "plate")));
    }
  } catch (const DegenerateStateError& e) {
    throw ParseError(where, e.what());
  }
  throw ParseError(where, "state needs one of 'amplitudes', 'poincare_deg', 'recipe'");
}

TomographyProtocol protocol_from_spec(const Json& j, const std::string& where) {
  const Json& type = require(j, "type", where);
  if (!type.is_string()) throw ParseError(at(where, "type"), "expected a string");
  const std::string t = type.get<std::string>();
  const double exposure = j.contains("exposure_s") ? number(j["exposure_s"], at(where, "exposure_s")) : 1.0;
  if (!(exposure > 0.0)) throw ParseError(at(where, "exposure_s"), "exposure must be positive");
  if (t == "protocol1") return build_protocol1(exposure);
  if (t == "protocol2") {
    ControlPlateDesign d = default_protocol2_design();
    if (j.contains("chi_s_deg")) d.chi_s = deg_to_rad(number(j["chi_s_deg"], at(where, "chi_s_deg")));
    if (j.contains("theta_i_deg")) d.theta_i = deg_to_rad(number(j["theta_i_deg"], at(where, "theta_i_deg")));
    if (j.contains("orientations_deg")) {
      d.orientations.clear();
      for (double mu : numbers(j["orientations_deg"], at(where, "orientations_deg"))) {
        d.orientations.push_back(deg_to_rad(mu));
      }
    }
    return build_protocol2(d, exposure);
  }
  if (t == "rows") {
    const Json& rows = require(j, "rows", where);
    if (!rows.is_array()) throw ParseError(at(where, "rows"), "expected an array");
    std::vector<ProtocolRow> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string w = fmt::format("{}/rows/{}", where, i);
      StateVector x = state_from_json(rows[i], w);
      ProtocolRow row;
      row.label = rows[i].value("label", fmt::format("R{}", i + 1));
      row.settings = "custom";
      row.x = x.amplitudes().transpose();
      row.exposure = rows[i].contains("t") ? number(rows[i]["t"], at(w, "t")) : exposure;
      if (!(row.exposure > 0.0)) throw ParseError(at(w, "t"), "exposure must be positive");
      out.push_back(std::move(row));
    }
    return TomographyProtocol::from_rows("custom", std::move(out));
  }
  throw ParseError(at(where, "type"), "expected protocol1, protocol2 or rows");
}

Json to_json(const ReconstructionResult& r) {
  Json j;
  j["estimate"] = to_json(r.estimate);
  j["normalized"] = to_json(r.normalized);
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["status"] = to_string(r.status);
  j["loglik"] = num(r.loglik);
  j["residual"] = num(r.residual);
  j["balance"] = Json{{"sum_k", num(r.total_counts)}, {"sum_lambda_t", num(r.total_expected)}};
  return j;
}

Json to_json(const MixtureResult& m) {
  Json j;
  j["rho"] = to_json(m.rho);
  Json comps = Json::array();
  for (std::size_t i = 0; i < m.components.size(); ++i) {
    comps.push_back(Json{{"weight", m.component_weights[i]},
                         {"raw", to_json(m.components[i])},
                         {"normalized", to_json(normalize(m.components[i]))}});
  }
  j["components"] = comps;
  Json pcs = Json::array();
  for (std::size_t i = 0; i < m.principal_components.size(); ++i) {
    pcs.push_back(Json{{"weight", m.principal_weights[i]}, {"vector", to_json(m.principal_components[i])}});
  }
  j["principal_components"] = pcs;
  j["iterations"] = m.iterations;
  j["converged"] = m.converged;
  return j;
}

void write_stamp(std::ostream& os, const OutputStamp& stamp) {
  os << "# qtomo " << stamp.version << "\n# config_hash " << stamp.config_hash << "\n";
}

void write_x_csv(std::ostream& os, const TomographyProtocol& p, const OutputStamp& stamp) {
  write_stamp(os, stamp);
  os << "nu,label,re1,im1,re2,im2,re3,im3,t\n";
  for (int nu = 0; nu < p.size(); ++nu) {
    const auto& r = p.rows()[nu];
    os << nu + 1 << ',' << r.label;
    for (int j = 0; j < 3; ++j) os << ',' << format_double(r.x[j].real()) << ',' << format_double(r.x[j].imag());
    os << ',' << format_double(r.exposure) << '\n';
  }
}

TomographyProtocol read_x_csv(std::istream& is, const std::string& name) {
  std::vector<ProtocolRow> rows;
  for (const auto& [lineno, cells] : read_table(is, name, "nu,label,re1,im1,re2,im2,re3,im3,t")) {
    const std::string w = fmt::format("{}:{}", name, lineno);
    if (cells.size() != 9) throw ParseError(w, "expected 9 columns");
    ProtocolRow row;
    row.label = cells[1];
    row.settings = "file";
    for (int j = 0; j < 3; ++j) row.x[j] = Complex(parse_num(cells[2 + 2 * j], w), parse_num(cells[3 + 2 * j], w));
    row.exposure = parse_num(cells[8], w);
    if (!(row.exposure > 0.0)) throw ParseError(w, "exposure must be positive");
    rows.push_back(std::move(row));
  }
  return TomographyProtocol::from_rows(name, std::move(rows));
}

void write_counts_csv(std::ostream& os, const CountData& d, const OutputStamp& stamp) {
  write_stamp(os, stamp);
  os << "nu,k,t_s\n";
  for (int nu = 0; nu < d.size(); ++nu) {
    os << nu + 1 << ',' << format_double(d.counts[nu]) << ',' << format_double(d.exposures[nu]) << '\n';
  }
}

CountData read_counts_csv(std::istream& is, const std::string& name) {
  CountData d;
  for (const auto& [lineno, cells] : read_table(is, name, "nu,k,t_s")) {
    const std::string w = fmt::format("{}:{}", name, lineno);
    if (cells.size() != 3) throw ParseError(w, "expected 3 columns");
    const double k = parse_num(cells[1], w);
    const double t = parse_num(cells[2], w);
    if (!(k >= 0.0)) throw ParseError(w, "counts must be >= 0");
    if (!(t > 0.0)) throw ParseError(w, "exposure must be positive");
    d.counts.push_back(k);
    d.exposures.push_back(t);
  }
  return d;
}

void write_study_csv(std::ostream& os, const StudyResult& r, const OutputStamp& stamp) {
  write_stamp(os, stamp);
  os << "replica,f,n_events,fidelity,info_fidelity,chi2_stat,converged,iterations\n";
  for (const auto& row : r.rows) {
    os << row.replica << ',' << csv_num(row.f) << ',' << csv_num(row.n_events) << ',' << csv_num(row.fidelity)
       << ',' << csv_num(row.info_fidelity) << ',' << csv_num(row.chi2_stat) << ',' << (row.converged ? 1 : 0)
       << ',' << row.iterations << '\n';
  }
}

void write_summary_csv(std::ostream& os, const StudyResult& r, const OutputStamp& stamp) {
  write_stamp(os, stamp);
  os << "f,expected_events,replicas,failures,mean_fidelity,sd_fidelity,mean_info_fidelity,sd_info_fidelity,"
        "mean_chi2,fh_band_lo,fh_band_mean,fh_band_hi,fidelity_band_lo,fidelity_band_median,fidelity_band_hi\n";
  for (const auto& s : r.summary) {
    os << csv_num(s.f) << ',' << csv_num(s.expected_events) << ',' << s.replicas << ',' << s.failures << ','
       << csv_num(s.mean_fidelity) << ',' << csv_num(s.sd_fidelity) << ',' << csv_num(s.mean_info_fidelity) << ','
       << csv_num(s.sd_info_fidelity) << ',' << csv_num(s.mean_chi2) << ',' << csv_num(s.fh.lower) << ','
       << csv_num(s.fh.center) << ',' << csv_num(s.fh.upper) << ',' << csv_num(s.fidelity.lower) << ','
       << csv_num(s.fidelity.center) << ',' << csv_num(s.fidelity.upper) << '\n';
  }
}

void write_histogram_csv(std::ostream& os, const Histogram& h, const OutputStamp& stamp) {
  write_stamp(os, stamp);
  os << "bin_lo,bin_hi,count,density\n";
  long total = 0;
  for (long c : h.counts) total += c;
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    const double width = h.edges[i + 1] - h.edges[i];
    const double density = total > 0 ? static_cast<double>(h.counts[i]) / (static_cast<double>(total) * width) : 0.0;
    os << csv_num(h.edges[i]) << ',' << csv_num(h.edges[i + 1]) << ',' << h.counts[i] << ',' << csv_num(density)
       << '\n';
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qtomo
