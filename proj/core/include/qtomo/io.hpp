#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qtomo/estimation.hpp"
#include "qtomo/study.hpp"

namespace qtomo {

using Json = nlohmann::ordered_json;

/// Configuration or data file content that fails validation. `where` is a
/// JSON-pointer-like location or "file:line".
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what) {}
};

const char* tool_version();

/// FNV-1a 64-bit digest, 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

/// Shortest round-trip text: "%.17g".
std::string format_double(double v);

/// Provenance of an output file: tool version plus the hash of the config that produced it.
struct OutputStamp {
  std::string version = tool_version();
  std::string config_hash;
};

// ---- JSON values -------------------------------------------------------------

Json to_json(const StateVector& v);
StateVector state_from_json(const Json& j, const std::string& where = "");
Json to_json(const DensityMatrix& rho);
Mat3 matrix_from_json(const Json& j, const std::string& where = "");

/// {"delta": radians | "half" | "quarter", "angle_deg": degrees}.
WavePlateSetting plate_from_json(const Json& j, const std::string& where = "");

/// State spec: {"amplitudes": {"re": [..], "im": [..]}}, {"poincare_deg": [ts, ps, ti, pi]},
/// or {"recipe": {"source": "psi1"|"psi2"|"psi3", "plate": {...}}}. Normalized.
StateVector state_from_spec(const Json& j, const std::string& where = "");

/// {"type": "protocol1"|"protocol2", "chi_s_deg", "theta_i_deg", "orientations_deg", "exposure_s"},
/// or {"type": "rows", "rows": [{"label", "re": [..], "im": [..], "t"}]} for custom designs.
/// Completeness is not checked here.
TomographyProtocol protocol_from_spec(const Json& j, const std::string& where = "");

Json to_json(const ReconstructionResult& r);
Json to_json(const MixtureResult& m);

// ---- CSV ---------------------------------------------------------------------

/// Every CSV starts with '#' comment lines carrying the stamp; readers skip them.
void write_stamp(std::ostream& os, const OutputStamp& stamp);

/// nu,label,re1,im1,re2,im2,re3,im3,t
void write_x_csv(std::ostream& os, const TomographyProtocol& p, const OutputStamp& stamp);
TomographyProtocol read_x_csv(std::istream& is, const std::string& name = "file");

/// nu,k,t_s
void write_counts_csv(std::ostream& os, const CountData& d, const OutputStamp& stamp);
CountData read_counts_csv(std::istream& is, const std::string& name = "file");

/// replica,f,n_events,fidelity,info_fidelity,chi2_stat,converged,iterations
void write_study_csv(std::ostream& os, const StudyResult& r, const OutputStamp& stamp);
/// Per-f means, sds and theoretical band columns.
void write_summary_csv(std::ostream& os, const StudyResult& r, const OutputStamp& stamp);
/// bin_lo,bin_hi,count,density
void write_histogram_csv(std::ostream& os, const Histogram& h, const OutputStamp& stamp);

/// Pretty JSON with a trailing newline; ordered keys keep output byte-stable.
std::string dump(const Json& j);

}  // namespace qtomo
