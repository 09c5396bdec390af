#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif
#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "qtomo/qtomo.hpp"

namespace qtomo::cli {

namespace fs = std::filesystem;

namespace {

class NonConvergence : public Error {
 public:
  using Error::Error;
};

struct Context {
  Json config;
  fs::path base;  // relative paths in the config resolve against its directory
  fs::path out;
  std::uint64_t seed = 1;
  OutputStamp stamp;
  std::ostream& log;
};

// ---- config helpers ----------------------------------------------------------

const Json& need(const Json& j, const char* key) {
  if (!j.contains(key)) throw ParseError("", fmt::format("missing field '{}'", key));
  return j[key];
}

double get_number(const Json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw ParseError(fmt::format("/{}", key), "expected a number");
  return j[key].get<double>();
}

int get_int(const Json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) throw ParseError(fmt::format("/{}", key), "expected an integer");
  return j[key].get<int>();
}

bool get_bool(const Json& j, const char* key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_boolean()) throw ParseError(fmt::format("/{}", key), "expected true or false");
  return j[key].get<bool>();
}

std::string get_string(const Json& j, const char* key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_string()) throw ParseError(fmt::format("/{}", key), "expected a string");
  return j[key].get<std::string>();
}

Json read_json(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw ParseError(path.string(), "cannot open file");
  try {
    return Json::parse(is);
  } catch (const Json::parse_error& e) {
    throw ParseError(path.string(), e.what());
  }
}

std::ifstream open_input(const Context& ctx, const char* key) {
  const fs::path p = ctx.base / get_string(ctx.config, key, "");
  if (!ctx.config.contains(key)) throw ParseError("", fmt::format("missing field '{}'", key));
  std::ifstream is(p);
  if (!is) throw ParseError(fmt::format("/{}", key), "cannot open " + p.string());
  return is;
}

void write_file(const Context& ctx, const std::string& name, const std::string& text) {
  fs::create_directories(ctx.out);
  const fs::path p = ctx.out / name;
  std::ofstream os(p, std::ios::binary);
  if (!os) throw ParseError(p.string(), "cannot write file");
  os << text;
}

Json stamp_json(const Context& ctx) {
  return Json{{"version", ctx.stamp.version}, {"config_hash", ctx.stamp.config_hash}, {"seed", ctx.seed}};
}

TomographyProtocol load_protocol(const Context& ctx) {
  if (ctx.config.contains("protocol_csv")) {
    auto is = open_input(ctx, "protocol_csv");
    return read_x_csv(is, get_string(ctx.config, "protocol_csv", ""));
  }
  return protocol_from_spec(need(ctx.config, "protocol"), "/protocol");
}

CountData load_counts(const Context& ctx) {
  auto is = open_input(ctx, "counts_csv");
  return read_counts_csv(is, get_string(ctx.config, "counts_csv", ""));
}

/// Components of a mixture spec, each scaled so that it contributes weight * n_events
/// expected events under p. "reference" selects the built-in two-component scenario.
std::vector<WeightedComponent> mixture_from_spec(const Json& j, const TomographyProtocol& p, double n_events,
                                                 const std::string& where) {
  if (j.is_string()) {
    if (j.get<std::string>() != "reference") throw ParseError(where, "expected \"reference\" or a list");
    return reference_mixture(p, 0.5 * n_events);
  }
  if (!j.is_array() || j.empty()) throw ParseError(where, "expected a nonempty list of components");
  std::vector<WeightedComponent> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = fmt::format("{}/{}", where, i);
    const double weight = get_number(j[i], "weight", 1.0 / static_cast<double>(j.size()));
    if (!(weight > 0.0)) throw ParseError(w + "/weight", "weights must be positive");
    StateVector c = state_from_spec(need(j[i], "state"), w + "/state");
    const double e = expected_counts(p, c).sum();
    if (!(e > 0.0)) throw ParseError(w, "component produces no events under this protocol");
    out.push_back({weight * n_events / e, c});
  }
  return out;
}

StateVector truth_state(const Json& j) { return state_from_spec(j, "/truth"); }

std::string complex_text(Complex z) { return fmt::format("{:.4f}{:+.4f}i", z.real(), z.imag()); }

// ---- commands ----------------------------------------------------------------

int cmd_protocol(Context& ctx) {
  TomographyProtocol p = load_protocol(ctx);
  std::ostringstream x;
  write_x_csv(x, p, ctx.stamp);
  write_file(ctx, "protocol_x.csv", x.str());

  Json rep = stamp_json(ctx);
  rep["protocol"] = Json{{"name", p.name()}, {"rows", p.size()}, {"hash", p.hash()}};
  rep["design_metric"] = design_metric(p);
  rep["design_isotropy"] = p.size() > 0 ? design_isotropy(p) : 0.0;
  Eigen::SelfAdjointEigenSolver<Mat3> es(p.fisher(), Eigen::EigenvaluesOnly);
  rep["fisher_eigenvalues"] = Json::array({es.eigenvalues()[0], es.eigenvalues()[1], es.eigenvalues()[2]});
  std::string problem;
  try {
    p.require_complete();
  } catch (const IncompleteProtocolError& e) {
    problem = e.what();
  }
  rep["complete"] = problem.empty();
  if (ctx.config.contains("optimize")) {
    const Json& o = ctx.config["optimize"];
    const std::string crit = get_string(o, "criterion", "isotropy");
    if (crit != "isotropy" && crit != "determinant") {
      throw ParseError("/optimize/criterion", "expected isotropy or determinant");
    }
    Protocol2Optimum opt = optimize_protocol2(get_number(o, "grid_step_deg", 1.0),
                                              crit == "isotropy" ? DesignCriterion::Isotropy
                                                                 : DesignCriterion::Determinant);
    auto point = [](const DesignPoint& d) {
      return Json{{"chi_s_deg", d.chi_s_deg}, {"theta_i_deg", d.theta_i_deg}, {"metric", d.metric}};
    };
    Json eq = Json::array();
    for (const auto& d : opt.equivalent) eq.push_back(point(d));
    rep["optimum"] = Json{{"criterion", crit}, {"best", point(opt.best)}, {"equivalent", eq}};
  }
  write_file(ctx, "protocol_report.json", dump(rep));
  ctx.log << fmt::format("protocol {}: {} rows, det I = {:.6g}\n", p.name(), p.size(), design_metric(p));
  if (!problem.empty()) throw IncompleteProtocolError(problem);
  return kOk;
}

int cmd_simulate(Context& ctx) {
  const Json& cfg = ctx.config;
  TomographyProtocol p = load_protocol(ctx);
  const double n_events = get_number(cfg, "n_events", 1e4);
  if (!(n_events > 0.0)) throw ParseError("/n_events", "must be positive");
  const double jitter = get_number(cfg, "jitter_deg", 0.0);
  if (!(jitter >= 0.0)) throw ParseError("/jitter_deg", "must be >= 0");
  const bool noiseless = get_bool(cfg, "noiseless", false);

  Json meta = stamp_json(ctx);
  meta["protocol_hash"] = p.hash();
  meta["n_events"] = n_events;
  meta["jitter_deg"] = jitter;
  meta["noiseless"] = noiseless;

  Mat3 intensity;
  if (cfg.contains("mixture")) {
    auto comps = mixture_from_spec(cfg["mixture"], p, n_events, "/mixture");
    intensity = mixture_intensity_matrix(comps);
    meta["truth_density"] = to_json(DensityMatrix::from_unnormalized(intensity));
  } else {
    StateVector c = scale_to_events(p, state_from_spec(need(cfg, "state"), "/state"), n_events);
    intensity = c.amplitudes() * c.amplitudes().adjoint();
    meta["truth"] = to_json(normalize(c));
  }

  TomographyProtocol actual = p;
  if (jitter > 0.0) {
    Rng rng(derive_seed(ctx.seed, 1));
    actual = perturb_protocol(p, deg_to_rad(jitter), rng);
  }
  CountData d;
  if (noiseless) {
    Eigen::VectorXd rates = intensities(actual, intensity);
    for (int nu = 0; nu < p.size(); ++nu) {
      d.counts.push_back(rates[nu] * actual.exposures()[nu]);
      d.exposures.push_back(actual.exposures()[nu]);
    }
  } else {
    d = sample_from_rates(actual, intensities(actual, intensity), derive_seed(ctx.seed, 2));
  }
  d.seed = ctx.seed;
  d.protocol_hash = p.hash();
  meta["total_counts"] = d.total();

  std::ostringstream os;
  write_counts_csv(os, d, ctx.stamp);
  write_file(ctx, "counts.csv", os.str());
  write_file(ctx, "counts_meta.json", dump(meta));
  ctx.log << fmt::format("simulated {} processes, {} events\n", d.size(), d.total());
  return kOk;
}

int cmd_reconstruct(Context& ctx) {
  const Json& cfg = ctx.config;
  TomographyProtocol p = load_protocol(ctx);
  CountData d = load_counts(ctx);
  try {
    check_compatible(p, d);
  } catch (const InvalidArgumentError& e) {
    throw ParseError("/counts_csv", std::string("protocol/counts mismatch: ") + e.what());
  }
  p.require_complete();
  const std::string which = get_string(cfg, "estimator", "both");
  if (which != "lsm" && which != "mlm" && which != "both") {
    throw ParseError("/estimator", "expected lsm, mlm or both");
  }
  SolverOptions opts;
  if (cfg.contains("solver")) {
    opts.tol = get_number(cfg["solver"], "tol", opts.tol);
    opts.max_iterations = get_int(cfg["solver"], "max_iterations", opts.max_iterations);
  }
  std::optional<StateVector> truth;
  if (cfg.contains("truth")) truth = truth_state(cfg["truth"]);

  Json res = stamp_json(ctx);
  res["protocol_hash"] = p.hash();
  res["total_counts"] = d.total();
  bool all_converged = true;
  ctx.log << "estimator,c1,c2,c3,fidelity,info_fidelity\n";
  auto record = [&](const char* name, const ReconstructionResult& r) {
    Json j = to_json(r);
    std::string fid = "", fh = "";
    if (truth && r.status != SolverStatus::DegenerateData) {
      const double f = fidelity_pure(*truth, r.normalized);
      InformationBundle b = make_bundle(p, d, r.estimate);
      const double f_h = info_fidelity(b, scale_to_events(p, *truth, d.total()));
      j["fidelity"] = f;
      j["info_fidelity"] = f_h;
      fid = format_double(f);
      fh = format_double(f_h);
    }
    all_converged = all_converged && r.converged;
    res[name] = j;
    ctx.log << fmt::format("{},{},{},{},{},{}\n", name, complex_text(r.normalized[0]), complex_text(r.normalized[1]),
                           complex_text(r.normalized[2]), fid, fh);
  };
  if (which != "mlm") record("lsm", lsm_reconstruct(p, d, std::nullopt, opts));
  if (which != "lsm") record("mlm", mlm_reconstruct(p, d, std::nullopt, opts));
  if (truth) res["truth"] = to_json(*truth);
  write_file(ctx, "reconstruction.json", dump(res));
  if (!all_converged) throw NonConvergence("reconstruction did not converge (see reconstruction.json)");
  return kOk;
}

int cmd_separate(Context& ctx) {
  const Json& cfg = ctx.config;
  TomographyProtocol p = load_protocol(ctx);
  CountData d = load_counts(ctx);
  try {
    check_compatible(p, d);
  } catch (const InvalidArgumentError& e) {
    throw ParseError("/counts_csv", std::string("protocol/counts mismatch: ") + e.what());
  }
  const int n = get_int(cfg, "n_components", 2);
  if (n < 1 || n > kDim) throw ParseError("/n_components", "must lie in [1, 3]");
  MixtureOptions opts;
  if (cfg.contains("solver")) {
    opts.tol = get_number(cfg["solver"], "tol", opts.tol);
    opts.max_iterations = get_int(cfg["solver"], "max_iterations", opts.max_iterations);
  }
  MixtureResult m = separate_mixture(p, d, n, derive_seed(ctx.seed, 3), opts);
  Json res = stamp_json(ctx);
  res["protocol_hash"] = p.hash();
  Json body = to_json(m);
  for (auto it = body.begin(); it != body.end(); ++it) res[it.key()] = it.value();

  if (cfg.contains("truth")) {
    const Json& t = cfg["truth"];
    DensityMatrix rho0 = t.contains("density")
                             ? DensityMatrix::from_unnormalized(matrix_from_json(t["density"], "/truth/density"))
                             : DensityMatrix::from_unnormalized(mixture_intensity_matrix(
                                   mixture_from_spec(need(t, "mixture"), p, 1.0, "/truth/mixture")));
    res["truth_density"] = to_json(rho0);
    res["fidelity"] = fidelity_mixed(rho0, m.rho);
    Eigen::SelfAdjointEigenSolver<Mat3> es(rho0.matrix());
    Json pcs = Json::array();
    for (std::size_t i = 0; i < m.principal_components.size(); ++i) {
      const int col = kDim - 1 - static_cast<int>(i);
      StateVector v = normalize(StateVector(Vec3(es.eigenvectors().col(col))));
      pcs.push_back(Json{{"weight", std::max(0.0, es.eigenvalues()[col])},
                         {"vector", to_json(v)},
                         {"fidelity", fidelity_pure(v, m.principal_components[i])}});
    }
    res["truth_principal_components"] = pcs;
  }
  write_file(ctx, "separation.json", dump(res));
  for (std::size_t i = 0; i < m.principal_components.size(); ++i) {
    const auto& v = m.principal_components[i];
    ctx.log << fmt::format("component {}: weight {:.4f}  ({}, {}, {})\n", i + 1, m.principal_weights[i],
                           complex_text(v[0]), complex_text(v[1]), complex_text(v[2]));
  }
  if (!m.converged) throw NonConvergence("mixture separation did not converge");
  return kOk;
}

int cmd_mc(Context& ctx) {
  const Json& cfg = ctx.config;
  TomographyProtocol p = load_protocol(ctx);
  StudyConfig sc;
  sc.seed = ctx.seed;
  sc.n_events = get_number(cfg, "n_events", sc.n_events);
  sc.replicas = get_int(cfg, "replicas", sc.replicas);
  sc.jitter_deg = get_number(cfg, "jitter_deg", 0.0);
  sc.noiseless = get_bool(cfg, "noiseless", false);
  sc.threads = static_cast<unsigned>(std::max(0, get_int(cfg, "threads", 0)));
  sc.band_samples = get_int(cfg, "band_samples", sc.band_samples);
  const std::string est = get_string(cfg, "estimator", "mlm");
  if (est != "lsm" && est != "mlm") throw ParseError("/estimator", "expected lsm or mlm");
  sc.estimator = est == "lsm" ? Estimator::Lsm : Estimator::Mlm;
  if (cfg.contains("f_grid")) {
    sc.f_grid.clear();
    for (const auto& f : cfg["f_grid"]) {
      if (!f.is_number()) throw ParseError("/f_grid", "expected numbers");
      sc.f_grid.push_back(f.get<double>());
    }
  }
  if (cfg.contains("mixture")) {
    sc.mode = StudyMode::Mixture;
    sc.mixture = mixture_from_spec(cfg["mixture"], p, 1.0, "/mixture");
    sc.n_components = get_int(cfg, "n_components", 2);
    sc.mixture_inits = get_int(cfg, "mixture_inits", 1);
  } else {
    sc.truth = state_from_spec(need(cfg, "state"), "/state");
  }
  if (sc.replicas < 1) throw ParseError("/replicas", "must be >= 1");

  StudyResult r = monte_carlo_study(p, sc);

  std::ostringstream rows, summary, hist;
  write_study_csv(rows, r, ctx.stamp);
  write_summary_csv(summary, r, ctx.stamp);
  write_file(ctx, "study.csv", rows.str());
  write_file(ctx, "summary.csv", summary.str());

  // Histogram of the largest-f column: chi-square statistic (pure) or fidelity (mixture).
  const double fmax = *std::max_element(sc.f_grid.begin(), sc.f_grid.end());
  std::vector<double> values;
  for (const auto& row : r.rows) {
    if (row.f != fmax) continue;
    const double v = sc.mode == StudyMode::Pure ? row.chi2_stat : row.fidelity;
    if (std::isfinite(v)) values.push_back(v);
  }
  const Json h = cfg.contains("histogram") ? cfg["histogram"] : Json::object();
  double lo = 0.0, hi = 20.0;
  if (sc.mode == StudyMode::Mixture) {
    lo = values.empty() ? 0.0 : *std::min_element(values.begin(), values.end());
    hi = 1.0;
    if (!(hi > lo)) lo = hi - 1e-6;
  }
  lo = get_number(h, "lo", lo);
  hi = get_number(h, "hi", hi);
  write_histogram_csv(hist, histogram(values, get_int(h, "bins", 20), lo, hi), ctx.stamp);
  write_file(ctx, "histogram.csv", hist.str());

  Json js = stamp_json(ctx);
  js["protocol_hash"] = p.hash();
  js["mode"] = sc.mode == StudyMode::Pure ? "pure" : "mixture";
  Json sums = Json::array();
  int failures = 0;
  for (const auto& s : r.summary) {
    failures += s.failures;
    auto num = [](double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); };
    sums.push_back(Json{{"f", s.f},
                        {"expected_events", s.expected_events},
                        {"failures", s.failures},
                        {"mean_fidelity", num(s.mean_fidelity)},
                        {"sd_fidelity", num(s.sd_fidelity)},
                        {"mean_info_fidelity", num(s.mean_info_fidelity)},
                        {"mean_chi2", num(s.mean_chi2)},
                        {"fh_band", Json::array({num(s.fh.lower), num(s.fh.center), num(s.fh.upper)})},
                        {"fidelity_band",
                         Json::array({num(s.fidelity.lower), num(s.fidelity.center), num(s.fidelity.upper)})}});
  }
  js["summary"] = sums;
  if (r.beta_fit) js["beta_fit"] = Json{{"a", r.beta_fit->a}, {"b", r.beta_fit->b}, {"ks_p", r.beta_fit->ks_p}};
  if (sc.mode == StudyMode::Pure && values.size() >= 2) {
    auto ks = ks_test(values, [](double x) { return chi2_cdf(x, kPhysicalParams); });
    js["chi2_ks"] = Json{{"statistic", ks.statistic}, {"p_value", ks.p_value}};
  }
  write_file(ctx, "study.json", dump(js));

  for (const auto& s : r.summary) {
    ctx.log << fmt::format("f={:<5g} events={:<8g} mean F={:.6f} (sd {:.2g})  failures={}\n", s.f,
                           s.expected_events, s.mean_fidelity, s.sd_fidelity, s.failures);
  }
  if (failures == static_cast<int>(r.rows.size())) throw NonConvergence("every replica failed");
  return kOk;
}

int cmd_poincare(Context& ctx) {
  const Json& cfg = ctx.config;
  Json res = stamp_json(ctx);
  if (cfg.contains("poincare_deg")) {
    StateVector c = state_from_spec(Json{{"poincare_deg", cfg["poincare_deg"]}}, "");
    auto a = cfg["poincare_deg"];
    PoincarePair pp(deg_to_rad(a[0].get<double>()), deg_to_rad(a[1].get<double>()), deg_to_rad(a[2].get<double>()),
                    deg_to_rad(a[3].get<double>()));
    res["state"] = to_json(c);
    res["beta_deg"] = rad_to_deg(beta_angle(pp));
    res["polarization_degree"] = polarization_degree(c);
    res["polarization_degree_from_beta"] = polarization_degree_from_beta(beta_angle(pp));
    ctx.log << fmt::format("state ({}, {}, {})  P = {:.6f}\n", complex_text(c[0]), complex_text(c[1]),
                           complex_text(c[2]), polarization_degree(c));
  } else {
    StateVector c = state_from_spec(need(cfg, "state"), "/state");
    PoincarePair pp = to_poincare(c);
    res["state"] = to_json(c);
    res["poincare_deg"] = Json::array({rad_to_deg(pp.theta_s()), rad_to_deg(pp.phi_s()), rad_to_deg(pp.theta_i()),
                                       rad_to_deg(pp.phi_i())});
    res["beta_deg"] = rad_to_deg(beta_angle(pp));
    res["polarization_degree"] = polarization_degree(c);
    res["round_trip_fidelity"] = fidelity_pure(from_poincare(pp), c);
    ctx.log << fmt::format("points (theta, phi) = ({:.4f}, {:.4f}) and ({:.4f}, {:.4f}) deg, P = {:.6f}\n",
                           rad_to_deg(pp.theta_s()), rad_to_deg(pp.phi_s()), rad_to_deg(pp.theta_i()),
                           rad_to_deg(pp.phi_i()), polarization_degree(c));
  }
  write_file(ctx, "poincare.json", dump(res));
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Qutrit polarization tomography: simulation, reconstruction and statistics"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);

  std::string config_path, out_dir = ".";
  std::optional<std::uint64_t> seed;
  auto add_globals = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--seed", seed, "RNG seed (overrides the config's \"seed\")");
    sub->add_option("--out", out_dir, "Output directory (created if missing)");
  };
  using Command = int (*)(Context&);
  const std::vector<std::tuple<const char*, const char*, Command>> commands{
      {"protocol", "Emit the instrumental matrix and design diagnostics", cmd_protocol},
      {"simulate", "Simulate coincidence counts for a state or mixture", cmd_simulate},
      {"reconstruct", "Reconstruct a pure state (LSM and/or MLM)", cmd_reconstruct},
      {"separate", "Separate a mixed state into pure components", cmd_separate},
      {"mc", "Monte Carlo study of reconstruction accuracy", cmd_mc},
      {"poincare", "Convert between amplitudes and Poincare-sphere points", cmd_poincare},
  };
  std::vector<std::pair<CLI::App*, Command>> subs;
  for (const auto& [name, help, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_globals(sub);
    subs.emplace_back(sub, fn);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    Context ctx{Json::object(), fs::path(config_path).parent_path(), fs::path(out_dir), 1, OutputStamp{}, out};
    ctx.config = read_json(config_path);
    if (!ctx.config.is_object()) throw ParseError(config_path, "configuration must be a JSON object");
    if (seed) ctx.config["seed"] = *seed;
    if (ctx.config.contains("seed")) {
      if (!ctx.config["seed"].is_number_unsigned()) throw ParseError("/seed", "expected a non-negative integer");
      ctx.seed = ctx.config["seed"].get<std::uint64_t>();
    }
    ctx.stamp.config_hash = fnv1a_hex(ctx.config.dump());
    for (const auto& [sub, fn] : subs) {
      if (sub->parsed()) return fn(ctx);
    }
    return kConfigError;
  } catch (const ParseError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const Json::exception& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const InvalidArgumentError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IncompleteProtocolError& e) {
    err << "incomplete protocol: " << e.what() << "\n";
    return kIncompleteProtocol;
  } catch (const NonConvergence& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const DegenerateStateError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const fs::filesystem_error& e) {
    err << "i/o error: " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace qtomo::cli
