#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

using namespace qtomo;
namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("qtomo_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_config(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
    return dir_ / name;
  }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::run_cli(args, out_, err_);
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

const char* kPulsed40 = R"({"recipe": {"source": "psi3", "plate": {"delta": 0.656, "angle_deg": 40}}})";

}  // namespace

TEST_F(Cli, ProtocolWritesMatrixAndReport) {
  auto cfg = write_config("p.json", R"({"protocol": {"type": "protocol1", "exposure_s": 2}})");
  ASSERT_EQ(run({"protocol", "--config", cfg, "--out", dir_ / "o"}), cli::kOk) << err_.str();
  std::ifstream x(dir_ / "o" / "protocol_x.csv");
  TomographyProtocol back = read_x_csv(x);
  EXPECT_EQ((back.X() - build_protocol1(2.0).X()).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(back.exposures(), build_protocol1(2.0).exposures());
  Json rep = Json::parse(slurp(dir_ / "o" / "protocol_report.json"));
  EXPECT_TRUE(rep["complete"].get<bool>());
  EXPECT_NEAR(rep["design_metric"].get<double>(), design_metric(build_protocol1(2.0)), 1e-9);
  EXPECT_EQ(rep["config_hash"].get<std::string>().size(), 16u);
}

TEST_F(Cli, IncompleteProtocolExitCode) {
  auto cfg = write_config(
      "p.json", R"({"protocol": {"type": "rows", "rows": [{"re": [1, 0, 0], "im": [0, 0, 0]}]}})");
  EXPECT_EQ(run({"protocol", "--config", cfg, "--out", dir_}), cli::kIncompleteProtocol);
  EXPECT_NE(err_.str().find("incomplete"), std::string::npos);
}

TEST_F(Cli, ConfigErrorsExitWithTwo) {
  auto missing = write_config("a.json", R"({"protocol": {"type": "protocol1"}})");
  EXPECT_EQ(run({"simulate", "--config", missing, "--out", dir_}), cli::kConfigError);
  auto bad = write_config("b.json", R"({"protocol": {"type": "protocol1"}, "state": {"recipe": {"source": "x"}}})");
  EXPECT_EQ(run({"simulate", "--config", bad, "--out", dir_}), cli::kConfigError);
  EXPECT_NE(err_.str().find("/state/recipe/source"), std::string::npos) << err_.str();
  auto syntax = write_config("c.json", "{ not json");
  EXPECT_EQ(run({"protocol", "--config", syntax}), cli::kConfigError);
  EXPECT_EQ(run({"protocol", "--config", (dir_ / "nope.json").string()}), cli::kConfigError);
  EXPECT_EQ(run({"frobnicate"}), cli::kConfigError);
  EXPECT_EQ(run({}), cli::kConfigError);
  EXPECT_EQ(run({"--help"}), cli::kOk);
}

TEST_F(Cli, SimulateReconstructPipelineIsReproducible) {
  auto sim = write_config("sim.json", std::string(R"({"protocol": {"type": "protocol1"}, "n_events": 20000, "state": )") +
                                          kPulsed40 + "}");
  ASSERT_EQ(run({"simulate", "--config", sim, "--out", dir_ / "a", "--seed", "9"}), cli::kOk) << err_.str();
  ASSERT_EQ(run({"simulate", "--config", sim, "--out", dir_ / "b", "--seed", "9"}), cli::kOk);
  ASSERT_EQ(run({"simulate", "--config", sim, "--out", dir_ / "c", "--seed", "10"}), cli::kOk);
  EXPECT_EQ(slurp(dir_ / "a" / "counts.csv"), slurp(dir_ / "b" / "counts.csv"));
  EXPECT_NE(slurp(dir_ / "a" / "counts.csv"), slurp(dir_ / "c" / "counts.csv"));
  EXPECT_EQ(slurp(dir_ / "a" / "counts.csv").rfind("# qtomo ", 0), 0u);

  // counts_csv is relative to the config file's directory.
  auto rec = write_config("rec.json", std::string(R"({"protocol": {"type": "protocol1"}, "counts_csv": "a/counts.csv", "truth": )") +
                                          kPulsed40 + "}");
  ASSERT_EQ(run({"reconstruct", "--config", rec, "--out", dir_ / "r"}), cli::kOk) << err_.str();
  EXPECT_NE(out_.str().find("mlm,"), std::string::npos);
  Json r = Json::parse(slurp(dir_ / "r" / "reconstruction.json"));
  EXPECT_TRUE(r["mlm"]["converged"].get<bool>());
  EXPECT_GT(r["mlm"]["fidelity"].get<double>(), 0.995);
  EXPECT_GT(r["lsm"]["fidelity"].get<double>(), 0.995);
  EXPECT_GT(r["mlm"]["info_fidelity"].get<double>(), 0.995);

  const std::string first = slurp(dir_ / "r" / "reconstruction.json");
  ASSERT_EQ(run({"reconstruct", "--config", rec, "--out", dir_ / "r"}), cli::kOk);
  EXPECT_EQ(first, slurp(dir_ / "r" / "reconstruction.json"));
}

TEST_F(Cli, ReconstructAcceptsProtocolCsv) {
  auto p = write_config("p.json", R"({"protocol": {"type": "protocol2"}})");
  ASSERT_EQ(run({"protocol", "--config", p, "--out", dir_}), cli::kOk);
  auto sim = write_config("sim.json", std::string(R"({"protocol_csv": "protocol_x.csv", "state": )") + kPulsed40 + "}");
  ASSERT_EQ(run({"simulate", "--config", sim, "--out", dir_}), cli::kOk) << err_.str();
  auto rec = write_config("rec.json", R"({"protocol_csv": "protocol_x.csv", "counts_csv": "counts.csv", "estimator": "mlm"})");
  ASSERT_EQ(run({"reconstruct", "--config", rec, "--out", dir_}), cli::kOk) << err_.str();
  Json r = Json::parse(slurp(dir_ / "reconstruction.json"));
  EXPECT_FALSE(r.contains("lsm"));
  EXPECT_GT(fidelity_pure(state_from_json(r["mlm"]["normalized"]), pulsed_state(40.0)), 0.99);
}

TEST_F(Cli, MismatchedCountsAreAConfigError) {
  auto sim = write_config("sim.json", std::string(R"({"protocol": {"type": "protocol1"}, "state": )") + kPulsed40 + "}");
  ASSERT_EQ(run({"simulate", "--config", sim, "--out", dir_}), cli::kOk);
  auto rec = write_config("rec.json", R"({"protocol": {"type": "protocol2"}, "counts_csv": "counts.csv"})");
  EXPECT_EQ(run({"reconstruct", "--config", rec, "--out", dir_}), cli::kConfigError);
}

TEST_F(Cli, IterationCapIsANumericalFailure) {
  auto sim = write_config("sim.json", std::string(R"({"protocol": {"type": "protocol2"}, "state": )") + kPulsed40 + "}");
  ASSERT_EQ(run({"simulate", "--config", sim, "--out", dir_}), cli::kOk);
  auto rec = write_config(
      "rec.json",
      R"({"protocol": {"type": "protocol2"}, "counts_csv": "counts.csv", "estimator": "mlm", "solver": {"tol": 0, "max_iterations": 2}})");
  EXPECT_EQ(run({"reconstruct", "--config", rec, "--out", dir_}), cli::kNumericalFailure);
  EXPECT_TRUE(fs::exists(dir_ / "reconstruction.json"));
}

TEST_F(Cli, SeparateReferenceMixture) {
  auto sim = write_config("sim.json", R"({"protocol": {"type": "protocol1"}, "mixture": "reference", "n_events": 20000})");
  ASSERT_EQ(run({"simulate", "--config", sim, "--out", dir_}), cli::kOk) << err_.str();
  Json meta = Json::parse(slurp(dir_ / "counts_meta.json"));
  EXPECT_LT(oracle::max_abs(matrix_from_json(meta["truth_density"]) - reference_mixture_density().matrix()), 1e-12);
  auto sep = write_config("sep.json", R"({"protocol": {"type": "protocol1"}, "counts_csv": "counts.csv", "truth": {"mixture": "reference"}})");
  ASSERT_EQ(run({"separate", "--config", sep, "--out", dir_}), cli::kOk) << err_.str();
  Json s = Json::parse(slurp(dir_ / "separation.json"));
  EXPECT_GT(s["fidelity"].get<double>(), 0.99);
  EXPECT_EQ(s["truth_principal_components"].size(), 3u);
  EXPECT_GT(s["truth_principal_components"][0]["fidelity"].get<double>(), 0.95);
}

TEST_F(Cli, MonteCarloWritesTables) {
  auto mc = write_config("mc.json", std::string(R"({"protocol": {"type": "protocol1"}, "replicas": 20, "f_grid": [0.5, 1.0], "band_samples": 500, "state": )") +
                                        kPulsed40 + "}");
  ASSERT_EQ(run({"mc", "--config", mc, "--out", dir_, "--seed", "3"}), cli::kOk) << err_.str();
  for (const char* f : {"study.csv", "summary.csv", "study.json", "histogram.csv"}) {
    EXPECT_TRUE(fs::exists(dir_ / f)) << f;
  }
  const std::string rows = slurp(dir_ / "study.csv");
  EXPECT_EQ(std::count(rows.begin(), rows.end(), '\n'), 2 + 1 + 40);  // stamp, header, rows
  Json j = Json::parse(slurp(dir_ / "study.json"));
  EXPECT_EQ(j["summary"].size(), 2u);
  EXPECT_TRUE(j.contains("chi2_ks"));
  EXPECT_EQ(j["seed"].get<std::uint64_t>(), 3u);
}

TEST_F(Cli, PoincareBothDirections) {
  auto a = write_config("a.json", R"({"poincare_deg": [30, 40, 100, 200]})");
  ASSERT_EQ(run({"poincare", "--config", a, "--out", dir_}), cli::kOk) << err_.str();
  Json j = Json::parse(slurp(dir_ / "poincare.json"));
  EXPECT_NEAR(j["polarization_degree"].get<double>(), j["polarization_degree_from_beta"].get<double>(), 1e-12);
  auto b = write_config("b.json", std::string(R"({"state": )") + kPulsed40 + "}");
  ASSERT_EQ(run({"poincare", "--config", b, "--out", dir_}), cli::kOk) << err_.str();
  j = Json::parse(slurp(dir_ / "poincare.json"));
  EXPECT_NEAR(j["round_trip_fidelity"].get<double>(), 1.0, 1e-10);
}
