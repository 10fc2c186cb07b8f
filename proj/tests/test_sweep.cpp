#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "unruh/measures.hpp"
#include "unruh/sweep.hpp"
#include "unruh/verify.hpp"

using namespace unruh;
using nlohmann::json;

namespace {

std::string csv_of(const SweepConfig& cfg) {
  std::ostringstream os;
  write_csv(os, cfg, run_sweep(cfg));
  return os.str();
}

}  // namespace

TEST(Sweep, BellDecay) {
  SweepConfig cfg;
  cfg.measures = {"negativity", "l1_coherence"};
  const auto rows = run_sweep(cfg);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_NEAR(rows[0].values[0], 0.5, 1e-14);
  EXPECT_NEAR(rows[0].values[1], 1.0, 1e-14);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LT(rows[i].values[0], rows[i - 1].values[0]);
    EXPECT_LT(rows[i].values[1], rows[i - 1].values[1]);
    EXPECT_GT(rows[i].cutoff, rows[i - 1].cutoff);
    EXPECT_LE(rows[i].trace_deficit, rows[i].tail + 1e-15);
  }
  EXPECT_GT(rows.back().values[1], 0.0);
  EXPECT_NEAR(rows[2].r, 0.8, 1e-15);
}

TEST(Sweep, SinglePointAtRest) {
  SweepConfig cfg;
  cfg.r_count = 1;
  cfg.r_max = 0.0;
  cfg.state = "ghz3";
  cfg.measures = {"l1_coherence", "von_neumann_entropy"};
  const auto rows = run_sweep(cfg);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].cutoff, 0);
  EXPECT_NEAR(rows[0].values[0], 1.0, 1e-14);
  EXPECT_NEAR(rows[0].values[1], 0.0, 1e-12);
}

TEST(Sweep, OmegaGrid) {
  SweepConfig cfg;
  cfg.omega_grid = {2.0, 0.5, 0.1};
  const auto rows = run_sweep(cfg);
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& row : rows) {
    ASSERT_TRUE(row.omega.has_value());
    EXPECT_NEAR(std::tanh(row.r), std::exp(-M_PI * *row.omega), 1e-14);
  }
  cfg.omega_grid = {0.0};
  EXPECT_THROW(run_sweep(cfg), DivergenceError);
}

TEST(Sweep, CsvIsDeterministicAndWellFormed) {
  SweepConfig cfg;
  cfg.state = "w3";
  cfg.accelerated = {0, 2};
  cfg.r_count = 3;
  cfg.r_max = 0.6;
  cfg.bipartition = {2};
  cfg.seed = 42;
  const std::string a = csv_of(cfg), b = csv_of(cfg);
  EXPECT_EQ(a, b);
  std::istringstream in(a);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "r,omega,K,tail,trace_deficit,negativity,l1_coherence");
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 6) << line;
    EXPECT_EQ(line.find(",,") != std::string::npos, true);  // empty omega cell
  }
  EXPECT_EQ(n, 3);
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(0.1), "0.1");
}

TEST(Sweep, JsonCarriesConfigAndVersions) {
  SweepConfig cfg;
  cfg.r_count = 2;
  cfg.seed = 9;
  std::ostringstream os;
  write_json(os, cfg, run_sweep(cfg));
  const json doc = json::parse(os.str());
  EXPECT_EQ(doc.at("seed"), 9);
  EXPECT_EQ(doc.at("versions").at("unruh"), kLibraryVersion);
  EXPECT_TRUE(doc.at("versions").contains("eigen"));
  EXPECT_EQ(doc.at("rows").size(), 2u);
  EXPECT_TRUE(doc.at("rows")[0].contains("negativity"));
  EXPECT_TRUE(doc.at("rows")[0].at("omega").is_null());
  const SweepConfig back = sweep_config_from_json(doc.at("config"));
  EXPECT_EQ(to_json(back), to_json(cfg));
}

TEST(Sweep, ConfigValidation) {
  auto bad = [](auto mutate) {
    SweepConfig cfg;
    mutate(cfg);
    return cfg;
  };
  EXPECT_THROW(bad([](SweepConfig& c) { c.format = "xml"; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](SweepConfig& c) { c.epsilon = 0.1; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](SweepConfig& c) { c.r_count = 0; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](SweepConfig& c) { c.r_min = 1.0, c.r_max = 0.5; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](SweepConfig& c) { c.r_max = 3.0; }).validate(), BudgetError);
  EXPECT_THROW(bad([](SweepConfig& c) { c.measures = {"magic"}; }).validate(), std::invalid_argument);
  EXPECT_THROW(sweep_config_from_json(json{{"colour", "red"}}), std::invalid_argument);
  EXPECT_THROW(sweep_config_from_json(json{{"r_count", "six"}}), std::invalid_argument);
  EXPECT_THROW(load_state("no-such-preset"), std::invalid_argument);
  const SweepConfig c = sweep_config_from_json(json{{"r_max", 1.0}, {"measures", {"negativity"}}});
  EXPECT_EQ(c.r_max, 1.0);
  EXPECT_EQ(c.measures.size(), 1u);
}

TEST(Sweep, StateFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "unruh_test_state.json";
  {
    std::ofstream f(path);
    f << R"({"dims": [2], "real": [[0.5, 0.5], [0.5, 0.5]]})";
  }
  const DensityMatrix rho = load_state(path.string());
  EXPECT_NEAR(l1_coherence(rho), 1.0, 1e-15);
  SweepConfig cfg;
  cfg.state = path.string();
  cfg.measures = {"l1_coherence"};
  cfg.r_count = 2;
  EXPECT_EQ(run_sweep(cfg).size(), 2u);
  {
    std::ofstream f(path);
    f << R"({"dims": [3], "real": [[1, 0], [0, 0]]})";
  }
  EXPECT_THROW(load_state(path.string()), DimensionError);
  std::filesystem::remove(path);
  for (const auto& name : state_presets()) EXPECT_TRUE(load_state(name).is_valid()) << name;
}

TEST(Verify, BundlePassesAndFaultIsCaught) {
  VerifyConfig cfg;
  cfg.samples = 10;
  const auto suites = run_verify(cfg);
  EXPECT_TRUE(all_pass(suites));
  const json j = to_json(suites);
  EXPECT_EQ(j.size(), suites.size());
  cfg.inject_fault = 0;
  EXPECT_FALSE(all_pass(run_verify(cfg)));
}
