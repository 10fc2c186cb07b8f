// unruh: acceleration sweeps, verification suites, oracle comparisons and the
// prior-map counterexample table.
//
// Exit codes: 0 ok, 1 usage error, 2 property failure, 3 budget exceeded.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "unruh/channel.hpp"
#include "unruh/counterexamples.hpp"
#include "unruh/dilation.hpp"
#include "unruh/measures.hpp"
#include "unruh/random_states.hpp"
#include "unruh/sweep.hpp"
#include "unruh/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kPropertyFailure = 2, kBudget = 3 };

// Explicit --output wins; otherwise $UNRUH_OUTPUT_DIR/<fallback>; otherwise stdout.
std::string resolve_output(const std::string& explicit_path, const std::string& fallback) {
  if (!explicit_path.empty()) return explicit_path;
  if (const char* dir = std::getenv("UNRUH_OUTPUT_DIR"); dir && *dir) return (fs::path(dir) / fallback).string();
  return {};
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write output file: " + path);
  out << text;
  if (!out) throw std::invalid_argument("write failed: " + path);
}

std::vector<int> default_accelerated(const std::vector<int>& given, int n) {
  return given.empty() ? std::vector<int>{n - 1} : given;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unruh channel on truncated Fock spaces"};
  app.require_subcommand(1);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Measures of a state versus acceleration");
  std::string config_path;
  unruh::SweepConfig cli_cfg;
  sweep->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  sweep->add_option("--state", cli_cfg.state, "Preset or JSON matrix file");
  sweep->add_option("--accelerated", cli_cfg.accelerated, "Accelerated party indices")->delimiter(',');
  sweep->add_option("--r-min", cli_cfg.r_min);
  sweep->add_option("--r-max", cli_cfg.r_max);
  sweep->add_option("--r-count", cli_cfg.r_count);
  sweep->add_option("--omega-grid", cli_cfg.omega_grid, "Omega values (replace the r grid)")->delimiter(',');
  sweep->add_option("--measures", cli_cfg.measures)->delimiter(',');
  sweep->add_option("--bipartition", cli_cfg.bipartition, "Negativity cut")->delimiter(',');
  sweep->add_option("--epsilon", cli_cfg.epsilon);
  sweep->add_option("--seed", cli_cfg.seed);
  sweep->add_option("--output", cli_cfg.output);
  sweep->add_option("--format", cli_cfg.format)->check(CLI::IsMember({"csv", "json"}));

  // verify
  auto* verify = app.add_subcommand("verify", "Run every property suite");
  unruh::VerifyConfig vcfg;
  std::string verify_output;
  std::size_t fault_index = 0;
  verify->add_option("--dims", vcfg.dims)->delimiter(',');
  verify->add_option("--accelerated", vcfg.accelerated)->delimiter(',');
  verify->add_option("--r", vcfg.r);
  verify->add_option("--epsilon", vcfg.epsilon);
  verify->add_option("--samples", vcfg.samples)->check(CLI::PositiveNumber);
  verify->add_option("--seed", vcfg.seed);
  verify->add_option("--output", verify_output, "JSON report path");
  auto* fault_opt = verify->add_option("--inject-fault", fault_index, "Drop this Kraus operator (test hook)");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Kraus channel versus Stinespring dilation");
  std::vector<int> o_dims = {2, 2};
  std::vector<int> o_acc;
  std::vector<double> o_r = {0.5};
  int o_samples = 20;
  std::uint64_t o_seed = 11;
  double o_epsilon = unruh::kDefaultEpsilon;
  oracle->add_option("--dims", o_dims)->delimiter(',');
  oracle->add_option("--accelerated", o_acc)->delimiter(',');
  oracle->add_option("--r", o_r, "One r per accelerated party")->delimiter(',');
  oracle->add_option("--samples", o_samples)->check(CLI::PositiveNumber);
  oracle->add_option("--seed", o_seed);
  oracle->add_option("--epsilon", o_epsilon);

  // ahn
  auto* ahn = app.add_subcommand("ahn", "Trace of the prior Kraus map on |Phi+>");
  std::vector<double> a_grid = {0.0, 0.5, 0.881373587019543, 1.5, 2.0};
  std::string a_output;
  ahn->add_option("--r-grid", a_grid)->delimiter(',');
  ahn->add_option("--output", a_output);

  auto* info = app.add_subcommand("info", "Presets, measures and limits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*sweep) {
      unruh::SweepConfig cfg;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        json j;
        try {
          in >> j;
        } catch (const json::exception& e) {
          throw std::invalid_argument("config " + config_path + ": " + e.what());
        }
        cfg = unruh::sweep_config_from_json(j);
      }
      // Flags override file values.
      auto given = [&](const char* name) { return sweep->count(name) > 0; };
      if (given("--state")) cfg.state = cli_cfg.state;
      if (given("--accelerated")) cfg.accelerated = cli_cfg.accelerated;
      if (given("--r-min")) cfg.r_min = cli_cfg.r_min;
      if (given("--r-max")) cfg.r_max = cli_cfg.r_max;
      if (given("--r-count")) cfg.r_count = cli_cfg.r_count;
      if (given("--omega-grid")) cfg.omega_grid = cli_cfg.omega_grid;
      if (given("--measures")) cfg.measures = cli_cfg.measures;
      if (given("--bipartition")) cfg.bipartition = cli_cfg.bipartition;
      if (given("--epsilon")) cfg.epsilon = cli_cfg.epsilon;
      if (given("--seed")) cfg.seed = cli_cfg.seed;
      if (given("--output")) cfg.output = cli_cfg.output;
      if (given("--format")) cfg.format = cli_cfg.format;

      const auto rows = unruh::run_sweep(cfg);
      std::ostringstream os;
      if (cfg.format == "json") {
        unruh::write_json(os, cfg, rows);
      } else {
        unruh::write_csv(os, cfg, rows);
      }
      emit(resolve_output(cfg.output, "sweep." + cfg.format), os.str());
      return kOk;
    }

    if (*verify) {
      if (*fault_opt) vcfg.inject_fault = fault_index;
      const auto suites = unruh::run_verify(vcfg);
      for (const auto& s : suites) {
        for (const auto& c : s.checks) {
          std::printf("%-4s %-12s %-52s worst=%.3e tol=%.1e%s%s\n", !c.assertable ? "info" : c.pass ? "ok" : "FAIL",
                      s.name.c_str(), c.property.c_str(), c.worst_violation, c.tolerance, c.note.empty() ? "" : "  ",
                      c.note.c_str());
        }
      }
      const bool ok = unruh::all_pass(suites);
      const json doc{{"pass", ok}, {"suites", unruh::to_json(suites)}};
      const std::string path = resolve_output(verify_output, "verify.json");
      if (!path.empty()) emit(path, doc.dump(2) + "\n");
      return ok ? kOk : kPropertyFailure;
    }

    if (*oracle) {
      const auto acc = default_accelerated(o_acc, static_cast<int>(o_dims.size()));
      if (o_r.size() == 1 && acc.size() > 1) o_r.assign(acc.size(), o_r.front());
      const auto spec = unruh::ChannelSpec::certified(o_dims, acc, o_r, o_epsilon);
      unruh::Rng rng(o_seed);
      double worst = 0.0;
      for (int s = 0; s < o_samples; ++s) {
        worst = std::max(worst, unruh::oracle_compare(unruh::random_state(spec.input_signature(), rng), spec));
      }
      std::printf("oracle: %d samples, dilation cutoff %d, max trace distance %.3e (tol 1e-8)\n", o_samples,
                  unruh::dilation_cutoff(spec), worst);
      return worst < 1e-8 ? kOk : kPropertyFailure;
    }

    if (*ahn) {
      const auto rows = unruh::side_by_side_report(a_grid);
      std::ostringstream os;
      os << "state,r,ahn_cutoff,ahn_trace,formula,deviation,unruh_K,unruh_deficit,unruh_tail,verdict\n";
      for (const auto& r : rows) {
        os << r.state << ',' << unruh::format_number(r.r) << ',' << r.ahn_cutoff << ','
           << unruh::format_number(r.ahn_trace) << ',' << (std::isnan(r.formula) ? "" : unruh::format_number(r.formula))
           << ',' << unruh::format_number(r.deviation) << ',' << r.unruh_cutoff << ','
           << unruh::format_number(r.unruh_deficit) << ',' << unruh::format_number(r.unruh_tail) << ',' << r.verdict
           << '\n';
      }
      emit(resolve_output(a_output, "ahn.csv"), os.str());
      return kOk;
    }

    if (*info) {
      std::cout << "state presets:";
      for (const auto& p : unruh::state_presets()) std::cout << ' ' << p;
      std::cout << "\nmeasures:";
      for (const auto& m : unruh::measure_names()) std::cout << ' ' << m;
      const unruh::KrausBudget b;
      std::cout << "\nmax r: " << unruh::kMaxAcceleration << "\nepsilon range: [1e-14, 1e-6], default "
                << unruh::kDefaultEpsilon << "\nmax Kraus operators: " << b.max_operators
                << "\nmax dense Kraus entries: " << b.max_elements << "\nmax Choi side: 4096"
                << "\nprior-map cutoff budget: " << unruh::kAhnCutoffBudget << "\nversion: " << unruh::kLibraryVersion
                << '\n';
      return kOk;
    }
  } catch (const unruh::BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
