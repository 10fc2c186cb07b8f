#pragma once

// Acceleration sweeps: one row per grid point with the truncation certificate
// and the requested measures of the renormalized channel output.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "unruh/channel.hpp"
#include "unruh/fock.hpp"

namespace unruh {

inline constexpr const char* kLibraryVersion = "1.0.0";

struct SweepConfig {
  std::string state = "bell-phi-plus";  // preset name or path to a JSON matrix file
  std::vector<int> accelerated;         // empty: last party
  double r_min = 0.0;
  double r_max = 2.0;
  int r_count = 6;
  std::vector<double> omega_grid;       // overrides the r grid when nonempty
  std::vector<std::string> measures = {"negativity", "l1_coherence"};
  std::vector<int> bipartition;         // negativity cut; empty: accelerated parties
  double epsilon = kDefaultEpsilon;
  std::uint64_t seed = 0;
  std::string output;                   // empty: stdout
  std::string format = "csv";           // csv | json

  void validate() const;
  std::vector<double> r_grid() const;
};

const std::vector<std::string>& state_presets();

/// Preset by name, otherwise a JSON file {"dims": [...], "real": [[...]], "imag": [[...]]}.
DensityMatrix load_state(const std::string& name_or_path);

SweepConfig sweep_config_from_json(const nlohmann::json& j, SweepConfig base = {});
nlohmann::json to_json(const SweepConfig& cfg);

struct SweepRow {
  double r = 0.0;
  std::optional<double> omega;
  int cutoff = 0;          // largest K over accelerated parties
  double tail = 0.0;       // certified trace-deficit bound
  double trace_deficit = 0.0;
  std::vector<double> values;  // one per cfg.measures
};

std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

void write_csv(std::ostream& os, const SweepConfig& cfg, const std::vector<SweepRow>& rows);
void write_json(std::ostream& os, const SweepConfig& cfg, const std::vector<SweepRow>& rows);

/// Formats with 12 significant digits, as used in every CSV cell.
std::string format_number(double v);

}  // namespace unruh
