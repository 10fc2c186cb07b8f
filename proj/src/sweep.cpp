#include "unruh/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <Eigen/Core>

#include "unruh/measures.hpp"

namespace unruh {

using nlohmann::json;

const std::vector<std::string>& state_presets() {
  static const std::vector<std::string> names = {"bell-phi-plus", "bell-psi-plus", "ghz3", "w3"};
  return names;
}

DensityMatrix load_state(const std::string& name_or_path) {
  const double h = 1.0 / std::sqrt(2.0);
  if (name_or_path == "bell-phi-plus" || name_or_path == "bell-psi-plus") {
    Vector v = Vector::Zero(4);
    if (name_or_path == "bell-phi-plus") {
      v(0) = v(3) = h;
    } else {
      v(1) = v(2) = h;
    }
    return DensityMatrix::from_pure(DimSignature{2, 2}, v);
  }
  if (name_or_path == "ghz3") {
    Vector v = Vector::Zero(8);
    v(0) = v(7) = h;
    return DensityMatrix::from_pure(DimSignature{2, 2, 2}, v);
  }
  if (name_or_path == "w3") {
    Vector v = Vector::Zero(8);
    v(1) = v(2) = v(4) = 1.0 / std::sqrt(3.0);
    return DensityMatrix::from_pure(DimSignature{2, 2, 2}, v);
  }

  std::ifstream in(name_or_path);
  if (!in) throw std::invalid_argument("unknown state preset or unreadable file: " + name_or_path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("state file " + name_or_path + ": " + e.what());
  }
  if (!j.contains("dims") || !j.contains("real")) {
    throw std::invalid_argument("state file " + name_or_path + " needs \"dims\" and \"real\"");
  }
  const DimSignature sig(j.at("dims").get<std::vector<int>>());
  const auto re = j.at("real").get<std::vector<std::vector<double>>>();
  const auto im = j.contains("imag") ? j.at("imag").get<std::vector<std::vector<double>>>()
                                     : std::vector<std::vector<double>>{};
  const long n = sig.total();
  if (static_cast<long>(re.size()) != n || (!im.empty() && static_cast<long>(im.size()) != n)) {
    throw DimensionError("state file " + name_or_path + ": matrix side does not match dims " + sig.str());
  }
  Matrix m(n, n);
  for (long i = 0; i < n; ++i) {
    if (static_cast<long>(re[i].size()) != n || (!im.empty() && static_cast<long>(im[i].size()) != n)) {
      throw DimensionError("state file " + name_or_path + ": ragged matrix row");
    }
    for (long k = 0; k < n; ++k) m(i, k) = cplx(re[i][k], im.empty() ? 0.0 : im[i][k]);
  }
  DensityMatrix rho(sig, std::move(m));
  if (!rho.is_valid()) throw std::invalid_argument("state file " + name_or_path + ": not a unit-trace PSD matrix");
  return rho;
}

void SweepConfig::validate() const {
  if (format != "csv" && format != "json") throw std::invalid_argument("format must be csv or json");
  if (!(epsilon >= 1e-14 && epsilon <= 1e-6)) throw std::invalid_argument("epsilon must lie in [1e-14, 1e-6]");
  if (omega_grid.empty()) {
    if (r_count < 1) throw std::invalid_argument("r_count must be >= 1");
    if (r_min < 0 || r_max < r_min) throw std::invalid_argument("need 0 <= r_min <= r_max");
    if (r_max > kMaxAcceleration) throw BudgetError("r_max exceeds the supported maximum 2.5");
  }
  for (const auto& m : measures) {
    const auto& known = measure_names();
    if (std::find(known.begin(), known.end(), m) == known.end()) throw std::invalid_argument("unknown measure: " + m);
  }
}

std::vector<double> SweepConfig::r_grid() const {
  std::vector<double> grid;
  if (!omega_grid.empty()) {
    for (double w : omega_grid) grid.push_back(r_from_omega(w));
    return grid;
  }
  if (r_count == 1) return {r_min};
  for (int i = 0; i < r_count; ++i) {
    grid.push_back(i == r_count - 1 ? r_max : r_min + (r_max - r_min) * i / (r_count - 1));
  }
  return grid;
}

SweepConfig sweep_config_from_json(const json& j, SweepConfig cfg) {
  static const std::vector<std::string> fields = {"state",   "accelerated", "r_min", "r_max",  "r_count", "omega_grid",
                                                  "measures", "bipartition", "epsilon", "seed", "output", "format"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(fields.begin(), fields.end(), key) == fields.end()) {
      throw std::invalid_argument("unknown config field: " + key);
    }
  }
  try {
    if (j.contains("state")) cfg.state = j["state"].get<std::string>();
    if (j.contains("accelerated")) cfg.accelerated = j["accelerated"].get<std::vector<int>>();
    if (j.contains("r_min")) cfg.r_min = j["r_min"].get<double>();
    if (j.contains("r_max")) cfg.r_max = j["r_max"].get<double>();
    if (j.contains("r_count")) cfg.r_count = j["r_count"].get<int>();
    if (j.contains("omega_grid")) cfg.omega_grid = j["omega_grid"].get<std::vector<double>>();
    if (j.contains("measures")) cfg.measures = j["measures"].get<std::vector<std::string>>();
    if (j.contains("bipartition")) cfg.bipartition = j["bipartition"].get<std::vector<int>>();
    if (j.contains("epsilon")) cfg.epsilon = j["epsilon"].get<double>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("output")) cfg.output = j["output"].get<std::string>();
    if (j.contains("format")) cfg.format = j["format"].get<std::string>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return cfg;
}

json to_json(const SweepConfig& cfg) {
  return json{{"state", cfg.state},       {"accelerated", cfg.accelerated}, {"r_min", cfg.r_min},
              {"r_max", cfg.r_max},       {"r_count", cfg.r_count},         {"omega_grid", cfg.omega_grid},
              {"measures", cfg.measures}, {"bipartition", cfg.bipartition}, {"epsilon", cfg.epsilon},
              {"seed", cfg.seed},         {"output", cfg.output},           {"format", cfg.format}};
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const DensityMatrix rho = load_state(cfg.state);
  const int n = static_cast<int>(rho.sig().size());
  std::vector<int> accelerated = cfg.accelerated.empty() ? std::vector<int>{n - 1} : cfg.accelerated;
  std::sort(accelerated.begin(), accelerated.end());
  const std::vector<int> cut = cfg.bipartition.empty() ? accelerated : cfg.bipartition;

  std::vector<double> omegas = cfg.omega_grid;
  std::vector<SweepRow> rows;
  const auto grid = cfg.r_grid();
  for (std::size_t g = 0; g < grid.size(); ++g) {
    std::vector<AccelerationParam> accel;
    for (std::size_t m = 0; m < accelerated.size(); ++m) {
      accel.push_back(omegas.empty() ? AccelerationParam::from_r(grid[g]) : AccelerationParam::from_omega(omegas[g]));
    }
    const ChannelSpec spec = ChannelSpec::certified(rho.sig().dims(), accelerated, accel, cfg.epsilon);
    const DensityMatrix out = apply_channel(kraus_multiparty(spec), rho);
    const DensityMatrix normed = out.normalized();

    SweepRow row;
    row.r = grid[g];
    if (!omegas.empty()) row.omega = omegas[g];
    row.cutoff = *std::max_element(spec.cutoffs.begin(), spec.cutoffs.end());
    row.tail = spec.certified_tail();
    row.trace_deficit = 1.0 - out.trace();
    for (const auto& m : cfg.measures) row.values.push_back(evaluate_measure(m, normed, cut));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) v = 0.0;  // drop negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(std::ostream& os, const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
  os << "r,omega,K,tail,trace_deficit";
  for (const auto& m : cfg.measures) os << ',' << m;
  os << '\n';
  for (const auto& row : rows) {
    os << format_number(row.r) << ',' << (row.omega ? format_number(*row.omega) : "") << ',' << row.cutoff << ','
       << format_number(row.tail) << ',' << format_number(row.trace_deficit);
    for (double v : row.values) os << ',' << format_number(v);
    os << '\n';
  }
}

void write_json(std::ostream& os, const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
  json jrows = json::array();
  for (const auto& row : rows) {
    json jr{{"r", row.r},
            {"omega", row.omega ? json(*row.omega) : json(nullptr)},
            {"K", row.cutoff},
            {"tail", row.tail},
            {"trace_deficit", row.trace_deficit}};
    for (std::size_t i = 0; i < cfg.measures.size(); ++i) jr[cfg.measures[i]] = row.values[i];
    jrows.push_back(std::move(jr));
  }
  const json doc{{"config", to_json(cfg)},
                 {"rows", std::move(jrows)},
                 {"versions",
                  {{"unruh", kLibraryVersion},
                   {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                 std::to_string(EIGEN_MINOR_VERSION)}}},
                 {"seed", cfg.seed}};
  os << doc.dump(2) << '\n';
}

}  // namespace unruh
