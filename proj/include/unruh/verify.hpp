#pragma once

// The full verification bundle behind `unruh verify`.

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "unruh/report.hpp"

namespace unruh {

struct VerifyConfig {
  std::vector<int> dims = {2, 2};
  std::vector<int> accelerated;  // empty: last party
  double r = 0.5;
  double epsilon = 1e-10;
  int samples = 50;
  std::uint64_t seed = 7;
  /// Drop this Kraus operator before the CPTP suite (fault-injection hook).
  std::optional<std::size_t> inject_fault;
};

std::vector<PropertySuite> run_verify(const VerifyConfig& cfg);

/// True when every assertable check passed.
bool all_pass(const std::vector<PropertySuite>& suites);

nlohmann::json to_json(const PropertyReport& rep);
nlohmann::json to_json(const std::vector<PropertySuite>& suites);

}  // namespace unruh
