#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace unruh {

/// Outcome of one sampled property check. `pass` is worst_violation <= tolerance
/// for assertable checks; report-only checks always pass and carry their data
/// in `note`.
struct PropertyReport {
  std::string property;
  int samples = 0;
  double worst_violation = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  std::uint64_t seed = 0;
  bool assertable = true;
  std::string note;

  void finalize() { pass = !assertable || worst_violation <= tolerance; }
};

struct PropertySuite {
  std::string name;
  std::vector<PropertyReport> checks;

  bool pass() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }
  const PropertyReport* find(const std::string& property) const {
    for (const auto& c : checks) {
      if (c.property == property) return &c;
    }
    return nullptr;
  }
};

}  // namespace unruh
