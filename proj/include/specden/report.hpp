#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace specden {

inline constexpr const char* kVersion = "specden 0.1.0";

// Seeded, parameterized record of one experiment. Reports regenerated from
// the same config and seed are byte-identical except for the wall-clock and
// version fields.
struct ExperimentReport {
  std::string experiment;
  nlohmann::json parameters = nlohmann::json::object();
  uint64_t seed = 0;
  nlohmann::json measured = nlohmann::json::object();
  nlohmann::json references = nlohmann::json::object();
  double wall_clock_seconds = 0.0;
  std::string version = kVersion;

  nlohmann::json to_json() const;
  static ExperimentReport from_json(const nlohmann::json& j);
};

void write_report(const std::string& path, const ExperimentReport& report);
ExperimentReport read_report(const std::string& path);

}  // namespace specden
