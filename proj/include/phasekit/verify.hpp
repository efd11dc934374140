#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "phasekit/grid.hpp"

namespace phasekit {

struct SuiteConfig {
  int grid_n = 256;
  double extent = 16.0;
  std::uint64_t seed = 20240611;
};

struct CheckEntry {
  std::string id;
  std::string description;
  std::string anchor;  // identity or closed form being checked
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string diagnostic;
};

struct SuiteReport {
  std::string suite;
  SuiteConfig config;
  std::vector<CheckEntry> entries;  // sorted by id
  std::vector<std::string> notes;   // audits and measured constants, not pass/fail
  bool overall = false;
};

const std::vector<std::string>& suite_names();  // transforms, heat, wave, hermite, metaplectic, all
SuiteReport run_suite(const std::string& name, const SuiteConfig& config = {});
nlohmann::json report_to_json(const SuiteReport& report);

// Seeded sum of three modulated Gaussians with random centers, widths and amplitudes.
SampledField random_smooth_field(const Grid& g, std::uint64_t seed);

}  // namespace phasekit
