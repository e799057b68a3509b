#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace resil {

inline constexpr char kVersion[] = "0.1.0";

struct RunOptions {
  std::optional<std::uint64_t> seed_override;
  std::string out_dir = ".";
  unsigned jobs = 1;
};

struct RunReport {
  std::string experiment;
  std::vector<std::string> outputs;
  std::string manifest_path;
  std::vector<std::string> warnings;
};

// Executes the experiment a scenario file names and writes its CSV outputs
// plus a manifest. Bad JSON raises nlohmann::json::parse_error; any invalid
// or unknown field raises std::invalid_argument naming the field; I/O and
// solver failures raise std::runtime_error.
RunReport run_scenario(const std::string& scenario_path,
                       const RunOptions& options = {});

// Parses and validates without executing.
void validate_scenario_file(const std::string& scenario_path);

// Writes a self-contained python plot script next to the CSV and returns its
// path. The CSV header must match the kind's schema exactly.
std::string emit_plot_script(const std::string& csv_path,
                             const std::string& kind);

std::vector<std::string> plot_kinds();

}  // namespace resil
