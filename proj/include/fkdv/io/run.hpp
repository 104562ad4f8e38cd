#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fkdv/io/config.hpp"
#include "fkdv/report.hpp"

namespace fkdv::io {

struct ResultBundle {
  ExperimentReport report;
  std::vector<std::filesystem::path> tables;
  std::vector<std::filesystem::path> figures;
  std::filesystem::path manifest;
  double wall_seconds = 0.0;
};

/// Maps the validated configuration onto the experiment and runs it without
/// touching the file system. Errors that escape the experiment are recorded
/// in report.errors.
ExperimentReport execute(const RunConfig& config);

/// execute() plus persistence under config.output_dir: one CSV per table,
/// verdicts.csv, errors.csv when there are errors, one SVG per figure and
/// manifest.txt.
ResultBundle run(const RunConfig& config);

/// 0 when every verdict passed and no case failed, 1 otherwise.
int exit_status(const ExperimentReport& report);

/// FNV-1a, used to fingerprint the resolved configuration.
std::uint64_t fnv1a(std::string_view data);

std::string version_string();

}  // namespace fkdv::io
