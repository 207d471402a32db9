#ifndef RICSEL_IO_HPP
#define RICSEL_IO_HPP

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "ricsel/selection.hpp"
#include "ricsel/simulate.hpp"
#include "ricsel/types.hpp"

namespace ricsel {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "ric-select/1";

/// Parse a comma-delimited dataset: one header row, "." decimals, UTF-8,
/// no quoting. The response column is removed from the design.
Dataset read_dataset(const std::string& path, const std::string& response);

/// Same, from in-memory text (used by tests).
Dataset parse_dataset(const std::string& text, const std::string& response);

/// FNV-1a 64-bit digest of raw bytes, as 16 hex characters.
std::string content_digest(const std::string& bytes);
std::string file_digest(const std::string& path);

/// The envelope every subcommand writes to standard output.
struct ReportDocument {
  std::string schema = kSchemaVersion;
  std::string command;
  std::string input_digest;
  Json payload;
  double timing_ms = 0.0;

  Json to_json() const;
  static ReportDocument from_json(const Json& j);
  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

Json to_json(const SelectionReport& report);
Json to_json(const ExperimentSummary& summary);
Json to_json(const FittedModel& fit);

/// Experiment config as consumed by `simulate --config`.
ExperimentConfig experiment_config_from_json(const Json& j);
Json to_json(const ExperimentConfig& config);

/// CLI entry point; returns the process exit status
/// (0 success, 1 usage/validation error, 2 data or model error).
int run_command(int argc, const char* const* argv, std::ostream& out,
                std::ostream& err);

}  // namespace ricsel

#endif  // RICSEL_IO_HPP
