#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "addlab/equation.hpp"
#include "addlab/rational.hpp"
#include "addlab/report.hpp"

namespace addlab {

// Invalid suite configuration; the CLI maps it to exit code 2.
class ConfigError : public UsageError {
 public:
  using UsageError::UsageError;
};

inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> names{"energy", "spectral", "dense_model", "counting", "pipeline"};
  return names;
}

// Plain-text config: one "key = value" per line, '#' comments. Keys:
//   suites     comma list or "all"
//   seed       unsigned 64-bit
//   sizes      comma list of N
//   pairs      comma list of s:t
//   equations  ';'-separated coefficient lists
//   eps        rational, e.g. 1/8
//   output     report directory
//   threads    worker count (0 = ADDLAB_THREADS or hardware)
//   input      optional set file run through the freeness-preconditioned verifiers
struct SuiteConfig {
  std::vector<std::string> suites;
  std::uint64_t seed = 42;
  std::vector<std::uint64_t> sizes{64, 128, 256};
  std::vector<std::pair<int, int>> pairs{{2, 2}, {2, 3}};
  std::vector<EquationSpec> equations{EquationSpec({1, 1, 1, -1, -2})};
  Rational eps{1, 8};
  std::filesystem::path output = "addlab-report";
  unsigned threads = 0;
  std::optional<std::filesystem::path> input;

  // Applies one key/value; throws ConfigError on unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
  // Throws ConfigError if the configuration is unusable.
  void validate() const;
  Json to_json() const;
};

SuiteConfig parse_suite_config(std::istream& in);
SuiteConfig load_suite_config(const std::filesystem::path& path);

struct SuiteResult {
  int exit_code = 0;  // 0 all hard assertions passed, 1 otherwise
  Json report;        // merged report; "timestamp" is the only run-dependent field
  std::vector<std::string> failures;
  std::vector<std::filesystem::path> failure_reports;
};

// Runs every selected suite on a deterministic corpus derived from the seed,
// writes report.json, ratios.csv and pipeline_ledger.dat into config.output.
SuiteResult run_suite(const SuiteConfig& config);

// JSON with stable field order; doubles round-trip exactly (up to 17
// significant digits). Throws IoError if the file cannot be written.
void emit_report(const std::filesystem::path& path, const Json& report);
Json load_report(const std::filesystem::path& path);
// CSV with a header row; fields containing ',' or '"' are quoted.
void emit_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows);
// Whitespace-separated columns with a '#'-prefixed header line.
void emit_plot_data(const std::filesystem::path& path, const std::vector<std::string>& columns,
                    const std::vector<std::vector<double>>& rows);

// A report with the "timestamp" field removed, for run-to-run comparison.
Json strip_timestamps(Json report);

}  // namespace addlab
