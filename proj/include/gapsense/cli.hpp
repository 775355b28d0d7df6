#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gapsense::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kData = 3 };

enum class Format { Text, Json, Csv };

struct CliConfig {
  std::string subcommand;
  std::string dataset;
  std::string input;
  std::string input_format = "auto";
  std::vector<std::string> datasets;
  std::string method = "iir";
  std::optional<double> c;
  std::optional<double> K;
  double k = 3.0;
  double whisker = 1.5;
  double b = 1.4826;
  std::size_t min_partners = 3;
  Format format = Format::Text;
  bool trace = false;
  // simulate
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::size_t reps = 1000;
  std::size_t n = 500;
  std::vector<double> fractions;
  std::vector<std::size_t> sizes;
  double target_mean = 0.0, target_sd = 1.0;
  double contaminant_mean = 10.0, contaminant_sd = 1.0;
  std::vector<std::string> methods;
  unsigned threads = 0;
};

/// Raised for invalid flag combinations after parsing; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int run_detect(const CliConfig& cfg, std::ostream& out);
int run_compare(const CliConfig& cfg, std::ostream& out);
int run_simulate(const CliConfig& cfg, std::ostream& out);
int run_cluster(const CliConfig& cfg, std::ostream& out);

/// Parses `args` (without the program name), dispatches, and maps failures
/// to exit codes: 0 success, 2 usage, 3 data or I/O. Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gapsense::cli
