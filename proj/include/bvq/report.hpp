#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bvq/interval_calculus.hpp"
#include "bvq/segmentation.hpp"
#include "bvq/signal.hpp"
#include "bvq/verify.hpp"
#include "json.hpp"

namespace bvq {

enum class OutputFormat { Json, Csv };

struct RunConfig {
  std::string command;                     // analyze | segment | verify
  std::optional<std::string> input;        // CSV path
  std::optional<std::string> signal_json;  // descriptor file path, or inline JSON starting with '{'
  Interpolation mode = Interpolation::PiecewiseLinear;
  std::vector<double> scales;              // empty: defaults relative to the domain length
  std::optional<double> stride;            // default: finest scale / 4
  std::optional<double> tol;
  OutputFormat format = OutputFormat::Json;
  std::optional<std::string> output;
  std::uint64_t seed = 0;
  std::string suite = "all";
  double s = 2.5;                          // power suite exponent
};

struct CommandResult {
  std::string output;
  int exit_code = 0;
  std::string error;
};

enum ExitCode : int { ExitOk = 0, ExitVerifyFailed = 1, ExitInputError = 2, ExitDomainError = 3 };

int exit_code_for(ErrorKind kind);

/// Throws ParseError / InvalidSignal for malformed or inconsistent RunConfig.
void validate(const RunConfig& config);

/// Runs one subcommand. Errors are reported through exit_code and error, never thrown.
CommandResult run_command(const RunConfig& config);

// CSV: two columns x,y; an optional header row is recognised by a non-numeric first field.
SampledSignal parse_csv(std::string_view text, Interpolation mode = Interpolation::PiecewiseLinear);
SampledSignal read_csv(const std::string& path, Interpolation mode = Interpolation::PiecewiseLinear);

// Analytic descriptors: {"type": "affine" | "jump" | "power" | "exponential" | "polynomial"
// | "composite" | "family", "domain": [lo, hi], ...}
AnalyticSignal signal_from_json(const nlohmann::ordered_json& j);
AnalyticSignal parse_signal(std::string_view text);
nlohmann::ordered_json to_json(const AnalyticSignal& f);

nlohmann::ordered_json to_json(const QuotientMap& map);
std::string to_csv(const QuotientMap& map);
nlohmann::ordered_json to_json(const SegmentationReport& report);
std::string to_csv(const SegmentationReport& report);
std::string to_csv(const VerificationReport& report);

/// Shortest round-trip decimal form.
std::string format_number(double x);

}  // namespace bvq
