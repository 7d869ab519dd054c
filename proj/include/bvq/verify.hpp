#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace bvq {

struct CheckResult {
  std::string name;
  int probes = 0;
  double value = 0.0;      // worst residual, or the quantity that must exceed the threshold
  double threshold = 0.0;
  bool must_exceed = false;  // pass when value > threshold instead of value <= threshold
  bool pass = false;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

struct VerificationReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool pass() const;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::optional<double> tol;  // overrides each residual check's default tolerance
  double exponent = 2.5;      // power suite
};

/// Suites: affine, power, exponent, lemma, taylor, ode, measure, all.
VerificationReport run_verification(std::string_view suite, const VerifyOptions& options = {});

std::vector<std::string> verification_suites();

nlohmann::ordered_json to_json(const VerificationReport& report);

}  // namespace bvq
