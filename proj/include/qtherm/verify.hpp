#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace qtherm {

struct Check {
  std::string check;
  std::string suite;
  double target = 0.0;
  double got = 0.0;
  /// Absolute.
  double tolerance = 0.0;
  bool pass = false;
  /// Target known to be wrong in the reference; reported but not counted.
  bool known_defect = false;
};

struct VerifyReport {
  std::string suite;
  std::vector<Check> checks;

  /// True when every check passes, known defects excepted.
  bool passed() const;
  nlohmann::json to_json() const;
};

inline constexpr std::string_view kVerifySuites[] = {"all",     "specfun",   "models",
                                                      "spectra", "duality",   "magnetics",
                                                      "priors"};

struct VerifyOptions {
  /// Name of a check whose target is shifted by ten tolerances, so that it
  /// must fail. Used to test the harness itself.
  std::optional<std::string> perturb;
};

/// Runs one suite (or all). Throws DomainError for an unknown suite or an
/// unknown perturb target.
VerifyReport run_verify(std::string_view suite, const VerifyOptions& options = {});

}  // namespace qtherm
