#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spintomo/half_integer.hpp"

namespace spintomo {

struct VerifyOptions {
  std::vector<int> twice_js{1, 2, 3}; // spins to sweep (doubled)
  std::uint64_t seed = 20090401;
  int samples = 0;                    // 0 = per-check defaults
  std::optional<double> tolerance;    // overrides every check tolerance
  std::optional<int> quad_polar;      // 0/unset = per-spin defaults
  std::optional<int> quad_azimuthal;
  bool slow = false;                  // enables the brute-force Fourier check
};

struct CheckResult {
  std::string name;
  double gap = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (const auto &c : checks)
      if (!c.pass)
        return false;
    return true;
  }
  void merge(const VerifyReport &other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
};

VerifyReport verify_tomography(const VerifyOptions &opt);
VerifyReport verify_kernels(const VerifyOptions &opt);
VerifyReport verify_equivalence(const VerifyOptions &opt);
VerifyReport verify_recurrence(const VerifyOptions &opt);

// suite: all | tomography | kernels | equivalence | recurrence. Throws
// std::invalid_argument on an unknown suite name.
VerifyReport run_verify_suite(const std::string &suite,
                              const VerifyOptions &opt);

nlohmann::json to_json(const VerifyReport &report, const VerifyOptions &opt);

} // namespace spintomo
