#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mzi/cli/settings.hpp"

namespace mzi::cli {

enum class CheckStatus { Pass, Fail, Info };

const char* to_string(CheckStatus status);

struct CheckResult {
  std::string name;
  long grid_size = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::Pass;
  std::string note;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool passed() const;
};

// Runs every closed-form check against its oracle plus the invariant scans.
// Random samples come from fixed seeds, so reruns print the same numbers.
VerifyReport run_verify(GridDensity density);

// Aligned text, one line per check.
void write_verify_text(std::ostream& out, const VerifyReport& report);
void write_verify_csv(std::ostream& out, const VerifyReport& report);
void write_verify_json(std::ostream& out, const VerifyReport& report);

}  // namespace mzi::cli
