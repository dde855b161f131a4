#pragma once

#include "dkwaves/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dkwaves {

/// Outcome of one certification check.
struct CheckRecord {
  std::string name;         ///< what was measured
  std::string tag;          ///< short stable identifier
  Real max_residual = 0.0;  ///< worst residual seen across the sweep
  Real tolerance = 0.0;     ///< pass threshold
  bool pass = false;
};

/// Sweep controls. A positive tolerance_override replaces every per-check
/// tolerance, which is how failure reporting is exercised end to end.
struct CertifyOptions {
  int j_max = 3;                  ///< largest integer tower label swept
  int points = 12;                ///< random samples per check family
  std::uint64_t seed = 20260825;  ///< seed for the sample draws
  Real tolerance_override = -1.0;
};

/// Runs the whole certification sweep. An evaluation error inside one check
/// is recorded as that check failing (residual = infinity) and the sweep
/// continues.
std::vector<CheckRecord> run_certification(const CertifyOptions& options);

/// True when every record passes.
bool all_pass(const std::vector<CheckRecord>& records);

}  // namespace dkwaves
