#pragma once

#include <string>

#include "job.hpp"

namespace abnorm::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitCorrupt = 3,
  kExitNotGenerating = 4,
};

struct Report {
  Json json;
  /// "strict", "nonstrict", "mixed", "metric-dependent", or empty when nothing was classified.
  std::string verdict;
  bool generates = false;
};

/// Requires algebra, subspace and (for planes) body. Throws UsageError otherwise.
Report build_report(const JobConfig& job, const Catalog& catalog);

/// Rounds |x| < 1e-14 to zero so reports do not carry rounding noise.
double clean(double x);

}  // namespace abnorm::cli
