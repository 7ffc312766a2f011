#pragma once

// Verification suites grouped by acceptance criterion, and the JSON report.

#include "nceh/core.hpp"

#include <json.hpp>

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace nceh {

struct AngularGrid {
  int n_r = 12;
  int n_theta = 13;
  int n_phi = 8;
  int n_psi = 8;
};

struct RunConfig {
  double a = 1.0;
  double theta = 0.25;  // deformation parameter
  AngularGrid grid;
  std::map<std::string, double> tol;  // overrides; "all" applies to every key not set explicitly
  std::uint64_t seed = 42;
  int modes = 3;
  std::string out;
  std::string format = "json";

  // Throws std::invalid_argument on an invalid configuration.
  void validate() const;
  double tolerance(const std::string& key) const;
};

const std::map<std::string, double>& default_tolerances();

struct Check {
  std::string id;
  int criterion = 0;  // 1..11; 0 for checks outside the numbered criteria
  std::string anchor;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool gating = true;  // false for diagnostics
  std::string note;
};

inline constexpr int kCriteria = 12;
const std::string& criterion_title(int k);

// Checks for one criterion (1..11). Criterion 12 compares whole reports and
// lives with the callers that can run the suite twice.
std::vector<Check> criterion_checks(int k, const RunConfig& cfg);
// Commutative reductions, added when the deformation parameter is zero.
std::vector<Check> commutative_reduction_checks(const RunConfig& cfg);

struct Report {
  RunConfig cfg;
  std::vector<Check> checks;
  std::map<int, double> seconds;  // wall time per criterion
};

// NCEH_THREADS caps the worker count; default is the hardware concurrency.
int thread_count();

Report run_verify(const RunConfig& cfg, const std::vector<int>& criteria, int threads = thread_count());
Report run_verify(const RunConfig& cfg);

// Gating checks of criterion k all pass (and there is at least one).
bool criterion_pass(const Report& r, int k);
bool all_pass(const Report& r);

nlohmann::json config_json(const RunConfig& cfg);
nlohmann::json report_json(const Report& r, bool include_timing = true);

}  // namespace nceh
