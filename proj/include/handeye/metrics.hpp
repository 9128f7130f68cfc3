#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "handeye/synth.hpp"
#include "handeye/vq.hpp"
#include "handeye/weighting.hpp"

namespace handeye {

struct ErrorPair {
  double eps_r_deg{0.0};
  double eps_t_m{0.0};
};

// Rotation/translation error of an estimate against ground truth, invariant
// to the global sign of either argument.
ErrorPair calib_error(const DualQuat& estimate, const DualQuat& truth);

enum class Method { uniform, vq, density };

const char* method_name(Method m);

struct RunOutcome {
  ErrorPair error;
  double c_t{0.0};
  bool failed{false};
  std::string failure_reason;
};

struct ComparisonOptions {
  int seeds{10};
  WeightingParams params{};
  double k_rel{0.2};
};

// One method applied to one dataset.
RunOutcome run_method(const Dataset& ds, Method method,
                      const ComparisonOptions& opts);

struct CellResult {
  ScenarioConfig config;  // seed field holds the base seed
  Method method;
  double mean_eps_r_deg{0.0};
  double mean_eps_t_m{0.0};
  double mean_c_t{0.0};
  int runs{0};      // successful runs included in the means
  int failures{0};  // excluded runs
};

struct ExperimentReport {
  std::vector<CellResult> cells;
};

// For each grid cell and seed: generate, run every method, aggregate means.
// Per-run failures are recorded and excluded from the means.
ExperimentReport run_comparison(const std::vector<ScenarioConfig>& grid,
                                const std::vector<Method>& methods,
                                const ComparisonOptions& opts = {});

struct SweepRow {
  Method method;
  double param_value;  // d_r for density, k_rel for vq
  int n_uneven;
  double mean_eps_r_deg{0.0};
  double mean_eps_t_m{0.0};
  int runs{0};
  int failures{0};
};

// Parameter sweep of d_r (density) and k_rel (vq) over n^(uneven) values at
// fixed noise.
std::vector<SweepRow> sweep_parameters(const std::vector<double>& d_r_values,
                                       const std::vector<double>& k_rel_values,
                                       const std::vector<int>& n_uneven_values,
                                       const ScenarioConfig& base,
                                       const ComparisonOptions& opts = {});

void write_comparison_csv(std::ostream& out, const ExperimentReport& report);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace handeye
