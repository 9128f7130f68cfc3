#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "handeye/io.hpp"
#include "handeye/metrics.hpp"

using namespace handeye;
using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;

// Fixed nontrivial default ground truth for simulate.
const std::vector<double> kDefaultCalib = {0.2, -0.3, 0.4, 30.0, 0.0, 0.0, 1.0};

DualQuat calib_from_flags(const std::vector<double>& v) {
  if (v.size() != 7)
    throw CLI::ValidationError(
        "--calib expects 7 values: tx ty tz angle_deg ax ay az");
  Vec3 axis(v[4], v[5], v[6]);
  if (axis.norm() < 1e-12)
    throw CLI::ValidationError("--calib rotation axis must be nonzero");
  return dq_from_pose(Vec3(v[0], v[1], v[2]), v[3] * M_PI / 180.0,
                      axis.normalized());
}

json dq_result_json(const DualQuat& q) {
  Vec8 x = vec_canonical(q.vec());
  Vec3 t = DualQuat::from_vec(x).translation();
  return json{{"q", {x(0), x(1), x(2), x(3)}}, {"t", {t.x(), t.y(), t.z()}}};
}

struct DatasetFlags {
  ScenarioConfig cfg;
  std::vector<double> calib = kDefaultCalib;

  void attach(CLI::App* cmd) {
    cmd->add_option("--n-uneven", cfg.n_uneven, "Planar (z-axis) sample count");
    cmd->add_option("--n-even", cfg.n_even, "Evenly rotated sample count");
    cmd->add_option("--amplitude", cfg.amplitude, "Elevation amplitude [m]");
    cmd->add_option("--wavelength", cfg.wavelength, "Elevation wavelength [m]");
    cmd->add_option("--step", cfg.step_translation, "Per-sample travel [m]");
    cmd->add_option("--sigma-r", cfg.sigma_r, "Rotation noise [deg/m]");
    cmd->add_option("--sigma-t", cfg.sigma_t, "Translation noise [%]");
    cmd->add_option("--seed", cfg.seed, "RNG seed");
    cmd->add_option("--calib", calib,
                    "Ground truth: tx ty tz angle_deg ax ay az")
        ->expected(7);
  }

  ScenarioConfig config() const {
    ScenarioConfig c = cfg;
    c.calibration = calib_from_flags(calib);
    return c;
  }
};

struct MethodFlags {
  std::string method = "density";
  ComparisonOptions opts;
  double threshold_deg = 0.1;
  double delta_r_deg = 0.1;
  std::string source = "a";

  void attach(CLI::App* cmd, bool with_method = true) {
    if (with_method)
      cmd->add_option("--method", method, "Calibration method")
          ->check(CLI::IsMember({"uniform", "vq", "density"}));
    cmd->add_option("--d-r", opts.params.d_r, "Density kernel width [rad]");
    cmd->add_option("--threshold", threshold_deg,
                    "Rotation/no-rotation split threshold [deg]");
    cmd->add_option("--c-gamma", opts.params.c_gamma, "Blend sigmoid center");
    cmd->add_option("--s-gamma", opts.params.s_gamma, "Blend sigmoid steepness");
    cmd->add_option("--source", source, "Density source sensor")
        ->check(CLI::IsMember({"a", "b"}));
    cmd->add_option("--k-rel", opts.k_rel, "VQ codebook size fraction");
    cmd->add_option("--delta-t", opts.params.delta_t,
                    "Sensitivity probe step [m]");
    cmd->add_option("--delta-r", delta_r_deg, "Sensitivity probe step [deg]");
    cmd->add_option("--gap-tol", opts.params.solver.gap_tol,
                    "Relative duality-gap tolerance");
    cmd->add_option("--rank-tol", opts.params.solver.rank_tol,
                    "Null-space rank tolerance");
    cmd->add_option("--max-iter", opts.params.solver.max_iter,
                    "Dual bisection iterations");
  }

  ComparisonOptions options() const {
    ComparisonOptions o = opts;
    o.params.threshold = threshold_deg * M_PI / 180.0;
    o.params.delta_r = delta_r_deg * M_PI / 180.0;
    o.params.source =
        source == "b" ? DensitySource::sensor_b : DensitySource::sensor_a;
    return o;
  }

  Method parsed_method() const {
    if (method == "uniform") return Method::uniform;
    if (method == "vq") return Method::vq;
    return Method::density;
  }
};

int cmd_simulate(const DatasetFlags& flags, const std::string& output) {
  Dataset ds = generate(flags.config());
  write_dataset_file(output, ds);
  return 0;
}

int cmd_calibrate(const std::string& input, const MethodFlags& flags) {
  LoadedDataset ds = read_dataset_file(input);
  ComparisonOptions opts = flags.options();

  json result;
  CalibrationResult r;
  double c_t = 0.0;
  switch (flags.parsed_method()) {
    case Method::uniform: {
      CostMatrix q = build_cost(ds.pairs);
      r = solve(q, opts.params.solver);
      c_t = estimate_sensitivity(q, r.x, opts.params.delta_t,
                                 opts.params.delta_r)
                .c_t;
      result["certified"] = certify(q, r, 1e-6);
      break;
    }
    case Method::vq: {
      RotationSplit split =
          split_by_rotation(ds.pairs, opts.params.source, opts.params.threshold);
      std::uint64_t seed = ds.config ? ds.config->seed : 0;
      CostMatrix q = build_cost(vq_select(split, opts.k_rel, seed));
      r = solve(q, opts.params.solver);
      c_t = estimate_sensitivity(q, r.x, opts.params.delta_t,
                                 opts.params.delta_r)
                .c_t;
      result["certified"] = certify(q, r, 1e-6);
      break;
    }
    case Method::density: {
      PipelineResult p = auto_weighted_calibrate(ds.pairs, opts.params);
      r = p.final;
      c_t = p.sensitivity.c_t;
      result["gamma"] = p.gamma;
      // the certificate applies to the blended cost actually solved
      result["certified"] = r.gap <= 1e-6 * std::max(1.0, r.cost);
      break;
    }
  }

  result["calibration"] = dq_result_json(r.x);
  result["cost"] = r.cost;
  result["gap"] = r.gap;
  result["c_t"] = c_t;
  if (ds.ground_truth) {
    ErrorPair e = calib_error(r.x, *ds.ground_truth);
    result["errors_vs_ground_truth"] = {{"eps_r_deg", e.eps_r_deg},
                                        {"eps_t_m", e.eps_t_m}};
  }
  std::cout << result.dump(2) << '\n';
  return 0;
}

int cmd_sensitivity(const std::string& input, const MethodFlags& flags,
                    bool as_json) {
  LoadedDataset ds = read_dataset_file(input);
  ComparisonOptions opts = flags.options();
  CostMatrix q = build_cost(ds.pairs);
  CalibrationResult r = solve(q, opts.params.solver);
  SensitivityReport rep =
      estimate_sensitivity(q, r.x, opts.params.delta_t, opts.params.delta_r);
  FeedbackRecord rec = feedback_summary(rep, opts.params.c_gamma);

  if (as_json) {
    json out{{"c_t", rec.c_t},
             {"c_r", rec.c_r},
             {"axis", {rec.dominant_axis.x(), rec.dominant_axis.y(),
                       rec.dominant_axis.z()}},
             {"dominant_tie", rec.dominant_tie},
             {"advice_code", advice_code_name(rec.advice)},
             {"advice", rec.text}};
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "c_t = " << rec.c_t << "\nc_r = " << rec.c_r
              << "\ndominant translation axis = ["
              << rec.dominant_axis.transpose() << "]\n"
              << rec.text << '\n';
  }
  return 0;
}

int cmd_density(const std::string& input, const MethodFlags& flags) {
  LoadedDataset ds = read_dataset_file(input);
  ComparisonOptions opts = flags.options();
  RotationSplit split =
      split_by_rotation(ds.pairs, opts.params.source, opts.params.threshold);
  DensityResult d = densities(split, opts.params.d_r);
  json out{{"n_no_rotation", split.no_rotation.size()},
           {"n_rotation", split.rotation.size()},
           {"d_r", d.d_r},
           {"sigma_rho", d.sigma_rho},
           {"densities", d.densities},
           {"weights", d.weights_rho}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_compare(const DatasetFlags& base, const MethodFlags& flags,
                const std::vector<int>& n_uneven_grid, int runs,
                const std::string& output) {
  ScenarioConfig cfg = base.config();
  std::vector<ScenarioConfig> grid;
  for (int n : n_uneven_grid) {
    ScenarioConfig cell = cfg;
    cell.n_uneven = n;
    grid.push_back(cell);
  }
  ComparisonOptions opts = flags.options();
  opts.seeds = runs;
  ExperimentReport rep = run_comparison(
      grid, {Method::uniform, Method::vq, Method::density}, opts);
  std::ofstream out(output);
  if (!out) throw IoError("cannot open for writing: " + output);
  write_comparison_csv(out, rep);
  return 0;
}

int cmd_sweep(const DatasetFlags& base, const MethodFlags& flags,
              const std::vector<double>& d_r_values,
              const std::vector<double>& k_rel_values,
              const std::vector<int>& n_uneven_values, int runs,
              const std::string& output) {
  ComparisonOptions opts = flags.options();
  opts.seeds = runs;
  std::vector<SweepRow> rows = sweep_parameters(
      d_r_values, k_rel_values, n_uneven_values, base.config(), opts);
  std::ofstream out(output);
  if (!out) throw IoError("cannot open for writing: " + output);
  write_sweep_csv(out, rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certifiably optimal dual-quaternion hand-eye calibration"};
  app.require_subcommand(1);

  DatasetFlags sim_flags;
  std::string sim_output;
  CLI::App* simulate = app.add_subcommand("simulate", "Generate a dataset");
  sim_flags.attach(simulate);
  simulate->add_option("-o,--output", sim_output, "Output JSONL file")
      ->required();

  std::string cal_input;
  MethodFlags cal_flags;
  CLI::App* calibrate =
      app.add_subcommand("calibrate", "Calibrate from a dataset file");
  calibrate->add_option("input", cal_input, "Dataset JSONL file")->required();
  cal_flags.attach(calibrate);

  std::string sens_input;
  MethodFlags sens_flags;
  bool sens_json = false;
  CLI::App* sensitivity =
      app.add_subcommand("sensitivity", "Conditioning diagnostics and advice");
  sensitivity->add_option("input", sens_input, "Dataset JSONL file")->required();
  sens_flags.attach(sensitivity, false);
  sensitivity->add_flag("--json", sens_json, "Machine-readable output");

  std::string dens_input;
  MethodFlags dens_flags;
  CLI::App* density =
      app.add_subcommand("density", "Rotation-axis densities and weights");
  density->add_option("input", dens_input, "Dataset JSONL file")->required();
  dens_flags.attach(density, false);

  DatasetFlags cmp_base;
  MethodFlags cmp_flags;
  std::vector<int> cmp_grid = {100, 1000, 5000};
  int cmp_runs = 10;
  std::string cmp_output = "comparison.csv";
  CLI::App* compare =
      app.add_subcommand("compare", "Method comparison over an n-uneven grid");
  cmp_base.attach(compare);
  cmp_flags.attach(compare, false);
  compare->add_option("--grid", cmp_grid, "n-uneven grid values");
  compare->add_option("--runs", cmp_runs, "Seeds per cell");
  compare->add_option("-o,--output", cmp_output, "Output CSV file");

  DatasetFlags swp_base;
  MethodFlags swp_flags;
  std::vector<double> swp_d_r = {0.05, 0.1, 0.15, 0.2, 0.25};
  std::vector<double> swp_k_rel = {0.05, 0.1, 0.15, 0.2, 0.25};
  std::vector<int> swp_n = {1000};
  int swp_runs = 10;
  std::string swp_output = "sweep.csv";
  CLI::App* sweep =
      app.add_subcommand("sweep", "Parameter sweep of d-r and k-rel");
  swp_base.attach(sweep);
  swp_flags.attach(sweep, false);
  sweep->add_option("--d-r-grid", swp_d_r, "d-r sweep values");
  sweep->add_option("--k-rel-grid", swp_k_rel, "k-rel sweep values");
  sweep->add_option("--n-uneven-grid", swp_n, "n-uneven values");
  sweep->add_option("--runs", swp_runs, "Seeds per cell");
  sweep->add_option("-o,--output", swp_output, "Output CSV file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return cmd_simulate(sim_flags, sim_output);
    if (calibrate->parsed()) return cmd_calibrate(cal_input, cal_flags);
    if (sensitivity->parsed())
      return cmd_sensitivity(sens_input, sens_flags, sens_json);
    if (density->parsed()) return cmd_density(dens_input, dens_flags);
    if (compare->parsed())
      return cmd_compare(cmp_base, cmp_flags, cmp_grid, cmp_runs, cmp_output);
    if (sweep->parsed())
      return cmd_sweep(swp_base, swp_flags, swp_d_r, swp_k_rel, swp_n,
                       swp_runs, swp_output);
  } catch (const UnderConstrainedError& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitSolver;
  } catch (const SolverError& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitSolver;
  } catch (const IoError& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}
