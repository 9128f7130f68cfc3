#include "handeye/metrics.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace handeye {

ErrorPair calib_error(const DualQuat& estimate, const DualQuat& truth) {
  DualQuat err = dq_mul(dq_inverse(truth), estimate);
  if (err.real.s < 0.0) err = err.negated();
  ErrorPair e;
  // atan2 keeps full precision for small angles, unlike acos near 1
  e.eps_r_deg = 2.0 * std::atan2(err.real.v.norm(), err.real.s) * 180.0 / M_PI;
  e.eps_t_m = err.translation().norm();
  return e;
}

const char* method_name(Method m) {
  switch (m) {
    case Method::uniform:
      return "uniform";
    case Method::vq:
      return "vq";
    case Method::density:
      return "density";
  }
  return "unknown";
}

RunOutcome run_method(const Dataset& ds, Method method,
                      const ComparisonOptions& opts) {
  RunOutcome out;
  try {
    switch (method) {
      case Method::uniform: {
        CostMatrix q = build_cost(ds.pairs);
        CalibrationResult r = solve(q, opts.params.solver);
        out.error = calib_error(r.x, ds.ground_truth);
        out.c_t = estimate_sensitivity(q, r.x, opts.params.delta_t,
                                       opts.params.delta_r)
                      .c_t;
        break;
      }
      case Method::vq: {
        RotationSplit split = split_by_rotation(ds.pairs, opts.params.source,
                                                opts.params.threshold);
        std::vector<MotionPair> subset =
            vq_select(split, opts.k_rel, ds.config.seed);
        CostMatrix q = build_cost(subset);
        CalibrationResult r = solve(q, opts.params.solver);
        out.error = calib_error(r.x, ds.ground_truth);
        out.c_t = estimate_sensitivity(q, r.x, opts.params.delta_t,
                                       opts.params.delta_r)
                      .c_t;
        break;
      }
      case Method::density: {
        PipelineResult p = auto_weighted_calibrate(ds.pairs, opts.params);
        out.error = calib_error(p.final.x, ds.ground_truth);
        out.c_t = p.sensitivity.c_t;
        break;
      }
    }
  } catch (const std::exception& ex) {
    out.failed = true;
    out.failure_reason = ex.what();
  }
  return out;
}

ExperimentReport run_comparison(const std::vector<ScenarioConfig>& grid,
                                const std::vector<Method>& methods,
                                const ComparisonOptions& opts) {
  if (grid.empty())
    throw std::invalid_argument("run_comparison: empty grid");
  ExperimentReport report;
  for (const ScenarioConfig& cell : grid) {
    std::map<Method, CellResult> acc;
    for (Method m : methods) {
      CellResult c;
      c.config = cell;
      c.method = m;
      acc[m] = c;
    }
    for (int s = 0; s < opts.seeds; ++s) {
      ScenarioConfig cfg = cell;
      cfg.seed = cell.seed + static_cast<std::uint64_t>(s);
      Dataset ds = generate(cfg);
      for (Method m : methods) {
        RunOutcome out = run_method(ds, m, opts);
        CellResult& c = acc[m];
        if (out.failed) {
          ++c.failures;
        } else {
          c.mean_eps_r_deg += out.error.eps_r_deg;
          c.mean_eps_t_m += out.error.eps_t_m;
          c.mean_c_t += out.c_t;
          ++c.runs;
        }
      }
    }
    for (Method m : methods) {
      CellResult& c = acc[m];
      if (c.runs > 0) {
        c.mean_eps_r_deg /= c.runs;
        c.mean_eps_t_m /= c.runs;
        c.mean_c_t /= c.runs;
      }
      report.cells.push_back(c);
    }
  }
  return report;
}

std::vector<SweepRow> sweep_parameters(const std::vector<double>& d_r_values,
                                       const std::vector<double>& k_rel_values,
                                       const std::vector<int>& n_uneven_values,
                                       const ScenarioConfig& base,
                                       const ComparisonOptions& opts) {
  std::vector<SweepRow> rows;
  for (int n : n_uneven_values) {
    ScenarioConfig cell = base;
    cell.n_uneven = n;
    // generate each seed's dataset once and reuse it across parameter values
    std::vector<Dataset> datasets;
    datasets.reserve(opts.seeds);
    for (int s = 0; s < opts.seeds; ++s) {
      ScenarioConfig cfg = cell;
      cfg.seed = cell.seed + static_cast<std::uint64_t>(s);
      datasets.push_back(generate(cfg));
    }
    auto sweep_one = [&](Method m, double value) {
      SweepRow row;
      row.method = m;
      row.param_value = value;
      row.n_uneven = n;
      ComparisonOptions o = opts;
      if (m == Method::density)
        o.params.d_r = value;
      else
        o.k_rel = value;
      for (const Dataset& ds : datasets) {
        RunOutcome out = run_method(ds, m, o);
        if (out.failed) {
          ++row.failures;
        } else {
          row.mean_eps_r_deg += out.error.eps_r_deg;
          row.mean_eps_t_m += out.error.eps_t_m;
          ++row.runs;
        }
      }
      if (row.runs > 0) {
        row.mean_eps_r_deg /= row.runs;
        row.mean_eps_t_m /= row.runs;
      }
      rows.push_back(row);
    };
    for (double d_r : d_r_values) sweep_one(Method::density, d_r);
    for (double k_rel : k_rel_values) sweep_one(Method::vq, k_rel);
  }
  return rows;
}

void write_comparison_csv(std::ostream& out, const ExperimentReport& report) {
  out << "n_uneven,n_even,sigma_r,sigma_t,method,eps_r_deg,eps_t_m,c_t,runs,"
         "failures\n";
  out.precision(12);
  for (const CellResult& c : report.cells) {
    out << c.config.n_uneven << ',' << c.config.n_even << ','
        << c.config.sigma_r << ',' << c.config.sigma_t << ','
        << method_name(c.method) << ',' << c.mean_eps_r_deg << ','
        << c.mean_eps_t_m << ',' << c.mean_c_t << ',' << c.runs << ','
        << c.failures << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "method,param,value,n_uneven,eps_r_deg,eps_t_m,runs,failures\n";
  out.precision(12);
  for (const SweepRow& r : rows) {
    out << method_name(r.method) << ','
        << (r.method == Method::density ? "d_r" : "k_rel") << ','
        << r.param_value << ',' << r.n_uneven << ',' << r.mean_eps_r_deg << ','
        << r.mean_eps_t_m << ',' << r.runs << ',' << r.failures << '\n';
  }
}

}  // namespace handeye
