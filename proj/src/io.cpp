#include "handeye/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace handeye {

using nlohmann::json;

json dq_to_json(const DualQuat& q) {
  Vec8 x = vec_canonical(q.vec());
  DualQuat c = DualQuat::from_vec(x);
  Vec3 t = c.translation();
  return json{{"q", {x(0), x(1), x(2), x(3)}}, {"t", {t.x(), t.y(), t.z()}}};
}

DualQuat dq_from_json(const json& j) {
  try {
    const auto& q = j.at("q");
    const auto& t = j.at("t");
    if (q.size() != 4 || t.size() != 3)
      throw IoError("pose record: expected q[4] and t[3]");
    Quaternion r(q[0].get<double>(),
                 Vec3(q[1].get<double>(), q[2].get<double>(), q[3].get<double>()));
    if (std::abs(r.norm() - 1.0) > kUnitTolFile)
      throw IoError("pose record: rotation quaternion is not unit");
    Vec3 tv(t[0].get<double>(), t[1].get<double>(), t[2].get<double>());
    DualQuat dq(r.scaled(1.0 / r.norm()),
                quat_mul(Quaternion(0.0, 0.5 * tv), r.scaled(1.0 / r.norm())));
    return dq_normalize(dq);
  } catch (const json::exception& ex) {
    throw IoError(std::string("pose record: ") + ex.what());
  }
}

json config_to_json(const ScenarioConfig& config) {
  return json{{"n_uneven", config.n_uneven},
              {"n_even", config.n_even},
              {"amplitude", config.amplitude},
              {"wavelength", config.wavelength},
              {"step_translation", config.step_translation},
              {"sigma_r", config.sigma_r},
              {"sigma_t", config.sigma_t},
              {"calibration", dq_to_json(config.calibration)},
              {"seed", config.seed}};
}

ScenarioConfig config_from_json(const json& j) {
  try {
    ScenarioConfig c;
    c.n_uneven = j.at("n_uneven").get<int>();
    c.n_even = j.at("n_even").get<int>();
    c.amplitude = j.at("amplitude").get<double>();
    c.wavelength = j.at("wavelength").get<double>();
    c.step_translation = j.at("step_translation").get<double>();
    c.sigma_r = j.at("sigma_r").get<double>();
    c.sigma_t = j.at("sigma_t").get<double>();
    c.calibration = dq_from_json(j.at("calibration"));
    c.seed = j.at("seed").get<std::uint64_t>();
    return c;
  } catch (const json::exception& ex) {
    throw IoError(std::string("config record: ") + ex.what());
  }
}

void write_dataset(std::ostream& out, const Dataset& ds) {
  json header{{"format_version", 1},
              {"ground_truth", dq_to_json(ds.ground_truth)},
              {"config", config_to_json(ds.config)}};
  out << header.dump() << '\n';
  for (const MotionPair& p : ds.pairs) {
    json rec{{"a", dq_to_json(p.a)}, {"b", dq_to_json(p.b)}, {"w", p.weight}};
    out << rec.dump() << '\n';
  }
  if (!out) throw IoError("write_dataset: stream failure");
}

void write_dataset_file(const std::string& path, const Dataset& ds) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  write_dataset(out, ds);
}

LoadedDataset read_dataset(std::istream& in) {
  LoadedDataset ds;
  std::string line;
  size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& ex) {
      throw IoError("line " + std::to_string(lineno) + ": " + ex.what());
    }
    if (!header_seen) {
      header_seen = true;
      if (!j.contains("format_version"))
        throw IoError("missing header record with format_version");
      if (j.at("format_version").get<int>() != 1)
        throw IoError("unsupported format_version");
      if (j.contains("ground_truth"))
        ds.ground_truth = dq_from_json(j.at("ground_truth"));
      if (j.contains("config")) ds.config = config_from_json(j.at("config"));
      continue;
    }
    try {
      MotionPair p;
      p.a = dq_from_json(j.at("a"));
      p.b = dq_from_json(j.at("b"));
      p.weight = j.value("w", 1.0);
      if (!(p.weight >= 0.0) || !std::isfinite(p.weight))
        throw IoError("line " + std::to_string(lineno) + ": invalid weight");
      ds.pairs.push_back(p);
    } catch (const json::exception& ex) {
      throw IoError("line " + std::to_string(lineno) + ": " + ex.what());
    }
  }
  if (!header_seen) throw IoError("empty dataset file");
  return ds;
}

LoadedDataset read_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  return read_dataset(in);
}

}  // namespace handeye
