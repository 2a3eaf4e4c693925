#include "specden/report.hpp"

#include <fstream>

#include "specden/errors.hpp"

namespace specden {

nlohmann::json ExperimentReport::to_json() const {
  nlohmann::json j;
  j["experiment"] = experiment;
  j["parameters"] = parameters;
  j["seed"] = seed;
  j["measured"] = measured;
  j["references"] = references;
  j["wall_clock_seconds"] = wall_clock_seconds;
  j["version"] = version;
  return j;
}

ExperimentReport ExperimentReport::from_json(const nlohmann::json& j) {
  ExperimentReport r;
  r.experiment = j.at("experiment").get<std::string>();
  r.parameters = j.at("parameters");
  r.seed = j.at("seed").get<uint64_t>();
  r.measured = j.at("measured");
  r.references = j.at("references");
  r.wall_clock_seconds = j.at("wall_clock_seconds").get<double>();
  r.version = j.at("version").get<std::string>();
  return r;
}

void write_report(const std::string& path, const ExperimentReport& report) {
  std::ofstream out(path);
  if (!out) throw io_error("write_report: cannot open " + path);
  out << report.to_json().dump(2) << '\n';
  if (!out) throw io_error("write_report: write failed for " + path);
}

ExperimentReport read_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("read_report: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
    return ExperimentReport::from_json(j);
  } catch (const nlohmann::json::exception& ex) {
    throw io_error("read_report: malformed report " + path + ": " + ex.what());
  }
}

}  // namespace specden
