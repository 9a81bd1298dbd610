#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "aldm/aldm_core.hpp"
#include "aldm/line_sensor.hpp"
#include "aldm/road_model.hpp"

namespace aldm {

// Evenly spaced ego stations in one lane.
struct EgoPath {
  double start_station = 0.0;
  double step = 0.0;
  int count = 1;
  int lane = 0;
  double offset_in_lane = 0.0;
  double heading_offset = 0.0;
};

struct Scenario {
  std::string name;
  RoadSpec road;
  std::variant<EgoPath, std::vector<EgoPose>> ego = EgoPath{};
  SensorConfig sensor;
  AldmParams aldm;
  bool run_baseline = true;
  bool run_aldm = true;
  double frame_dt = 0.1;

  std::vector<EgoPose> poses(const RoadGeometry& road) const;
  // Checks every nested invariant, including that all poses lie on the road.
  void validate() const;
};

// Flat INI text: [scenario] [road] [ego] [sensor] [aldm] sections of key = value pairs.
// Throws ConfigError with a line-oriented diagnostic.
Scenario parse_scenario(std::istream& in, const std::string& name = "scenario");
Scenario load_scenario(const std::filesystem::path& path);
std::string to_config_text(const Scenario& scenario);

std::vector<std::string> builtin_scenario_names();
Scenario builtin_scenario(const std::string& name);

}  // namespace aldm
