#include "aldm/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "aldm/errors.hpp"

namespace aldm {

namespace pt = boost::property_tree;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double to_double(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError(where + ": expected a number, got '" + text + "'");
  }
  return v;
}

long to_long(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError(where + ": expected an integer, got '" + text + "'");
  }
  return v;
}

bool to_bool(const std::string& text, const std::string& where) {
  std::string t = trim(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (t == "true" || t == "yes" || t == "on" || t == "1") return true;
  if (t == "false" || t == "no" || t == "off" || t == "0") return false;
  throw ConfigError(where + ": expected a boolean, got '" + text + "'");
}

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Segment parse_segment(const std::string& text) {
  const auto parts = split(text, ':');
  const std::string where = "road.segments '" + text + "'";
  if (parts[0] == "straight" && parts.size() == 2) return Straight{to_double(parts[1], where)};
  if (parts[0] == "arc" && parts.size() == 3) return Arc{to_double(parts[1], where), to_double(parts[2], where)};
  throw ConfigError(where + ": expected straight:<length> or arc:<radius>:<sweep>");
}

MarkingSpec parse_marking(const std::string& text) {
  const auto parts = split(text, ':');
  const std::string where = "road.markings '" + text + "'";
  if (parts.size() == 1 && parts[0] == "none") return MarkingSpec::none();
  if (parts.size() == 1 && parts[0] == "continuous") return MarkingSpec::continuous();
  if (parts[0] == "dashed" || parts[0] == "dotted") {
    MarkingSpec m = parts[0] == "dashed" ? MarkingSpec::dashed() : MarkingSpec::dotted();
    if (parts.size() == 4) {
      m.dash_length = to_double(parts[1], where);
      m.gap_length = to_double(parts[2], where);
      m.phase = to_double(parts[3], where);
    } else if (parts.size() != 1) {
      throw ConfigError(where + ": expected " + parts[0] + "[:<dash>:<gap>:<phase>]");
    }
    return m;
  }
  throw ConfigError(where + ": unknown marking kind");
}

std::string format_segment(const Segment& segment) {
  if (const auto* s = std::get_if<Straight>(&segment)) return "straight:" + num(s->length);
  const auto& a = std::get<Arc>(segment);
  return "arc:" + num(a.radius) + ":" + num(a.sweep);
}

std::string format_marking(const MarkingSpec& m) {
  switch (m.kind) {
    case MarkingSpec::Kind::None:
      return "none";
    case MarkingSpec::Kind::Continuous:
      return "continuous";
    case MarkingSpec::Kind::Dashed:
    case MarkingSpec::Kind::Dotted:
      break;
  }
  return std::string(m.kind == MarkingSpec::Kind::Dashed ? "dashed:" : "dotted:") + num(m.dash_length) + ":" +
         num(m.gap_length) + ":" + num(m.phase);
}

// Section -> key -> value, with unknown keys rejected.
class Sections {
 public:
  explicit Sections(const pt::ptree& tree) {
    for (const auto& [section, body] : tree) {
      if (!body.data().empty() && body.empty()) {
        throw ConfigError("key '" + section + "' must appear inside a [section]");
      }
      for (const auto& [key, value] : body) values_[section][key] = value.data();
    }
  }

  void expect(const std::string& section, const std::set<std::string>& keys) const {
    const auto it = values_.find(section);
    if (it == values_.end()) return;
    for (const auto& [key, _] : it->second) {
      if (!keys.count(key)) throw ConfigError("unknown key '" + section + "." + key + "'");
    }
  }

  void expect_sections(const std::set<std::string>& names) const {
    for (const auto& [name, _] : values_) {
      if (!names.count(name)) throw ConfigError("unknown section [" + name + "]");
    }
  }

  const std::string* get(const std::string& section, const std::string& key) const {
    const auto s = values_.find(section);
    if (s == values_.end()) return nullptr;
    const auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  }

  void read(const std::string& section, const std::string& key, double& out) const {
    if (const auto* v = get(section, key)) out = to_double(*v, section + "." + key);
  }
  void read(const std::string& section, const std::string& key, int& out) const {
    if (const auto* v = get(section, key)) out = static_cast<int>(to_long(*v, section + "." + key));
  }
  void read(const std::string& section, const std::string& key, bool& out) const {
    if (const auto* v = get(section, key)) out = to_bool(*v, section + "." + key);
  }

 private:
  std::map<std::string, std::map<std::string, std::string>> values_;
};

}  // namespace

std::vector<EgoPose> Scenario::poses(const RoadGeometry& road) const {
  if (const auto* explicit_poses = std::get_if<std::vector<EgoPose>>(&ego)) return *explicit_poses;
  const auto& path = std::get<EgoPath>(ego);
  std::vector<EgoPose> out;
  out.reserve(static_cast<std::size_t>(std::max(path.count, 0)));
  for (int i = 0; i < path.count; ++i) {
    out.push_back(ego_in_lane(road, path.start_station + i * path.step, path.lane, path.offset_in_lane,
                              path.heading_offset));
  }
  return out;
}

void Scenario::validate() const {
  const RoadGeometry geometry(road);
  sensor.validate();
  aldm.validate();
  if (!run_baseline && !run_aldm) throw InvalidSpec("scenario enables no detector");
  if (const auto* path = std::get_if<EgoPath>(&ego); path && path->count < 1) {
    throw InvalidSpec("ego path count must be >= 1");
  }
  const auto all = poses(geometry);
  if (all.empty()) throw InvalidSpec("scenario has no ego poses");
  for (const auto& pose : all) {
    if (pose.station < 0.0 || pose.station > geometry.length()) throw InvalidSpec("ego pose outside road extent");
    if (!geometry.lane_at(pose.lateral_offset)) throw InvalidSpec("ego pose is not inside any lane");
  }
}

Scenario parse_scenario(std::istream& in, const std::string& name) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(e.what());
  }
  const Sections cfg(tree);
  cfg.expect_sections({"scenario", "road", "ego", "sensor", "aldm"});
  cfg.expect("scenario", {"name", "detectors", "frame_dt"});
  cfg.expect("road", {"segments", "lane_count", "lane_width", "markings"});
  cfg.expect("ego", {"start", "step", "count", "lane", "offset", "heading", "poses"});
  cfg.expect("sensor", {"ld_range", "dx", "near_offset", "max_lines", "max_points_per_line", "lateral_window",
                        "merge_markings", "noise_sigma", "noise_seed"});
  cfg.expect("aldm", {"max_gap", "seed_max_x", "seed_min_separation", "min_preview", "adjacent_min_lateral",
                      "output_points", "max_residual", "residual_tie_tolerance"});

  Scenario s;
  s.name = name;
  if (const auto* v = cfg.get("scenario", "name")) s.name = trim(*v);
  cfg.read("scenario", "frame_dt", s.frame_dt);
  if (const auto* v = cfg.get("scenario", "detectors")) {
    s.run_baseline = s.run_aldm = false;
    for (const auto& d : split(*v, ',')) {
      if (d == "baseline") {
        s.run_baseline = true;
      } else if (d == "aldm") {
        s.run_aldm = true;
      } else {
        throw ConfigError("scenario.detectors: unknown detector '" + d + "'");
      }
    }
  }

  const auto* segments = cfg.get("road", "segments");
  if (!segments) throw ConfigError("missing required key road.segments");
  for (const auto& seg : split(*segments, ',')) s.road.segments.push_back(parse_segment(seg));
  cfg.read("road", "lane_count", s.road.lane_count);
  cfg.read("road", "lane_width", s.road.lane_width);
  if (const auto* v = cfg.get("road", "markings")) {
    for (const auto& m : split(*v, ',')) s.road.boundary_markings.push_back(parse_marking(m));
  } else {
    s.road.boundary_markings.assign(static_cast<std::size_t>(std::max(s.road.lane_count + 1, 0)),
                                    MarkingSpec::continuous());
  }

  if (const auto* v = cfg.get("ego", "poses")) {
    std::vector<EgoPose> poses;
    for (const auto& item : split(*v, ',')) {
      const auto parts = split(item, ':');
      if (parts.size() < 2 || parts.size() > 3) throw ConfigError("ego.poses: expected station:lateral[:heading]");
      EgoPose pose{to_double(parts[0], "ego.poses"), to_double(parts[1], "ego.poses"),
                   parts.size() == 3 ? to_double(parts[2], "ego.poses") : 0.0};
      poses.push_back(pose);
    }
    s.ego = std::move(poses);
  } else {
    EgoPath path;
    cfg.read("ego", "start", path.start_station);
    cfg.read("ego", "step", path.step);
    cfg.read("ego", "count", path.count);
    cfg.read("ego", "lane", path.lane);
    cfg.read("ego", "offset", path.offset_in_lane);
    cfg.read("ego", "heading", path.heading_offset);
    s.ego = path;
  }

  cfg.read("sensor", "ld_range", s.sensor.ld_range);
  cfg.read("sensor", "dx", s.sensor.dx);
  cfg.read("sensor", "near_offset", s.sensor.near_offset);
  cfg.read("sensor", "max_lines", s.sensor.max_lines);
  cfg.read("sensor", "max_points_per_line", s.sensor.max_points_per_line);
  cfg.read("sensor", "lateral_window", s.sensor.lateral_window);
  cfg.read("sensor", "merge_markings", s.sensor.merge_markings);
  cfg.read("sensor", "noise_sigma", s.sensor.noise_sigma);
  if (const auto* v = cfg.get("sensor", "noise_seed")) {
    const long seed = to_long(*v, "sensor.noise_seed");
    if (seed < 0) throw ConfigError("sensor.noise_seed must be >= 0");
    s.sensor.noise_seed = static_cast<std::uint64_t>(seed);
  }

  cfg.read("aldm", "max_gap", s.aldm.max_gap);
  cfg.read("aldm", "seed_max_x", s.aldm.seed_max_x);
  cfg.read("aldm", "seed_min_separation", s.aldm.seed_min_separation);
  cfg.read("aldm", "min_preview", s.aldm.min_preview);
  cfg.read("aldm", "adjacent_min_lateral", s.aldm.adjacent_min_lateral);
  cfg.read("aldm", "output_points", s.aldm.output_points);
  cfg.read("aldm", "max_residual", s.aldm.max_residual);
  cfg.read("aldm", "residual_tie_tolerance", s.aldm.residual_tie_tolerance);

  try {
    s.validate();
  } catch (const InvalidSpec& e) {
    throw ConfigError(std::string("invalid scenario: ") + e.what());
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario config '" + path.string() + "'");
  return parse_scenario(in, path.stem().string());
}

std::string to_config_text(const Scenario& s) {
  std::ostringstream out;
  out << "[scenario]\n"
      << "name = " << s.name << '\n'
      << "detectors = "
      << (s.run_baseline && s.run_aldm ? "baseline, aldm" : s.run_baseline ? "baseline" : "aldm") << '\n'
      << "frame_dt = " << num(s.frame_dt) << "\n\n";

  out << "[road]\nsegments = ";
  for (std::size_t i = 0; i < s.road.segments.size(); ++i) {
    out << (i ? ", " : "") << format_segment(s.road.segments[i]);
  }
  out << "\nlane_count = " << s.road.lane_count << "\nlane_width = " << num(s.road.lane_width) << "\nmarkings = ";
  for (std::size_t i = 0; i < s.road.boundary_markings.size(); ++i) {
    out << (i ? ", " : "") << format_marking(s.road.boundary_markings[i]);
  }
  out << "\n\n[ego]\n";
  if (const auto* path = std::get_if<EgoPath>(&s.ego)) {
    out << "start = " << num(path->start_station) << "\nstep = " << num(path->step) << "\ncount = " << path->count
        << "\nlane = " << path->lane << "\noffset = " << num(path->offset_in_lane)
        << "\nheading = " << num(path->heading_offset) << '\n';
  } else {
    const auto& poses = std::get<std::vector<EgoPose>>(s.ego);
    out << "poses = ";
    for (std::size_t i = 0; i < poses.size(); ++i) {
      out << (i ? ", " : "") << num(poses[i].station) << ':' << num(poses[i].lateral_offset) << ':'
          << num(poses[i].heading_offset);
    }
    out << '\n';
  }

  const SensorConfig& c = s.sensor;
  out << "\n[sensor]\nld_range = " << num(c.ld_range) << "\ndx = " << num(c.dx)
      << "\nnear_offset = " << num(c.near_offset) << "\nmax_lines = " << c.max_lines
      << "\nmax_points_per_line = " << c.max_points_per_line << "\nlateral_window = " << num(c.lateral_window)
      << "\nmerge_markings = " << (c.merge_markings ? "true" : "false") << "\nnoise_sigma = " << num(c.noise_sigma)
      << "\nnoise_seed = " << c.noise_seed << '\n';

  const AldmParams& a = s.aldm;
  out << "\n[aldm]\nmax_gap = " << num(a.max_gap) << "\nseed_max_x = " << num(a.seed_max_x)
      << "\nseed_min_separation = " << num(a.seed_min_separation) << "\nmin_preview = " << num(a.min_preview)
      << "\nadjacent_min_lateral = " << num(a.adjacent_min_lateral) << "\noutput_points = " << a.output_points
      << "\nmax_residual = " << num(a.max_residual) << "\nresidual_tie_tolerance = " << num(a.residual_tie_tolerance) << '\n';
  return out.str();
}

std::vector<std::string> builtin_scenario_names() {
  return {"worst_case", "straight_3lane", "fig3_simple", "fig4_fragmented", "arc_500", "empty_road"};
}

Scenario builtin_scenario(const std::string& name) {
  Scenario s;
  s.name = name;
  if (name == "worst_case") {
    // Two-lane carriageway entering a 500 m right-hand curve. The ego drives the right lane as far
    // left as a 1.8 m wide vehicle can without touching the dashed guiding line. The dash pattern
    // ends 0.12 m short of the first sensed station at frame 0, so the nearest visible dash is a
    // full gap away. The far-left edge is a barrier and carries no painted marking.
    s.road.segments = {Straight{60.0}, Arc{500.0, -0.7}};
    s.road.lane_count = 2;
    s.road.boundary_markings = {MarkingSpec::continuous(), MarkingSpec::dashed(6.0, 12.0, 5.4), MarkingSpec::none()};
    s.ego = EgoPath{60.0, 2.0, 9, 0, 1.875 - 0.9, 0.0};
  } else if (name == "straight_3lane") {
    s.road.segments = {Straight{800.0}};
    s.road.lane_count = 3;
    s.road.boundary_markings = {MarkingSpec::continuous(), MarkingSpec::dashed(), MarkingSpec::dashed(),
                                MarkingSpec::continuous()};
    s.ego = EgoPath{50.0, 25.0, 10, 1, 0.0, 0.0};
  } else if (name == "fig3_simple") {
    // Editor-style road: every marking arrives as a single object.
    s.road.segments = {Straight{500.0}};
    s.road.lane_count = 2;
    s.road.boundary_markings = {MarkingSpec::continuous(), MarkingSpec::dashed(), MarkingSpec::continuous()};
    s.sensor.merge_markings = true;
    s.ego = EgoPath{20.0, 20.0, 5, 0, 0.0, 0.0};
  } else if (name == "fig4_fragmented") {
    // Same road as fig3_simple but one object per dash.
    s.road.segments = {Straight{500.0}};
    s.road.lane_count = 2;
    s.road.boundary_markings = {MarkingSpec::continuous(), MarkingSpec::dashed(), MarkingSpec::continuous()};
    s.ego = EgoPath{20.0, 20.0, 5, 0, 0.0, 0.0};
  } else if (name == "arc_500") {
    // Single lane on a 500 m right-hand arc; the lateral window is widened so the whole 200 m
    // range stays visible.
    s.road.segments = {Arc{500.0, -1.0}};
    s.road.lane_count = 1;
    s.road.boundary_markings = {MarkingSpec::continuous(), MarkingSpec::continuous()};
    s.sensor.lateral_window = 45.0;
    s.ego = EgoPath{0.0, 10.0, 5, 0, 0.0, 0.0};
  } else if (name == "empty_road") {
    s.road.segments = {Straight{400.0}};
    s.road.lane_count = 2;
    s.road.boundary_markings = {MarkingSpec::none(), MarkingSpec::none(), MarkingSpec::none()};
    s.ego = EgoPath{0.0, 10.0, 3, 0, 0.0, 0.0};
  } else {
    throw ConfigError("unknown built-in scenario '" + name + "'");
  }
  s.validate();
  return s;
}

}  // namespace aldm
