#include <charconv>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "aldm/errors.hpp"
#include "aldm/harness.hpp"
#include "aldm/scenario.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

std::optional<std::pair<int, int>> parse_frames(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto dots = text.find("..");
  const std::string a = dots == std::string::npos ? text : text.substr(0, dots);
  const std::string b = dots == std::string::npos ? text : text.substr(dots + 2);
  int lo = 0;
  int hi = 0;
  const auto ra = std::from_chars(a.data(), a.data() + a.size(), lo);
  const auto rb = std::from_chars(b.data(), b.data() + b.size(), hi);
  if (ra.ec != std::errc() || ra.ptr != a.data() + a.size() || rb.ec != std::errc() ||
      rb.ptr != b.data() + b.size() || lo < 0 || hi < lo) {
    throw aldm::ConfigError("--frames expects a..b with 0 <= a <= b, got '" + text + "'");
  }
  return std::pair{lo, hi};
}

std::string opt(const std::optional<double>& v) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", *v);
  return buf;
}

void print_detector(const char* name, const aldm::DetectorReport& rep) {
  if (!rep.enabled) return;
  std::printf("  %-8s %s purity=%.4f preview=%.2fm traj_max=%s lines=%d seed_failures=%d%s\n", name,
              rep.failed ? "FAIL" : "ok  ", rep.purity, rep.preview, opt(rep.trajectory_max_error).c_str(),
              rep.lines_detected, rep.seed_failures, rep.cross_assignment ? " cross-assigned" : "");
  if (rep.failed) std::printf("           %s\n", rep.error.c_str());
}

struct RunArgs {
  std::string out = "aldm_out";
  bool plots = false;
  std::string frames;
  unsigned threads = 0;
};

void add_run_options(CLI::App* cmd, RunArgs& args) {
  cmd->add_option("--out", args.out, "Output directory")->capture_default_str();
  cmd->add_flag("--plots", args.plots, "Write frame_<n>.svg for each frame");
  cmd->add_option("--frames", args.frames, "Inclusive frame range a..b");
  cmd->add_option("--threads", args.threads, "Worker threads (0 = hardware concurrency)");
}

int execute(const aldm::Scenario& scenario, const RunArgs& args) {
  aldm::RunOptions options;
  options.frames = parse_frames(args.frames);
  options.threads = args.threads;
  const aldm::ScenarioResult result = aldm::run_scenario(scenario, options);
  try {
    aldm::write_outputs(result, args.out, args.plots);
  } catch (const aldm::Error& e) {
    std::cerr << "aldm: " << e.what() << '\n';
    return kExitIo;
  }
  std::printf("scenario %s: %zu frame(s), %d frame error(s)\n", scenario.name.c_str(), result.frames.size(),
              result.frame_errors);
  for (const auto& fr : result.frames) {
    std::printf("frame %d station=%.2f runtime=%.3fms\n", fr.report.index, fr.report.ego.station, fr.runtime_ms);
    print_detector("baseline", fr.report.baseline);
    print_detector("aldm", fr.report.aldm);
  }
  std::printf("outputs written to %s\n", args.out.c_str());
  return result.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lane detection scenario runner"};
  app.require_subcommand(1);

  std::string config_path;
  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run a scenario config file");
  run->add_option("config", config_path, "Scenario config (INI)")->required();
  add_run_options(run, run_args);

  std::string builtin_name;
  RunArgs builtin_args;
  auto* run_builtin = app.add_subcommand("run-builtin", "Run a built-in scenario");
  run_builtin->add_option("name", builtin_name, "Scenario name")->required();
  add_run_options(run_builtin, builtin_args);

  auto* list = app.add_subcommand("list-scenarios", "List built-in scenarios");

  std::string show_name;
  auto* show = app.add_subcommand("show-builtin", "Print a built-in scenario as a config file");
  show->add_option("name", show_name, "Scenario name")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      for (const auto& name : aldm::builtin_scenario_names()) std::cout << name << '\n';
      return 0;
    }
    if (*show) {
      std::cout << aldm::to_config_text(aldm::builtin_scenario(show_name));
      return 0;
    }
    if (*run) return execute(aldm::load_scenario(config_path), run_args);
    if (*run_builtin) return execute(aldm::builtin_scenario(builtin_name), builtin_args);
  } catch (const aldm::ConfigError& e) {
    std::cerr << "aldm: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const aldm::InvalidSpec& e) {
    std::cerr << "aldm: invalid scenario: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
