// Command-line front end: offline/online monitor execution over traces,
// scenario simulation with attack injection, and report rendering.
#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "rvmon/builtin_specs.hpp"
#include "rvmon/engine.hpp"
#include "rvmon/errors.hpp"
#include "rvmon/scenario.hpp"
#include "rvmon/trace_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rvmon;

namespace {

int log_level() {
  const char* env = std::getenv("RVMON_LOG");
  if (!env) return 1;
  std::string s = env;
  if (s == "error") return 0;
  if (s == "debug") return 2;
  return 1;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[rvmon] " << msg << "\n";
}
void log_debug(const std::string& msg) {
  if (log_level() >= 2) std::cerr << "[rvmon:debug] " << msg << "\n";
}

json report_to_json(const MonitorReport& r) {
  json j;
  j["id"] = r.id;
  j["level"] = level_name(r.level);
  j["evaluated_ticks"] = r.evaluated_ticks;
  j["violation_ticks"] = r.violation_ticks;
  j["ok_ticks"] = r.ok_ticks;
  j["intervals"] = json::array();
  for (const auto& [a, b] : r.intervals) j["intervals"].push_back({a, b});
  j["first_detection"] =
      r.first_detection ? json(*r.first_detection) : json(nullptr);
  j["error"] = r.error ? json(*r.error) : json(nullptr);
  return j;
}

void write_json_file(const json& j, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path.string());
  out << j.dump(2) << "\n";
}

StreamBinding parse_bindings(const std::vector<std::string>& binds) {
  StreamBinding binding;
  for (const auto& b : binds) {
    auto eq = b.find('=');
    if (eq == std::string::npos)
      throw ConfigError("--bind expects INPUT=CHANNEL, got '" + b + "'");
    binding[b.substr(0, eq)] = b.substr(eq + 1);
  }
  return binding;
}

struct MonitorRun {
  MonitorInstance monitor;
  MonitorOutputs outputs;
  MonitorReport report;
};

void write_verdicts(const std::vector<MonitorRun>& runs, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path.string());
  for (const auto& run : runs)
    for (const auto& [name, stream] : run.outputs.outputs)
      for (const auto& e : stream.events())
        write_verdict_line(out, run.monitor.id, name, e.t, e.value);
}

bool any_violations(const std::vector<MonitorRun>& runs) {
  for (const auto& run : runs)
    if (run.report.violation_ticks > 0) return true;
  return false;
}

int cmd_check(const std::string& spec_path, const std::string& trace_path,
              const std::vector<std::string>& binds,
              const std::string& verdict, const std::string& out_dir) {
  std::ifstream spec_in(spec_path);
  if (!spec_in) throw ConfigError("cannot open spec file: " + spec_path);
  std::string text((std::istreambuf_iterator<char>(spec_in)),
                   std::istreambuf_iterator<char>());

  MonitorInstance monitor =
      make_monitor(fs::path(spec_path).stem().string(), MonitorLevel::Data,
                   text, parse_bindings(binds), verdict);
  Trace trace = read_trace_file(trace_path);
  log_debug("loaded " + std::to_string(trace.size()) + " channels");

  MonitorRun run{std::move(monitor), {}, {}};
  run.outputs = evaluate(run.monitor, trace);
  run.report = summarize(run.monitor, run.outputs);

  fs::create_directories(out_dir);
  std::vector<MonitorRun> runs;
  runs.push_back(std::move(run));
  write_verdicts(runs, fs::path(out_dir) / "verdicts.jsonl");
  json j;
  j["monitors"] = json::array({report_to_json(runs[0].report)});
  write_json_file(j, fs::path(out_dir) / "report.json");

  log_info("monitor " + runs[0].monitor.id + ": " +
           std::to_string(runs[0].report.violation_ticks) + " violation ticks");
  return any_violations(runs) ? 2 : 0;
}

AttackSpec resolve_attack(const std::string& attack_arg,
                          const AttackSpec& from_scenario) {
  if (attack_arg.empty()) return from_scenario;
  if (attack_arg == "none") return AttackSpec{};
  if (attack_arg == "data") {
    AttackSpec a;
    a.kind = AttackKind::DataSpoof;
    a.target = "rel_vel";
    a.schedule = {{3.1, 0.1, 12.0}, {4.4, 0.1, 12.0}};
    return a;
  }
  if (attack_arg == "functional") {
    AttackSpec a;
    a.kind = AttackKind::FunctionalFault;
    a.fault_t_start = 0.0;
    a.clamp_value = 1;
    return a;
  }
  if (attack_arg.rfind("file:", 0) == 0)
    return parse_attack_file(attack_arg.substr(5));
  throw ConfigError("--attack must be none, data, functional or file:PATH");
}

std::string attack_name(AttackKind k) {
  switch (k) {
    case AttackKind::None: return "none";
    case AttackKind::DataSpoof: return "data_spoof";
    default: return "functional_fault";
  }
}

MonitorInstance monitor_from_arg(const std::string& arg) {
  if (find_builtin(arg)) return builtin_monitor(arg);
  std::ifstream in(arg);
  if (!in) throw ConfigError("monitor '" + arg + "' is neither built-in nor a readable file");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return make_monitor(fs::path(arg).stem().string(), MonitorLevel::Data, text);
}

void write_plot_csv(const Trace& trace, const std::vector<MonitorRun>& runs,
                    const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path.string());

  std::vector<std::string> channels = {"headway",       "rel_vel",
                                       "ttc",           "pb2_stop_time",
                                       "aeb_status",    "fcw_active"};
  std::vector<const EventStream*> streams;
  std::vector<std::string> present;
  for (const auto& c : channels) {
    auto it = trace.find(c);
    if (it != trace.end()) {
      streams.push_back(&it->second);
      present.push_back(c);
    }
  }
  std::vector<EventStream> verdicts;
  for (const auto& run : runs)
    if (!run.monitor.verdict_channel.empty())
      verdicts.push_back(
          run.outputs.outputs.at(run.monitor.verdict_channel));
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    streams.push_back(&verdicts[i]);
    present.push_back("verdict_" + runs[i].monitor.id);
  }

  AlignedTrace aligned = align(streams);
  out << "t";
  for (const auto& c : present) out << "," << c;
  out << "\n";
  for (std::size_t tick = 0; tick < aligned.times.size(); ++tick) {
    out << value_to_string(Value{aligned.times[tick].seconds()});
    for (std::size_t i = 0; i < present.size(); ++i) {
      out << ",";
      const auto& v = aligned.values[tick][i];
      if (!v) continue;
      if (auto* b = std::get_if<bool>(&*v))
        out << (*b ? 1 : 0);
      else
        out << value_to_string(*v);
    }
    out << "\n";
  }
}

int cmd_sim(const std::string& scenario_path, const std::string& attack_arg,
            const std::string& monitors_arg, const std::string& out_dir) {
  SimConfig cfg = scenario_path.empty()
                      ? parse_scenario(default_scenario_toml())
                      : parse_scenario_file(scenario_path);
  cfg.attack = resolve_attack(attack_arg, cfg.attack);
  cfg.validate();

  SimConfig clean_cfg = cfg;
  clean_cfg.attack = AttackSpec{};

  log_info("running scenario (attack=" + attack_name(cfg.attack.kind) + ")");
  RunResult clean = run_scenario(clean_cfg);
  RunResult attacked =
      cfg.attack.kind == AttackKind::None ? clean : run_scenario(cfg);

  std::vector<MonitorRun> runs;
  std::string monitors = monitors_arg.empty() ? "p2,p3,p4" : monitors_arg;
  std::stringstream ss(monitors);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    MonitorRun run{monitor_from_arg(item), {}, {}};
    run.outputs = evaluate(run.monitor, attacked.trace);
    run.report = summarize(run.monitor, run.outputs);
    runs.push_back(std::move(run));
  }

  fs::create_directories(out_dir);
  write_trace_file(clean.trace, (fs::path(out_dir) / "clean_trace.jsonl").string());
  write_trace_file(attacked.trace, (fs::path(out_dir) / "trace.jsonl").string());
  write_verdicts(runs, fs::path(out_dir) / "verdicts.jsonl");
  write_plot_csv(attacked.trace, runs, fs::path(out_dir) / "plot.csv");

  json j;
  j["attack"] = attack_name(cfg.attack.kind);
  j["collision"] = attacked.collision;
  j["collision_time"] = attacked.collision_time
                            ? json(*attacked.collision_time)
                            : json(nullptr);
  j["min_headway"] = attacked.min_headway;
  j["clean_min_headway"] = clean.min_headway;
  j["monitors"] = json::array();
  for (const auto& run : runs)
    j["monitors"].push_back(report_to_json(run.report));
  write_json_file(j, fs::path(out_dir) / "report.json");

  for (const auto& run : runs)
    log_info("monitor " + run.monitor.id + " (" +
             level_name(run.monitor.level) + "): " +
             std::to_string(run.report.intervals.size()) +
             " violation intervals");
  return any_violations(runs) ? 2 : 0;
}

int cmd_report(const std::string& run_dir) {
  fs::path path = fs::path(run_dir) / "report.json";
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: no report.json in " << run_dir << "\n";
    return 1;
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    std::cerr << "error: corrupt report: " << e.what() << "\n";
    return 1;
  }

  bool any = false;
  std::vector<std::string> detecting_levels;
  std::printf("%-12s %-12s %10s %10s  %s\n", "monitor", "level", "violations",
              "intervals", "first detection");
  for (const auto& m : j.at("monitors")) {
    std::size_t ticks = m.at("violation_ticks").get<std::size_t>();
    std::string first = m.at("first_detection").is_null()
                            ? "-"
                            : std::to_string(
                                  m.at("first_detection").get<double>()) + " s";
    std::printf("%-12s %-12s %10zu %10zu  %s\n",
                m.at("id").get<std::string>().c_str(),
                m.at("level").get<std::string>().c_str(), ticks,
                m.at("intervals").size(), first.c_str());
    if (ticks > 0) {
      any = true;
      std::string level = m.at("level").get<std::string>();
      if (std::find(detecting_levels.begin(), detecting_levels.end(), level) ==
          detecting_levels.end())
        detecting_levels.push_back(level);
    }
  }
  if (j.contains("collision"))
    std::printf("collision: %s\n",
                j.at("collision").get<bool>() ? "yes" : "no");
  if (!any) {
    std::printf("no violations\n");
  } else {
    std::string levels;
    for (const auto& l : detecting_levels)
      levels += (levels.empty() ? "" : ", ") + l;
    std::printf("detected at level(s): %s\n", levels.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stream runtime verification toolkit"};
  app.require_subcommand(1);

  std::string spec_path, trace_path, verdict, out_dir = "out";
  std::vector<std::string> binds;
  auto* check = app.add_subcommand("check", "run a monitor over a trace file");
  check->add_option("--spec", spec_path, "specification file (.tsl)")
      ->required();
  check->add_option("--trace", trace_path, "trace file (JSON Lines)")
      ->required();
  check->add_option("--bind", binds, "input binding INPUT=CHANNEL");
  check->add_option("--verdict", verdict, "verdict output name");
  check->add_option("--out", out_dir, "output directory");

  std::string scenario_path, attack_arg, monitors_arg, sim_out = "out";
  auto* sim = app.add_subcommand("sim", "simulate a scenario and monitor it");
  sim->add_option("--scenario", scenario_path, "scenario config (TOML)");
  sim->add_option("--attack", attack_arg,
                  "none | data | functional | file:PATH");
  sim->add_option("--monitors", monitors_arg,
                  "comma list of built-ins (p1..p4) or spec paths");
  sim->add_option("--out", sim_out, "output directory");

  std::string run_dir;
  auto* report = app.add_subcommand("report", "summarize a run directory");
  report->add_option("dir", run_dir, "run directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed())
      return cmd_check(spec_path, trace_path, binds, verdict, out_dir);
    if (sim->parsed())
      return cmd_sim(scenario_path, attack_arg, monitors_arg, sim_out);
    return cmd_report(run_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
