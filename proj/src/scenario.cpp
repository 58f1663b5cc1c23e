#include "rvmon/scenario.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <variant>
#include <vector>

#include "rvmon/errors.hpp"

namespace rvmon {

namespace {

// Minimal TOML subset: sections, key = value with booleans, numbers,
// quoted strings and (nested) numeric arrays. Enough for scenario files.
struct TomlValue {
  std::variant<bool, double, std::string, std::vector<TomlValue>> v;

  bool as_bool(const std::string& key) const {
    if (auto* b = std::get_if<bool>(&v)) return *b;
    throw ConfigError("key '" + key + "' must be a boolean");
  }
  double as_number(const std::string& key) const {
    if (auto* d = std::get_if<double>(&v)) return *d;
    throw ConfigError("key '" + key + "' must be a number");
  }
  std::string as_string(const std::string& key) const {
    if (auto* s = std::get_if<std::string>(&v)) return *s;
    throw ConfigError("key '" + key + "' must be a string");
  }
  const std::vector<TomlValue>& as_array(const std::string& key) const {
    if (auto* a = std::get_if<std::vector<TomlValue>>(&v)) return *a;
    throw ConfigError("key '" + key + "' must be an array");
  }
};

using TomlTable = std::map<std::string, std::map<std::string, TomlValue>>;

class TomlParser {
 public:
  explicit TomlParser(const std::string& text) : text_(text) {}

  TomlTable run() {
    TomlTable table;
    std::istringstream in(text_);
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      strip_comment(line);
      std::string s = trim(line);
      if (s.empty()) continue;
      if (s.front() == '[') {
        if (s.back() != ']')
          throw ConfigError("line " + std::to_string(line_no) +
                            ": malformed section header");
        section = trim(s.substr(1, s.size() - 2));
        table.try_emplace(section);
        continue;
      }
      auto eq = s.find('=');
      if (eq == std::string::npos)
        throw ConfigError("line " + std::to_string(line_no) +
                          ": expected key = value");
      std::string key = trim(s.substr(0, eq));
      std::string val = trim(s.substr(eq + 1));
      if (key.empty() || val.empty())
        throw ConfigError("line " + std::to_string(line_no) +
                          ": expected key = value");
      std::size_t pos = 0;
      TomlValue v = parse_value(val, pos, line_no);
      if (pos != val.size())
        throw ConfigError("line " + std::to_string(line_no) +
                          ": trailing characters after value");
      if (!table[section].emplace(key, std::move(v)).second)
        throw ConfigError("line " + std::to_string(line_no) +
                          ": duplicate key '" + key + "'");
    }
    return table;
  }

 private:
  static void strip_comment(std::string& line) {
    bool in_str = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') in_str = !in_str;
      if (line[i] == '#' && !in_str) {
        line.resize(i);
        return;
      }
    }
  }

  static std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }

  static void skip_ws(const std::string& s, std::size_t& pos) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }

  static TomlValue parse_value(const std::string& s, std::size_t& pos,
                               int line_no) {
    skip_ws(s, pos);
    if (pos >= s.size())
      throw ConfigError("line " + std::to_string(line_no) + ": missing value");
    char c = s[pos];
    if (c == '"') {
      auto end = s.find('"', pos + 1);
      if (end == std::string::npos)
        throw ConfigError("line " + std::to_string(line_no) +
                          ": unterminated string");
      TomlValue v{s.substr(pos + 1, end - pos - 1)};
      pos = end + 1;
      return v;
    }
    if (c == '[') {
      ++pos;
      std::vector<TomlValue> items;
      skip_ws(s, pos);
      if (pos < s.size() && s[pos] == ']') {
        ++pos;
        return TomlValue{std::move(items)};
      }
      for (;;) {
        items.push_back(parse_value(s, pos, line_no));
        skip_ws(s, pos);
        if (pos < s.size() && s[pos] == ',') {
          ++pos;
          continue;
        }
        if (pos < s.size() && s[pos] == ']') {
          ++pos;
          return TomlValue{std::move(items)};
        }
        throw ConfigError("line " + std::to_string(line_no) +
                          ": expected ',' or ']' in array");
      }
    }
    if (s.compare(pos, 4, "true") == 0) {
      pos += 4;
      return TomlValue{true};
    }
    if (s.compare(pos, 5, "false") == 0) {
      pos += 5;
      return TomlValue{false};
    }
    std::size_t end = pos;
    while (end < s.size() && (std::isdigit(static_cast<unsigned char>(s[end])) ||
                              s[end] == '.' || s[end] == '-' || s[end] == '+' ||
                              s[end] == 'e' || s[end] == 'E'))
      ++end;
    try {
      std::size_t used = 0;
      double d = std::stod(s.substr(pos, end - pos), &used);
      if (used != end - pos) throw std::invalid_argument("");
      pos = end;
      return TomlValue{d};
    } catch (...) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": cannot parse value '" + s.substr(pos) + "'");
    }
  }

  const std::string& text_;
};

AttackSpec attack_from_section(const std::map<std::string, TomlValue>& sec) {
  AttackSpec a;
  for (const auto& [key, val] : sec) {
    if (key == "kind") {
      std::string k = val.as_string(key);
      if (k == "none")
        a.kind = AttackKind::None;
      else if (k == "data_spoof")
        a.kind = AttackKind::DataSpoof;
      else if (k == "functional_fault")
        a.kind = AttackKind::FunctionalFault;
      else
        throw ConfigError("unknown attack kind '" + k + "'");
    } else if (key == "channel") {
      a.target = val.as_string(key);
    } else if (key == "schedule") {
      for (const auto& entry : val.as_array(key)) {
        const auto& triple = entry.as_array("schedule entry");
        if (triple.size() != 3)
          throw ConfigError(
              "schedule entries must be [t_start, duration, magnitude]");
        SpoofWindow w;
        w.t_start = triple[0].as_number("t_start");
        w.duration = triple[1].as_number("duration");
        w.magnitude = triple[2].as_number("magnitude");
        a.schedule.push_back(w);
      }
    } else if (key == "t_start") {
      a.fault_t_start = val.as_number(key);
    } else if (key == "clamp") {
      a.clamp_value = static_cast<int>(val.as_number(key));
    } else {
      throw ConfigError("unknown key '" + key + "' in [attack]");
    }
  }
  return a;
}

SimConfig config_from_table(const TomlTable& table) {
  SimConfig cfg;
  for (const auto& [section, keys] : table) {
    if (section == "sim") {
      for (const auto& [key, val] : keys) {
        if (key == "dt") cfg.dt = val.as_number(key);
        else if (key == "duration") cfg.duration = val.as_number(key);
        else if (key == "sensor_noise") cfg.sensor_noise = val.as_number(key);
        else if (key == "seed")
          cfg.seed = static_cast<unsigned>(val.as_number(key));
        else throw ConfigError("unknown key '" + key + "' in [sim]");
      }
    } else if (section == "ego") {
      for (const auto& [key, val] : keys) {
        if (key == "v0") cfg.ego_v0 = val.as_number(key);
        else throw ConfigError("unknown key '" + key + "' in [ego]");
      }
    } else if (section == "mio") {
      for (const auto& [key, val] : keys) {
        if (key == "lead_enabled") cfg.lead_enabled = val.as_bool(key);
        else if (key == "lead_gap") cfg.lead_gap = val.as_number(key);
        else if (key == "lead_speed") cfg.lead_speed = val.as_number(key);
        else if (key == "pedestrian_reveal_time")
          cfg.reveal_time = val.as_number(key);
        else if (key == "pedestrian_gap")
          cfg.pedestrian_gap = val.as_number(key);
        else throw ConfigError("unknown key '" + key + "' in [mio]");
      }
    } else if (section == "controller") {
      for (const auto& [key, val] : keys) {
        if (key == "a_driver") cfg.a_driver = val.as_number(key);
        else if (key == "a_pb1") cfg.a_pb1 = val.as_number(key);
        else if (key == "a_pb2") cfg.a_pb2 = val.as_number(key);
        else if (key == "a_fb") cfg.a_fb = val.as_number(key);
        else if (key == "t_react") cfg.t_react = val.as_number(key);
        else if (key == "headway_stop") cfg.headway_stop = val.as_number(key);
        else throw ConfigError("unknown key '" + key + "' in [controller]");
      }
    } else if (section == "attack") {
      cfg.attack = attack_from_section(keys);
    } else if (!section.empty()) {
      throw ConfigError("unknown section [" + section + "]");
    } else if (!keys.empty()) {
      throw ConfigError("top-level keys are not allowed");
    }
  }
  cfg.validate();
  return cfg;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

SimConfig parse_scenario(const std::string& text) {
  return config_from_table(TomlParser(text).run());
}

SimConfig parse_scenario_file(const std::string& path) {
  return parse_scenario(read_file(path));
}

AttackSpec parse_attack_file(const std::string& path) {
  TomlTable table = TomlParser(read_file(path)).run();
  auto it = table.find("attack");
  if (it == table.end())
    throw ConfigError("no [attack] section in " + path);
  return attack_from_section(it->second);
}

std::string default_scenario_toml() {
  return R"([sim]
dt = 0.1
duration = 10.0

[ego]
v0 = 10.0

[mio]
lead_enabled = false
pedestrian_reveal_time = 1.5
pedestrian_gap = 12.0

[controller]
a_driver = 4.0
a_pb1 = 3.8
a_pb2 = 5.3
a_fb = 9.8
t_react = 1.2

[attack]
kind = "none"
)";
}

}  // namespace rvmon
