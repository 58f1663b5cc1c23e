#include "rvmon/trace_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>
#include <vector>

#include "rvmon/errors.hpp"

namespace rvmon {

namespace {

using nlohmann::json;

Value value_from_json(const json& j, int line_no) {
  if (j.is_boolean()) return Value{j.get<bool>()};
  if (j.is_number_integer() || j.is_number_unsigned())
    return Value{j.get<std::int64_t>()};
  if (j.is_number_float()) return Value{j.get<double>()};
  throw ConfigError("trace line " + std::to_string(line_no) +
                    ": value must be a number or boolean");
}

json value_to_json(const Value& v) {
  if (auto* i = std::get_if<std::int64_t>(&v)) return json(*i);
  if (auto* b = std::get_if<bool>(&v)) return json(*b);
  return json(std::get<double>(v));
}

}  // namespace

Trace read_trace(std::istream& in) {
  Trace trace;
  std::string line;
  int line_no = 0;
  TimePoint last{-1};
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ConfigError("trace line " + std::to_string(line_no) +
                        ": invalid JSON: " + e.what());
    }
    if (!j.contains("t") || !j.contains("channel") || !j.contains("value"))
      throw ConfigError("trace line " + std::to_string(line_no) +
                        ": expected fields t, channel, value");
    TimePoint t = TimePoint::from_seconds(j.at("t").get<double>());
    if (t.ms < 0)
      throw ConfigError("trace line " + std::to_string(line_no) +
                        ": negative timestamp");
    if (t < last)
      throw ConfigError("trace line " + std::to_string(line_no) +
                        ": timestamps not globally sorted");
    last = t;
    std::string channel = j.at("channel").get<std::string>();
    auto [it, inserted] = trace.try_emplace(channel, channel);
    try {
      it->second.append(Event{t, value_from_json(j.at("value"), line_no)});
    } catch (const Error& e) {
      throw ConfigError("trace line " + std::to_string(line_no) + ": " +
                        e.what());
    }
  }
  return trace;
}

Trace read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open trace file: " + path);
  return read_trace(in);
}

void write_trace(const Trace& trace, std::ostream& out) {
  // Merge all channels globally sorted by (t, channel) so the file is
  // byte-stable for a fixed trace.
  struct Cursor {
    const EventStream* s;
    std::size_t i = 0;
  };
  std::vector<Cursor> cs;
  for (const auto& [name, s] : trace) cs.push_back({&s});
  for (;;) {
    Cursor* best = nullptr;
    for (auto& c : cs) {
      if (c.i >= c.s->size()) continue;
      if (!best || c.s->events()[c.i].t < best->s->events()[best->i].t)
        best = &c;
    }
    if (!best) break;
    const Event& e = best->s->events()[best->i++];
    json j;
    j["t"] = e.t.seconds();
    j["channel"] = best->s->channel();
    j["value"] = value_to_json(e.value);
    out << j.dump() << "\n";
  }
}

void write_trace_file(const Trace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path);
  write_trace(trace, out);
}

void write_verdict_line(std::ostream& out, const std::string& monitor,
                        const std::string& channel, TimePoint t,
                        const Value& v) {
  json j;
  j["t"] = t.seconds();
  j["monitor"] = monitor;
  j["channel"] = channel;
  j["value"] = value_to_json(v);
  out << j.dump() << "\n";
}

}  // namespace rvmon
