#pragma once
#include <iosfwd>
#include <string>

#include "rvmon/stream.hpp"

namespace rvmon {

// Trace files are JSON Lines, one event per line:
//   {"t": <seconds>, "channel": "<name>", "value": <number|boolean>}
// Lines are globally sorted by t; ties across channels are allowed, ties
// within a channel are rejected by the per-stream append.
Trace read_trace(std::istream& in);
Trace read_trace_file(const std::string& path);

void write_trace(const Trace& trace, std::ostream& out);
void write_trace_file(const Trace& trace, const std::string& path);

// Verdict output lines carry the originating monitor:
//   {"t": s, "monitor": id, "channel": name, "value": v}
void write_verdict_line(std::ostream& out, const std::string& monitor,
                        const std::string& channel, TimePoint t,
                        const Value& v);

}  // namespace rvmon
