#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rvmon/align.hpp"
#include "rvmon/dataflow.hpp"
#include "rvmon/stream.hpp"

namespace rvmon {

enum class MonitorLevel { Data, Functional };

std::string level_name(MonitorLevel level);

// Maps spec input names to trace channel names. An empty map binds each
// input to the channel of the same name.
using StreamBinding = std::map<std::string, std::string>;

struct MonitorInstance {
  std::string id;
  MonitorLevel level = MonitorLevel::Data;
  SpecAst ast;  // typechecked; kept for the reference interpreter
  DataflowGraph graph;
  StreamBinding binding;
  // Bool output whose true ticks mean "property violated".
  std::string verdict_channel;
};

MonitorInstance make_monitor(const std::string& id, MonitorLevel level,
                             const std::string& spec_text,
                             StreamBinding binding = {},
                             std::string verdict_channel = "");

struct MonitorOutputs {
  // one stream per spec output, defined ticks only
  std::map<std::string, EventStream> outputs;
  std::vector<TimePoint> ticks;
  std::int64_t sample_period_ms = 0;
};

// Online/offline evaluation of one compiled monitor over a trace. The trace
// is read-only; evaluation state lives on the stack.
MonitorOutputs evaluate(const MonitorInstance& monitor, const Trace& trace);

// Incremental evaluation for streaming use: feed event batches, collect
// verdict events as they become available.
class StreamingEvaluator {
 public:
  explicit StreamingEvaluator(const MonitorInstance& monitor);

  // Events must arrive globally sorted by time. Returns the output events
  // produced by this batch.
  std::vector<std::pair<std::string, Event>> feed(
      const std::vector<std::pair<std::string, Event>>& batch);

 private:
  const MonitorInstance& monitor_;
  Trace buffered_;
  std::size_t emitted_ticks_ = 0;
};

// Direct tree-walking evaluation of a typechecked AST; the oracle the
// compiled graph is checked against.
MonitorOutputs interpret_reference(const SpecAst& ast, const Trace& trace,
                                   const StreamBinding& binding = {});

struct MonitorReport {
  std::string id;
  MonitorLevel level = MonitorLevel::Data;
  std::size_t evaluated_ticks = 0;
  std::size_t violation_ticks = 0;
  std::size_t ok_ticks = 0;
  // closed intervals [start, end] in seconds, disjoint and sorted
  std::vector<std::pair<double, double>> intervals;
  std::optional<double> first_detection;
  std::optional<std::string> error;
};

struct VerdictReport {
  std::vector<MonitorReport> monitors;
};

// Summarize a Bool verdict stream. Consecutive violation ticks no further
// apart than the sampling period merge into one interval.
MonitorReport summarize(const MonitorInstance& monitor,
                        const MonitorOutputs& outputs);

// Evaluates each monitor independently over the shared read-only trace.
// A failing monitor is reported via its error field; the others proceed.
// The parallel path distributes monitors across OpenMP threads; the serial
// path is the reference implementation and must produce identical reports.
VerdictReport run_set(const std::vector<MonitorInstance>& monitors,
                      const Trace& trace);
VerdictReport run_set_serial(const std::vector<MonitorInstance>& monitors,
                             const Trace& trace);

}  // namespace rvmon
