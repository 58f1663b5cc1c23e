#include "rvmon/engine.hpp"

#include <map>

#include "rvmon/errors.hpp"

namespace rvmon {

std::string level_name(MonitorLevel level) {
  return level == MonitorLevel::Data ? "Data" : "Functional";
}

namespace {

std::optional<Kind> output_kind(const SpecAst& ast, const std::string& name) {
  if (auto k = ast.input_kind(name)) return k;
  if (const ExprPtr* e = ast.find_definition(name)) return (*e)->kind;
  return std::nullopt;
}

std::string pick_verdict_channel(const SpecAst& ast) {
  for (const char* preferred : {"violation", "attack"}) {
    for (const auto& out : ast.outputs)
      if (out == preferred && output_kind(ast, out) == Kind::Bool) return out;
  }
  std::string last_bool;
  for (const auto& out : ast.outputs)
    if (output_kind(ast, out) == Kind::Bool) last_bool = out;
  return last_bool;
}

// Resolve the monitor's declared inputs against the trace. Binding must be
// total when given; an empty binding is the identity.
std::vector<const EventStream*> bind_inputs(
    const std::vector<std::pair<std::string, Kind>>& inputs,
    const StreamBinding& binding, const Trace& trace) {
  std::vector<const EventStream*> bound;
  for (const auto& [name, kind] : inputs) {
    std::string channel = name;
    if (!binding.empty()) {
      auto it = binding.find(name);
      if (it == binding.end())
        throw UnboundChannel("no binding for spec input '" + name + "'");
      channel = it->second;
    }
    auto it = trace.find(channel);
    if (it == trace.end())
      throw UnboundChannel("trace has no channel '" + channel +
                           "' for input '" + name + "'");
    if (auto k = it->second.kind(); k && *k != kind)
      throw KindMismatch("input '" + name + "' declared " + kind_name(kind) +
                         " but channel '" + channel + "' carries " +
                         kind_name(*k));
    bound.push_back(&it->second);
  }
  return bound;
}

}  // namespace

MonitorInstance make_monitor(const std::string& id, MonitorLevel level,
                             const std::string& spec_text,
                             StreamBinding binding,
                             std::string verdict_channel) {
  MonitorInstance m;
  m.id = id;
  m.level = level;
  m.ast = parse_spec(spec_text);
  typecheck(m.ast);
  m.graph = compile(m.ast);
  m.binding = std::move(binding);
  if (verdict_channel.empty()) verdict_channel = pick_verdict_channel(m.ast);
  if (!verdict_channel.empty() &&
      output_kind(m.ast, verdict_channel) != Kind::Bool)
    throw KindMismatch("verdict channel '" + verdict_channel +
                       "' is not a Bool output");
  m.verdict_channel = std::move(verdict_channel);
  return m;
}

MonitorOutputs evaluate(const MonitorInstance& monitor, const Trace& trace) {
  const DataflowGraph& g = monitor.graph;
  auto bound = bind_inputs(g.inputs, monitor.binding, trace);
  AlignedTrace aligned = align(bound);

  // Source node i corresponds to input position i: the compiler emits
  // sources first, in declaration order.
  std::map<std::string, std::size_t> source_pos;
  for (std::size_t i = 0; i < g.inputs.size(); ++i)
    source_pos[g.inputs[i].first] = i;

  MonitorOutputs result;
  result.ticks = aligned.times;
  result.sample_period_ms = aligned.sample_period_ms();
  for (const auto& [name, idx] : g.sinks)
    result.outputs.emplace(name, EventStream(name));

  std::vector<std::optional<Value>> val(g.nodes.size());
  std::vector<std::optional<Value>> prev_buf(g.nodes.size());

  for (std::size_t tick = 0; tick < aligned.times.size(); ++tick) {
    const auto& row = aligned.values[tick];
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const DataflowNode& n = g.nodes[i];
      switch (n.op) {
        case DataflowNode::Op::Source:
          val[i] = row[source_pos.at(n.source_name)];
          break;
        case DataflowNode::Op::Const:
          val[i] = n.cval;
          break;
        case DataflowNode::Op::Unary:
          val[i] = lift(n.uop, val[n.a]);
          break;
        case DataflowNode::Op::Binary:
          val[i] = lift(n.bop, val[n.a], val[n.b]);
          break;
        case DataflowNode::Op::Prev:
          val[i] = prev_buf[i];
          break;
        case DataflowNode::Op::Default:
          val[i] = val[n.a] ? val[n.a] : std::optional<Value>(n.cval);
          break;
      }
    }
    // prev buffers latch the operand's last defined value, strictly after
    // the tick is fully evaluated
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
      if (g.nodes[i].op == DataflowNode::Op::Prev && val[g.nodes[i].a])
        prev_buf[i] = val[g.nodes[i].a];

    for (const auto& [name, idx] : g.sinks)
      if (val[idx])
        result.outputs.at(name).append(Event{aligned.times[tick], *val[idx]});
  }
  return result;
}

namespace {

// Tree-walking tick evaluator; shares nothing with the dataflow path
// beyond the scalar operator table.
class TreeEvaluator {
 public:
  explicit TreeEvaluator(const SpecAst& ast) : ast_(ast) {}

  void tick(const std::vector<std::optional<Value>>& source_row,
            const std::map<std::string, std::size_t>& source_pos,
            std::map<std::string, std::optional<Value>>& def_values) {
    source_row_ = &source_row;
    source_pos_ = &source_pos;
    def_values_.clear();
    staged_.clear();
    for (const auto& [name, expr] : ast_.definitions)
      def_values_[name] = eval(*expr);
    for (auto& [node, v] : staged_) prev_state_[node] = v;
    def_values = def_values_;
  }

 private:
  std::optional<Value> eval(const Expr& e) {
    switch (e.tag) {
      case Expr::Tag::Literal:
        return e.lit;
      case Expr::Tag::Ref: {
        auto it = def_values_.find(e.name);
        if (it != def_values_.end()) return it->second;
        return (*source_row_)[source_pos_->at(e.name)];
      }
      case Expr::Tag::Unary:
        return lift(e.uop, eval(*e.a));
      case Expr::Tag::Binary:
        return lift(e.bop, eval(*e.a), eval(*e.b));
      case Expr::Tag::Prev: {
        std::optional<Value> operand = eval(*e.a);
        std::optional<Value> out;
        if (auto it = prev_state_.find(&e); it != prev_state_.end())
          out = it->second;
        if (operand) staged_[&e] = *operand;
        return out;
      }
      default: {  // Default
        std::optional<Value> v = eval(*e.a);
        return v ? v : std::optional<Value>(e.lit);
      }
    }
  }

  const SpecAst& ast_;
  const std::vector<std::optional<Value>>* source_row_ = nullptr;
  const std::map<std::string, std::size_t>* source_pos_ = nullptr;
  std::map<std::string, std::optional<Value>> def_values_;
  std::map<const Expr*, Value> prev_state_;
  std::map<const Expr*, Value> staged_;
};

}  // namespace

MonitorOutputs interpret_reference(const SpecAst& ast, const Trace& trace,
                                   const StreamBinding& binding) {
  if (!ast.typechecked)
    throw TypeError("interpret_reference requires a typechecked specification");
  auto bound = bind_inputs(ast.inputs, binding, trace);
  AlignedTrace aligned = align(bound);

  std::map<std::string, std::size_t> source_pos;
  for (std::size_t i = 0; i < ast.inputs.size(); ++i)
    source_pos[ast.inputs[i].first] = i;

  MonitorOutputs result;
  result.ticks = aligned.times;
  result.sample_period_ms = aligned.sample_period_ms();
  for (const auto& out : ast.outputs)
    result.outputs.emplace(out, EventStream(out));

  TreeEvaluator ev(ast);
  std::map<std::string, std::optional<Value>> defs;
  for (std::size_t tick = 0; tick < aligned.times.size(); ++tick) {
    ev.tick(aligned.values[tick], source_pos, defs);
    for (const auto& out : ast.outputs) {
      std::optional<Value> v;
      if (auto it = defs.find(out); it != defs.end())
        v = it->second;
      else
        v = aligned.values[tick][source_pos.at(out)];
      if (v) result.outputs.at(out).append(Event{aligned.times[tick], *v});
    }
  }
  return result;
}

StreamingEvaluator::StreamingEvaluator(const MonitorInstance& monitor)
    : monitor_(monitor) {}

std::vector<std::pair<std::string, Event>> StreamingEvaluator::feed(
    const std::vector<std::pair<std::string, Event>>& batch) {
  for (const auto& [channel, event] : batch) {
    auto [it, inserted] = buffered_.try_emplace(channel, channel);
    it->second.append(event);
  }
  // Prefix stability makes re-evaluation of the buffered prefix emit a
  // superset of what was already delivered; forward only the new ticks.
  MonitorOutputs full = evaluate(monitor_, buffered_);
  std::vector<std::pair<std::string, Event>> fresh;
  if (full.ticks.size() > emitted_ticks_) {
    TimePoint horizon =
        emitted_ticks_ == 0 ? TimePoint{-1} : full.ticks[emitted_ticks_ - 1];
    for (const auto& [name, stream] : full.outputs)
      for (const auto& e : stream.events())
        if (e.t > horizon) fresh.emplace_back(name, e);
    emitted_ticks_ = full.ticks.size();
  }
  return fresh;
}

MonitorReport summarize(const MonitorInstance& monitor,
                        const MonitorOutputs& outputs) {
  MonitorReport r;
  r.id = monitor.id;
  r.level = monitor.level;
  r.evaluated_ticks = outputs.ticks.size();
  if (monitor.verdict_channel.empty()) return r;

  const EventStream& verdicts = outputs.outputs.at(monitor.verdict_channel);
  std::int64_t period = outputs.sample_period_ms;
  std::optional<TimePoint> open_start, last_true;
  auto close = [&] {
    if (open_start) {
      r.intervals.emplace_back(open_start->seconds(), last_true->seconds());
      open_start.reset();
    }
  };
  for (const auto& e : verdicts.events()) {
    if (!std::get<bool>(e.value)) {
      ++r.ok_ticks;
      continue;
    }
    ++r.violation_ticks;
    if (!r.first_detection) r.first_detection = e.t.seconds();
    if (open_start && last_true && e.t.ms - last_true->ms > period) close();
    if (!open_start) open_start = e.t;
    last_true = e.t;
  }
  close();
  return r;
}

namespace {

MonitorReport run_one(const MonitorInstance& m, const Trace& trace) {
  try {
    return summarize(m, evaluate(m, trace));
  } catch (const std::exception& e) {
    MonitorReport r;
    r.id = m.id;
    r.level = m.level;
    r.error = e.what();
    return r;
  }
}

}  // namespace

VerdictReport run_set_serial(const std::vector<MonitorInstance>& monitors,
                             const Trace& trace) {
  VerdictReport report;
  report.monitors.resize(monitors.size());
  for (std::size_t i = 0; i < monitors.size(); ++i)
    report.monitors[i] = run_one(monitors[i], trace);
  return report;
}

VerdictReport run_set(const std::vector<MonitorInstance>& monitors,
                      const Trace& trace) {
  VerdictReport report;
  report.monitors.resize(monitors.size());
  const auto n = static_cast<std::int64_t>(monitors.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i)
    report.monitors[i] = run_one(monitors[i], trace);
  return report;
}

}  // namespace rvmon
