// Compares the serial reference run_set against the OpenMP-parallel path on
// a 30-monitor / 60 s workload and verifies the reports agree.
#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "rvmon/builtin_specs.hpp"
#include "rvmon/engine.hpp"

using namespace rvmon;

namespace {

Trace make_trace(int ecus, int ticks) {
  Trace trace;
  std::mt19937 rng(4242);
  for (int ecu = 0; ecu < ecus; ++ecu) {
    std::string base = "ecu" + std::to_string(ecu);
    EventStream x(base + "_x"), v(base + "_v"), fcw(base + "_fcw"),
        status(base + "_status");
    std::int64_t pos = 0;
    double vel = -5.0;
    for (int k = 0; k < ticks; ++k) {
      TimePoint t{k * 100};
      pos += static_cast<std::int64_t>(rng() % 5);
      vel += (static_cast<double>(rng() % 100) - 50.0) / 100.0;
      x.append(Event{t, Value{pos}});
      v.append(Event{t, Value{vel}});
      fcw.append(Event{t, Value{std::int64_t{1}}});
      status.append(Event{t, Value{static_cast<std::int64_t>(rng() % 4)}});
    }
    trace.emplace(x.channel(), std::move(x));
    trace.emplace(v.channel(), std::move(v));
    trace.emplace(fcw.channel(), std::move(fcw));
    trace.emplace(status.channel(), std::move(status));
  }
  return trace;
}

std::vector<MonitorInstance> make_monitors(int ecus) {
  std::vector<MonitorInstance> monitors;
  const BuiltinSpec* p1 = find_builtin("p1");
  const BuiltinSpec* p2 = find_builtin("p2");
  const BuiltinSpec* p4 = find_builtin("p4");
  for (int ecu = 0; ecu < ecus; ++ecu) {
    std::string base = "ecu" + std::to_string(ecu);
    monitors.push_back(make_monitor(base + "_p1", MonitorLevel::Data, p1->text,
                                    {{"x", base + "_x"}}));
    monitors.push_back(make_monitor(base + "_p2", MonitorLevel::Data, p2->text,
                                    {{"rel_vel", base + "_v"}}));
    monitors.push_back(make_monitor(
        base + "_p4", MonitorLevel::Functional, p4->text,
        {{"fcw_active", base + "_fcw"}, {"aeb_status", base + "_status"}}));
  }
  return monitors;
}

bool reports_equal(const VerdictReport& a, const VerdictReport& b) {
  if (a.monitors.size() != b.monitors.size()) return false;
  for (std::size_t i = 0; i < a.monitors.size(); ++i)
    if (a.monitors[i].violation_ticks != b.monitors[i].violation_ticks ||
        a.monitors[i].intervals != b.monitors[i].intervals)
      return false;
  return true;
}

template <typename F>
double best_of(int reps, F f) {
  double best = 1e30;
  for (int i = 0; i < reps; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             t0)
                   .count();
    if (s < best) best = s;
  }
  return best;
}

}  // namespace

int main() {
  const int ecus = 10, ticks = 601, reps = 5;
  Trace trace = make_trace(ecus, ticks);
  std::vector<MonitorInstance> monitors = make_monitors(ecus);

  VerdictReport serial_report = run_set_serial(monitors, trace);
  VerdictReport parallel_report = run_set(monitors, trace);
  if (!reports_equal(serial_report, parallel_report)) {
    std::printf("FAIL: parallel report differs from the serial reference\n");
    return 1;
  }

  double serial = best_of(reps, [&] { run_set_serial(monitors, trace); });
  double parallel = best_of(reps, [&] { run_set(monitors, trace); });

  std::printf("workload: %zu monitors, %d ticks x %d ECUs\n", monitors.size(),
              ticks, ecus);
  std::printf("run_set_serial: %8.2f ms (best of %d)\n", serial * 1e3, reps);
  std::printf("run_set (omp):  %8.2f ms (best of %d)\n", parallel * 1e3, reps);
  std::printf("speedup: %.2fx\n", serial / parallel);
  return 0;
}
