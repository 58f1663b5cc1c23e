#include <doctest.h>

#include <random>
#include <sstream>

#include "rvmon/align.hpp"
#include "rvmon/errors.hpp"
#include "rvmon/stream.hpp"
#include "rvmon/trace_io.hpp"

using namespace rvmon;

namespace {

EventStream make_stream(const std::string& channel,
                        std::vector<std::pair<double, Value>> events) {
  EventStream s(channel);
  for (auto& [t, v] : events) s.append(Event{TimePoint::from_seconds(t), v});
  return s;
}

}  // namespace

TEST_CASE("append: base case, growth, rejection") {
  EventStream s("x");
  s.append(Event{TimePoint::from_seconds(0.0), Value{std::int64_t{1}}});
  CHECK(s.size() == 1);

  s.append(Event{TimePoint::from_seconds(1.0), Value{std::int64_t{5}}});
  CHECK(s.size() == 2);
  CHECK(std::get<std::int64_t>(s.events()[1].value) == 5);

  CHECK_THROWS_AS(
      s.append(Event{TimePoint::from_seconds(1.0), Value{std::int64_t{2}}}),
      NonMonotoneTimestamp);
  CHECK_THROWS_AS(
      s.append(Event{TimePoint::from_seconds(0.5), Value{std::int64_t{2}}}),
      NonMonotoneTimestamp);
  CHECK_THROWS_AS(s.append(Event{TimePoint::from_seconds(2.0), Value{true}}),
                  KindMismatch);
  CHECK(s.size() == 2);
}

TEST_CASE("monotonicity holds after any append sequence") {
  std::mt19937 rng(7);
  EventStream s("r");
  std::int64_t t = 0;
  for (int i = 0; i < 200; ++i) {
    t += 1 + static_cast<std::int64_t>(rng() % 500);
    s.append(Event{TimePoint{t}, Value{static_cast<double>(rng() % 100)}});
  }
  for (std::size_t i = 1; i < s.size(); ++i)
    REQUIRE(s.events()[i - 1].t < s.events()[i].t);
}

TEST_CASE("window prev") {
  StreamWindow w("x", 4);
  CHECK(!w.prev());

  w.push(Event{TimePoint::from_seconds(0), Value{std::int64_t{1}}});
  CHECK(!w.prev());  // no predecessor yet

  w.push(Event{TimePoint::from_seconds(1), Value{std::int64_t{5}}});
  REQUIRE(w.prev());
  CHECK(std::get<std::int64_t>(w.prev()->value) == 1);
  CHECK(w.prev()->t == TimePoint::from_seconds(0));

  StreamWindow w2("x", 4);
  w2.push(Event{TimePoint::from_seconds(3), Value{std::int64_t{15}}});
  w2.push(Event{TimePoint::from_seconds(4), Value{std::int64_t{100}}});
  w2.push(Event{TimePoint::from_seconds(5), Value{std::int64_t{20}}});
  CHECK(std::get<std::int64_t>(w2.prev()->value) == 100);
}

TEST_CASE("window soundness: min(n, m+1) events retained") {
  for (std::size_t depth : {0u, 1u, 3u, 7u}) {
    StreamWindow w("c", depth);
    for (std::size_t n = 1; n <= 20; ++n) {
      w.push(Event{TimePoint{static_cast<std::int64_t>(n * 100)},
                   Value{static_cast<std::int64_t>(n)}});
      CHECK(w.size() == std::min(n, depth + 1));
      // tail is the most recent event
      CHECK(std::get<std::int64_t>(w.latest()->value) ==
            static_cast<std::int64_t>(n));
    }
  }
}

TEST_CASE("align: sample-and-hold over the timestamp union") {
  EventStream a = make_stream("A", {{0, Value{std::int64_t{1}}},
                                    {2, Value{std::int64_t{3}}}});
  EventStream b = make_stream("B", {{1, Value{true}}});
  AlignedTrace at = align({&a, &b});

  REQUIRE(at.times.size() == 3);
  CHECK(at.times[0] == TimePoint::from_seconds(0));
  CHECK(at.times[1] == TimePoint::from_seconds(1));
  CHECK(at.times[2] == TimePoint::from_seconds(2));

  CHECK(std::get<std::int64_t>(*at.values[0][0]) == 1);
  CHECK(std::get<std::int64_t>(*at.values[1][0]) == 1);
  CHECK(std::get<std::int64_t>(*at.values[2][0]) == 3);

  CHECK(!at.values[0][1]);  // B undefined before its first event
  CHECK(std::get<bool>(*at.values[1][1]));
  CHECK(std::get<bool>(*at.values[2][1]));
}

TEST_CASE("align: single stream keeps its own timestamps") {
  EventStream a = make_stream("A", {{0.1, Value{1.0}}, {0.7, Value{2.0}}});
  AlignedTrace at = align({&a});
  REQUIRE(at.times.size() == 2);
  CHECK(at.times[0] == TimePoint::from_seconds(0.1));
  CHECK(at.times[1] == TimePoint::from_seconds(0.7));
}

TEST_CASE("align: two equal 0.1 s grids produce that grid") {
  EventStream a("A"), b("B");
  std::vector<TimePoint> expected;
  for (int k = 0; k <= 20; ++k) {
    TimePoint t{k * 100};
    expected.push_back(t);
    a.append(Event{t, Value{static_cast<double>(k)}});
    b.append(Event{t, Value{static_cast<double>(-k)}});
  }
  AlignedTrace at = align({&a, &b});
  CHECK(at.times == expected);
  CHECK(at.sample_period_ms() == 100);
}

TEST_CASE("lift: scalar operators and strict undefined propagation") {
  auto some = [](Value v) { return std::optional<Value>(v); };

  CHECK(std::get<bool>(*lift(BinOp::Gt, some(Value{std::int64_t{100}}),
                             some(Value{std::int64_t{5}}))));
  CHECK(std::get<std::int64_t>(*lift(BinOp::Sub, some(Value{std::int64_t{100}}),
                                     some(Value{std::int64_t{15}}))) == 85);
  CHECK(!lift(BinOp::And, some(Value{true}), std::nullopt));
  CHECK(!lift(UnOp::Neg, std::nullopt));

  CHECK_THROWS_AS(apply_binary(BinOp::Div, Value{std::int64_t{1}},
                               Value{std::int64_t{0}}),
                  DivisionByZero);
  CHECK_THROWS_AS(apply_binary(BinOp::Div, Value{1.0}, Value{0.0}),
                  DivisionByZero);
  CHECK_THROWS_AS(apply_binary(BinOp::Add, Value{true}, Value{1.0}),
                  KindMismatch);
  CHECK_THROWS_AS(apply_binary(BinOp::And, Value{std::int64_t{1}},
                               Value{true}),
                  KindMismatch);

  // Int widens to Float in mixed arithmetic
  CHECK(std::get<double>(*lift(BinOp::Add, some(Value{std::int64_t{1}}),
                               some(Value{0.5}))) == doctest::Approx(1.5));
}

TEST_CASE("trace io: round trip preserves streams exactly") {
  Trace trace;
  trace.emplace("v", make_stream("v", {{0.0, Value{-1.5}},
                                       {0.1, Value{-2.0}},
                                       {0.2, Value{0.0}}}));
  trace.emplace("flag", make_stream("flag", {{0.1, Value{true}}}));
  trace.emplace("n", make_stream("n", {{0.0, Value{std::int64_t{3}}}}));

  std::stringstream buf;
  write_trace(trace, buf);
  Trace back = read_trace(buf);

  REQUIRE(back.size() == trace.size());
  for (const auto& [name, s] : trace) {
    const EventStream& r = back.at(name);
    REQUIRE(r.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(r.events()[i].t == s.events()[i].t);
      CHECK(r.events()[i].value == s.events()[i].value);
    }
  }
  // 0.0 must stay a Float, not collapse to Int
  CHECK(kind_of(back.at("v").events()[2].value) == Kind::Float);
}

TEST_CASE("trace io: rejects malformed input") {
  {
    std::stringstream in("{\"t\": 0.0, \"channel\": \"a\"}\n");
    CHECK_THROWS_AS(read_trace(in), ConfigError);
  }
  {
    // globally unsorted
    std::stringstream in(
        "{\"t\": 1.0, \"channel\": \"a\", \"value\": 1}\n"
        "{\"t\": 0.5, \"channel\": \"b\", \"value\": 1}\n");
    CHECK_THROWS_AS(read_trace(in), ConfigError);
  }
  {
    // tie within one channel
    std::stringstream in(
        "{\"t\": 1.0, \"channel\": \"a\", \"value\": 1}\n"
        "{\"t\": 1.0, \"channel\": \"a\", \"value\": 2}\n");
    CHECK_THROWS_AS(read_trace(in), ConfigError);
  }
  {
    // tie across channels is fine
    std::stringstream in(
        "{\"t\": 1.0, \"channel\": \"a\", \"value\": 1}\n"
        "{\"t\": 1.0, \"channel\": \"b\", \"value\": 2}\n");
    CHECK(read_trace(in).size() == 2);
  }
}
