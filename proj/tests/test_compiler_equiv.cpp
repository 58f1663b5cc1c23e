#include <doctest.h>

#include "random_specs.hpp"
#include "rvmon/dataflow.hpp"
#include "rvmon/engine.hpp"

using namespace rvmon;

namespace {

bool outputs_equal(const MonitorOutputs& a, const MonitorOutputs& b) {
  if (a.outputs.size() != b.outputs.size()) return false;
  for (const auto& [name, s] : a.outputs) {
    auto it = b.outputs.find(name);
    if (it == b.outputs.end()) return false;
    const EventStream& r = it->second;
    if (r.size() != s.size()) return false;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (r.events()[i].t != s.events()[i].t) return false;
      if (r.events()[i].value != s.events()[i].value) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("compiled graph equals reference interpreter on random specs") {
  testgen::Generator gen(20240817);
  for (int round = 0; round < 250; ++round) {
    testgen::RandomSpec rs = gen.spec();
    typecheck(rs.ast);

    MonitorInstance m;
    m.id = "rand";
    m.ast = rs.ast;
    m.graph = compile(rs.ast);

    Trace trace = gen.trace(rs);
    MonitorOutputs compiled = evaluate(m, trace);
    MonitorOutputs interpreted = interpret_reference(rs.ast, trace);
    REQUIRE_MESSAGE(outputs_equal(compiled, interpreted),
                    "divergence on round " << round << ":\n"
                                           << pretty_print(rs.ast));
  }
}

TEST_CASE("generated specs survive a print/parse/typecheck round trip") {
  testgen::Generator gen(99);
  for (int round = 0; round < 50; ++round) {
    testgen::RandomSpec rs = gen.spec();
    typecheck(rs.ast);
    SpecAst reparsed = parse_spec(pretty_print(rs.ast));
    CHECK(structurally_equal(rs.ast, reparsed));
    CHECK_NOTHROW(typecheck(reparsed));
  }
}
