#pragma once
#include <string>
#include <vector>

#include "rvmon/ast.hpp"

namespace rvmon {

// Executable form of a specification: nodes in dependency (topological)
// order, common subexpressions shared.
struct DataflowNode {
  enum class Op { Source, Const, Unary, Binary, Prev, Default };
  Op op;
  Kind kind;
  std::string source_name;  // Source
  Value cval{};             // Const; also the Default fallback
  UnOp uop{};
  BinOp bop{};
  int a = -1, b = -1;
};

struct DataflowGraph {
  std::vector<DataflowNode> nodes;
  // spec input name per source node, in declaration order
  std::vector<std::pair<std::string, Kind>> inputs;
  // output name -> node index, in declaration order
  std::vector<std::pair<std::string, int>> sinks;

  int sink(const std::string& name) const;
};

// Requires a typechecked AST.
DataflowGraph compile(const SpecAst& ast);

}  // namespace rvmon
