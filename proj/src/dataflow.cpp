#include "rvmon/dataflow.hpp"

#include <map>

#include "rvmon/errors.hpp"

namespace rvmon {

int DataflowGraph::sink(const std::string& name) const {
  for (const auto& [n, idx] : sinks)
    if (n == name) return idx;
  throw UnknownChannel("no such output: " + name);
}

namespace {

class Compiler {
 public:
  explicit Compiler(const SpecAst& ast) : ast_(ast) {}

  DataflowGraph run() {
    for (const auto& [name, kind] : ast_.inputs) {
      DataflowNode n;
      n.op = DataflowNode::Op::Source;
      n.kind = kind;
      n.source_name = name;
      defined_[name] = add(std::move(n), "src:" + name);
      graph_.inputs.emplace_back(name, kind);
    }
    for (const auto& [name, expr] : ast_.definitions)
      defined_[name] = emit(*expr);
    for (const auto& out : ast_.outputs)
      graph_.sinks.emplace_back(out, defined_.at(out));
    return std::move(graph_);
  }

 private:
  int add(DataflowNode n, const std::string& key) {
    auto it = cse_.find(key);
    if (it != cse_.end()) return it->second;
    graph_.nodes.push_back(std::move(n));
    int idx = static_cast<int>(graph_.nodes.size()) - 1;
    cse_[key] = idx;
    return idx;
  }

  int emit(const Expr& e) {
    DataflowNode n;
    n.kind = e.kind.value();
    switch (e.tag) {
      case Expr::Tag::Literal:
        n.op = DataflowNode::Op::Const;
        n.cval = e.lit;
        return add(std::move(n), "const:" + value_to_string(e.lit) + ":" +
                                     kind_name(n.kind));
      case Expr::Tag::Ref:
        return defined_.at(e.name);
      case Expr::Tag::Unary: {
        n.op = DataflowNode::Op::Unary;
        n.uop = e.uop;
        n.a = emit(*e.a);
        return add(std::move(n),
                   "un:" + op_name(e.uop) + ":" + std::to_string(n.a));
      }
      case Expr::Tag::Binary: {
        n.op = DataflowNode::Op::Binary;
        n.bop = e.bop;
        n.a = emit(*e.a);
        n.b = emit(*e.b);
        return add(std::move(n), "bin:" + op_name(e.bop) + ":" +
                                     std::to_string(n.a) + ":" +
                                     std::to_string(n.b));
      }
      case Expr::Tag::Prev: {
        n.op = DataflowNode::Op::Prev;
        n.a = emit(*e.a);
        return add(std::move(n), "prev:" + std::to_string(n.a));
      }
      default: {  // Default
        n.op = DataflowNode::Op::Default;
        n.cval = e.lit;
        n.a = emit(*e.a);
        return add(std::move(n), "dflt:" + std::to_string(n.a) + ":" +
                                     value_to_string(e.lit));
      }
    }
  }

  const SpecAst& ast_;
  DataflowGraph graph_;
  std::map<std::string, int> defined_;
  std::map<std::string, int> cse_;
};

}  // namespace

DataflowGraph compile(const SpecAst& ast) {
  if (!ast.typechecked)
    throw TypeError("compile requires a typechecked specification");
  return Compiler(ast).run();
}

}  // namespace rvmon
