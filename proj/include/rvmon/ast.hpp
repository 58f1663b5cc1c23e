#pragma once
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rvmon/value.hpp"

namespace rvmon {

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;

struct Expr {
  enum class Tag { Literal, Ref, Unary, Binary, Prev, Default };

  Tag tag;
  Value lit{};             // Literal; also the fallback of Default
  std::string name;        // Ref
  UnOp uop{};              // Unary
  BinOp bop{};             // Binary
  ExprPtr a, b;

  // Filled by the typechecker.
  std::optional<Kind> kind;

  int line = 0, col = 0;
};

ExprPtr make_literal(Value v);
ExprPtr make_ref(std::string name);
ExprPtr make_unary(UnOp op, ExprPtr e);
ExprPtr make_binary(BinOp op, ExprPtr a, ExprPtr b);
ExprPtr make_prev(ExprPtr e);
ExprPtr make_default(ExprPtr e, Value fallback);

struct SpecAst {
  std::vector<std::pair<std::string, Kind>> inputs;
  std::vector<std::pair<std::string, ExprPtr>> definitions;
  std::vector<std::string> outputs;

  bool typechecked = false;

  const ExprPtr* find_definition(const std::string& name) const;
  std::optional<Kind> input_kind(const std::string& name) const;
};

// Grammar (see docs/grammar in README): "in ID : Events[Kind]",
// "def ID := expr", "out ID". Throws SyntaxError, DuplicateName,
// UnknownIdentifier.
SpecAst parse_spec(const std::string& text);
SpecAst parse_spec_file(const std::string& path);

// Canonical source form; parse(pretty_print(ast)) is structurally identical.
std::string pretty_print(const SpecAst& ast);

bool structurally_equal(const SpecAst& x, const SpecAst& y);

// Annotates every expression with its kind (Int widens to Float in mixed
// arithmetic). Throws TypeError.
void typecheck(SpecAst& ast);

}  // namespace rvmon
