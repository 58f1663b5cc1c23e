#include <map>

#include "rvmon/ast.hpp"
#include "rvmon/errors.hpp"

namespace rvmon {

namespace {

[[noreturn]] void fail(const Expr& e, const std::string& msg) {
  throw TypeError(msg + " at " + std::to_string(e.line) + ":" +
                  std::to_string(e.col));
}

Kind require_numeric(const Expr& e, Kind k, const std::string& ctx) {
  if (k == Kind::Bool) fail(e, ctx + ": expected Int or Float, got Bool");
  return k;
}

Kind widen(Kind a, Kind b) {
  return (a == Kind::Float || b == Kind::Float) ? Kind::Float : Kind::Int;
}

Kind check_expr(Expr& e, const std::map<std::string, Kind>& env) {
  Kind k;
  switch (e.tag) {
    case Expr::Tag::Literal:
      k = kind_of(e.lit);
      break;
    case Expr::Tag::Ref: {
      auto it = env.find(e.name);
      if (it == env.end()) fail(e, "unknown identifier '" + e.name + "'");
      k = it->second;
      break;
    }
    case Expr::Tag::Unary: {
      Kind c = check_expr(*e.a, env);
      switch (e.uop) {
        case UnOp::Neg:
          k = require_numeric(e, c, "unary '-'");
          break;
        case UnOp::Not:
          if (c != Kind::Bool) fail(e, "'!': expected Bool, got " + kind_name(c));
          k = Kind::Bool;
          break;
        default:
          k = require_numeric(e, c, "abs");
          break;
      }
      break;
    }
    case Expr::Tag::Binary: {
      Kind a = check_expr(*e.a, env);
      Kind b = check_expr(*e.b, env);
      switch (e.bop) {
        case BinOp::Add:
        case BinOp::Sub:
        case BinOp::Mul:
        case BinOp::Div:
          require_numeric(e, a, "'" + op_name(e.bop) + "'");
          require_numeric(e, b, "'" + op_name(e.bop) + "'");
          k = widen(a, b);
          break;
        case BinOp::Lt:
        case BinOp::Le:
        case BinOp::Gt:
        case BinOp::Ge:
          require_numeric(e, a, "'" + op_name(e.bop) + "'");
          require_numeric(e, b, "'" + op_name(e.bop) + "'");
          k = Kind::Bool;
          break;
        case BinOp::Eq:
        case BinOp::Ne:
          if ((a == Kind::Bool) != (b == Kind::Bool))
            fail(e, "'" + op_name(e.bop) + "': operand kinds " + kind_name(a) +
                        " and " + kind_name(b) + " are not comparable");
          k = Kind::Bool;
          break;
        default:  // And, Or
          if (a != Kind::Bool || b != Kind::Bool)
            fail(e, "'" + op_name(e.bop) + "': expected Bool operands, got " +
                        kind_name(a) + " and " + kind_name(b));
          k = Kind::Bool;
          break;
      }
      break;
    }
    case Expr::Tag::Prev:
      k = check_expr(*e.a, env);
      break;
    case Expr::Tag::Default: {
      Kind c = check_expr(*e.a, env);
      Kind lk = kind_of(e.lit);
      // Int fallback widens to a Float expression.
      if (c == Kind::Float && lk == Kind::Int) {
        e.lit = Value{static_cast<double>(std::get<std::int64_t>(e.lit))};
        lk = Kind::Float;
      }
      if (lk != c)
        fail(e, "default: fallback kind " + kind_name(lk) +
                    " does not match expression kind " + kind_name(c));
      k = c;
      break;
    }
  }
  e.kind = k;
  return k;
}

}  // namespace

void typecheck(SpecAst& ast) {
  std::map<std::string, Kind> env;
  for (const auto& [name, kind] : ast.inputs) env[name] = kind;
  for (auto& [name, expr] : ast.definitions)
    env[name] = check_expr(*expr, env);
  ast.typechecked = true;
}

}  // namespace rvmon
