#include "rvmon/value.hpp"

#include <charconv>

#include "rvmon/errors.hpp"

namespace rvmon {

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::Int: return "Int";
    case Kind::Float: return "Float";
    default: return "Bool";
  }
}

std::string op_name(UnOp op) {
  switch (op) {
    case UnOp::Neg: return "-";
    case UnOp::Not: return "!";
    default: return "abs";
  }
}

std::string op_name(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::And: return "&&";
    default: return "||";
  }
}

namespace {

bool is_numeric(const Value& v) { return kind_of(v) != Kind::Bool; }

double as_double(const Value& v) {
  if (auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  return std::get<double>(v);
}

[[noreturn]] void bad_operands(const std::string& op, const Value& a) {
  throw KindMismatch("operator '" + op + "' not applicable to " +
                     kind_name(kind_of(a)) + " operand");
}

}  // namespace

Value apply_unary(UnOp op, const Value& v) {
  switch (op) {
    case UnOp::Neg:
      if (auto* i = std::get_if<std::int64_t>(&v)) return Value{-*i};
      if (auto* d = std::get_if<double>(&v)) return Value{-*d};
      bad_operands("-", v);
    case UnOp::Not:
      if (auto* b = std::get_if<bool>(&v)) return Value{!*b};
      bad_operands("!", v);
    default:  // Abs
      if (auto* i = std::get_if<std::int64_t>(&v))
        return Value{*i < 0 ? -*i : *i};
      if (auto* d = std::get_if<double>(&v)) return Value{*d < 0 ? -*d : *d};
      bad_operands("abs", v);
  }
}

Value apply_binary(BinOp op, const Value& a, const Value& b) {
  const Kind ka = kind_of(a), kb = kind_of(b);
  switch (op) {
    case BinOp::Add:
    case BinOp::Sub:
    case BinOp::Mul:
    case BinOp::Div: {
      if (!is_numeric(a) || !is_numeric(b))
        throw KindMismatch("arithmetic '" + op_name(op) +
                           "' requires numeric operands");
      if (ka == Kind::Int && kb == Kind::Int) {
        std::int64_t x = std::get<std::int64_t>(a),
                     y = std::get<std::int64_t>(b);
        switch (op) {
          case BinOp::Add: return Value{x + y};
          case BinOp::Sub: return Value{x - y};
          case BinOp::Mul: return Value{x * y};
          default:
            if (y == 0) throw DivisionByZero("integer division by zero");
            return Value{x / y};
        }
      }
      double x = as_double(a), y = as_double(b);
      switch (op) {
        case BinOp::Add: return Value{x + y};
        case BinOp::Sub: return Value{x - y};
        case BinOp::Mul: return Value{x * y};
        default:
          if (y == 0.0) throw DivisionByZero("division by zero");
          return Value{x / y};
      }
    }
    case BinOp::Lt:
    case BinOp::Le:
    case BinOp::Gt:
    case BinOp::Ge: {
      if (!is_numeric(a) || !is_numeric(b))
        throw KindMismatch("comparison '" + op_name(op) +
                           "' requires numeric operands");
      double x = as_double(a), y = as_double(b);
      switch (op) {
        case BinOp::Lt: return Value{x < y};
        case BinOp::Le: return Value{x <= y};
        case BinOp::Gt: return Value{x > y};
        default: return Value{x >= y};
      }
    }
    case BinOp::Eq:
    case BinOp::Ne: {
      bool eq;
      if (ka == Kind::Bool && kb == Kind::Bool) {
        eq = std::get<bool>(a) == std::get<bool>(b);
      } else if (is_numeric(a) && is_numeric(b)) {
        eq = as_double(a) == as_double(b);
      } else {
        throw KindMismatch("'" + op_name(op) +
                           "' requires operands of comparable kinds");
      }
      return Value{op == BinOp::Eq ? eq : !eq};
    }
    default: {  // And, Or
      auto* x = std::get_if<bool>(&a);
      auto* y = std::get_if<bool>(&b);
      if (!x || !y)
        throw KindMismatch("'" + op_name(op) + "' requires Bool operands");
      return Value{op == BinOp::And ? (*x && *y) : (*x || *y)};
    }
  }
}

std::optional<Value> lift(UnOp op, const std::optional<Value>& v) {
  if (!v) return std::nullopt;
  return apply_unary(op, *v);
}

std::optional<Value> lift(BinOp op, const std::optional<Value>& a,
                          const std::optional<Value>& b) {
  if (!a || !b) return std::nullopt;
  return apply_binary(op, *a, *b);
}

std::string value_to_string(const Value& v) {
  if (auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  double d = std::get<double>(v);
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, d);
  std::string s(buf, p);
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
    s += ".0";
  return s;
}

}  // namespace rvmon
