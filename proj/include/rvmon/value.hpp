#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace rvmon {

enum class Kind { Int, Float, Bool };

std::string kind_name(Kind k);

// Scalar stream values: integers, reals and flags cover every monitored
// quantity in the system.
using Value = std::variant<std::int64_t, double, bool>;

inline Kind kind_of(const Value& v) {
  switch (v.index()) {
    case 0: return Kind::Int;
    case 1: return Kind::Float;
    default: return Kind::Bool;
  }
}

enum class UnOp { Neg, Not, Abs };
enum class BinOp { Add, Sub, Mul, Div, Lt, Le, Gt, Ge, Eq, Ne, And, Or };

std::string op_name(UnOp op);
std::string op_name(BinOp op);

// Pointwise application of a scalar operator. Throws KindMismatch on a
// signature violation and DivisionByZero on x/0.
Value apply_unary(UnOp op, const Value& v);
Value apply_binary(BinOp op, const Value& a, const Value& b);

// Lifted variants with strict undefined propagation: any undefined operand
// makes the result undefined.
std::optional<Value> lift(UnOp op, const std::optional<Value>& v);
std::optional<Value> lift(BinOp op, const std::optional<Value>& a,
                          const std::optional<Value>& b);

std::string value_to_string(const Value& v);

}  // namespace rvmon
