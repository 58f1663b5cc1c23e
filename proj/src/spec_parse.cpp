#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "rvmon/ast.hpp"
#include "rvmon/errors.hpp"

namespace rvmon {

ExprPtr make_literal(Value v) {
  auto e = std::make_shared<Expr>();
  e->tag = Expr::Tag::Literal;
  e->lit = v;
  return e;
}
ExprPtr make_ref(std::string name) {
  auto e = std::make_shared<Expr>();
  e->tag = Expr::Tag::Ref;
  e->name = std::move(name);
  return e;
}
ExprPtr make_unary(UnOp op, ExprPtr c) {
  auto e = std::make_shared<Expr>();
  e->tag = Expr::Tag::Unary;
  e->uop = op;
  e->a = std::move(c);
  return e;
}
ExprPtr make_binary(BinOp op, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->tag = Expr::Tag::Binary;
  e->bop = op;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}
ExprPtr make_prev(ExprPtr c) {
  auto e = std::make_shared<Expr>();
  e->tag = Expr::Tag::Prev;
  e->a = std::move(c);
  return e;
}
ExprPtr make_default(ExprPtr c, Value fallback) {
  auto e = std::make_shared<Expr>();
  e->tag = Expr::Tag::Default;
  e->a = std::move(c);
  e->lit = fallback;
  return e;
}

const ExprPtr* SpecAst::find_definition(const std::string& name) const {
  for (const auto& [n, e] : definitions)
    if (n == name) return &e;
  return nullptr;
}

std::optional<Kind> SpecAst::input_kind(const std::string& name) const {
  for (const auto& [n, k] : inputs)
    if (n == name) return k;
  return std::nullopt;
}

namespace {

enum class Tok {
  End, Ident, Number, True, False,
  In, Def, Out, Prev, Abs, Default, Events, KindInt, KindFloat, KindBool,
  Colon, Assign, LBracket, RBracket, LParen, RParen, Comma,
  Plus, Minus, Star, Slash, Lt, Le, Gt, Ge, EqEq, Ne, AndAnd, OrOr, Not,
  Arrow,
};

struct Token {
  Tok tok;
  std::string text;
  Value num{};
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_ws();
      int line = line_, col = col_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", {}, line, col});
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string id;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                src_[pos_] == '_'))
          id += advance();
        out.push_back({keyword(id), id, {}, line, col});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num;
        bool real = false;
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_])))
          num += advance();
        if (pos_ + 1 < src_.size() && src_[pos_] == '.' &&
            std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
          real = true;
          num += advance();
          while (pos_ < src_.size() &&
                 std::isdigit(static_cast<unsigned char>(src_[pos_])))
            num += advance();
        }
        Value v = real ? Value{std::stod(num)}
                       : Value{static_cast<std::int64_t>(std::stoll(num))};
        out.push_back({Tok::Number, num, v, line, col});
      } else {
        out.push_back(symbol(line, col));
      }
    }
  }

 private:
  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_ws() {
    for (;;) {
      while (pos_ < src_.size() &&
             std::isspace(static_cast<unsigned char>(src_[pos_])))
        advance();
      // "--" comment to end of line
      if (pos_ + 1 < src_.size() && src_[pos_] == '-' && src_[pos_ + 1] == '-') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        continue;
      }
      return;
    }
  }

  static Tok keyword(const std::string& id) {
    if (id == "in") return Tok::In;
    if (id == "def") return Tok::Def;
    if (id == "out") return Tok::Out;
    if (id == "prev") return Tok::Prev;
    if (id == "abs") return Tok::Abs;
    if (id == "default") return Tok::Default;
    if (id == "Events") return Tok::Events;
    if (id == "Int") return Tok::KindInt;
    if (id == "Float") return Tok::KindFloat;
    if (id == "Bool") return Tok::KindBool;
    if (id == "true") return Tok::True;
    if (id == "false") return Tok::False;
    return Tok::Ident;
  }

  Token symbol(int line, int col) {
    auto two = [&](char a, char b) {
      return src_[pos_] == a && pos_ + 1 < src_.size() && src_[pos_ + 1] == b;
    };
    auto make2 = [&](Tok t, const char* s) {
      advance();
      advance();
      return Token{t, s, {}, line, col};
    };
    auto make1 = [&](Tok t) {
      std::string s(1, advance());
      return Token{t, s, {}, line, col};
    };
    if (two(':', '=')) return make2(Tok::Assign, ":=");
    if (two('<', '=')) return make2(Tok::Le, "<=");
    if (two('>', '=')) return make2(Tok::Ge, ">=");
    if (two('=', '=')) return make2(Tok::EqEq, "==");
    if (two('!', '=')) return make2(Tok::Ne, "!=");
    if (two('&', '&')) return make2(Tok::AndAnd, "&&");
    if (two('|', '|')) return make2(Tok::OrOr, "||");
    if (two('-', '>')) return make2(Tok::Arrow, "->");
    switch (src_[pos_]) {
      case ':': return make1(Tok::Colon);
      case '[': return make1(Tok::LBracket);
      case ']': return make1(Tok::RBracket);
      case '(': return make1(Tok::LParen);
      case ')': return make1(Tok::RParen);
      case ',': return make1(Tok::Comma);
      case '+': return make1(Tok::Plus);
      case '-': return make1(Tok::Minus);
      case '*': return make1(Tok::Star);
      case '/': return make1(Tok::Slash);
      case '<': return make1(Tok::Lt);
      case '>': return make1(Tok::Gt);
      case '!': return make1(Tok::Not);
      default:
        throw SyntaxError(line, col,
                          std::string("unexpected character '") + src_[pos_] +
                              "'");
    }
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  SpecAst run() {
    SpecAst ast;
    while (cur().tok != Tok::End) {
      switch (cur().tok) {
        case Tok::In: {
          next();
          Token id = expect(Tok::Ident, "input name");
          expect(Tok::Colon, "':'");
          expect(Tok::Events, "'Events'");
          expect(Tok::LBracket, "'['");
          Kind k = parse_kind();
          expect(Tok::RBracket, "']'");
          declare(ast, id);
          ast.inputs.emplace_back(id.text, k);
          break;
        }
        case Tok::Def: {
          next();
          Token id = expect(Tok::Ident, "definition name");
          expect(Tok::Assign, "':='");
          ExprPtr e = parse_expr();
          check_refs(ast, e);
          declare(ast, id);
          ast.definitions.emplace_back(id.text, std::move(e));
          break;
        }
        case Tok::Out: {
          next();
          Token id = expect(Tok::Ident, "output name");
          if (!known(ast, id.text))
            throw UnknownIdentifier("unknown output '" + id.text + "' at " +
                                    std::to_string(id.line) + ":" +
                                    std::to_string(id.col));
          ast.outputs.push_back(id.text);
          break;
        }
        default:
          throw SyntaxError(cur().line, cur().col,
                            "expected 'in', 'def' or 'out'");
      }
    }
    return ast;
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  void next() { if (cur().tok != Tok::End) ++i_; }

  Token expect(Tok t, const std::string& what) {
    if (cur().tok != t)
      throw SyntaxError(cur().line, cur().col,
                        "expected " + what + ", got '" + cur().text + "'");
    Token tok = cur();
    next();
    return tok;
  }

  Kind parse_kind() {
    switch (cur().tok) {
      case Tok::KindInt: next(); return Kind::Int;
      case Tok::KindFloat: next(); return Kind::Float;
      case Tok::KindBool: next(); return Kind::Bool;
      default:
        throw SyntaxError(cur().line, cur().col,
                          "expected Int, Float or Bool");
    }
  }

  static bool known(const SpecAst& ast, const std::string& name) {
    return ast.input_kind(name).has_value() ||
           ast.find_definition(name) != nullptr;
  }

  static void declare(SpecAst& ast, const Token& id) {
    if (known(ast, id.text))
      throw DuplicateName("duplicate name '" + id.text + "' at " +
                          std::to_string(id.line) + ":" +
                          std::to_string(id.col));
  }

  // Only declared inputs and earlier definitions may be referenced; this
  // rule also guarantees the compiled graph is acyclic.
  static void check_refs(const SpecAst& ast, const ExprPtr& e) {
    if (!e) return;
    if (e->tag == Expr::Tag::Ref && !known(ast, e->name))
      throw UnknownIdentifier("unknown identifier '" + e->name + "' at " +
                              std::to_string(e->line) + ":" +
                              std::to_string(e->col));
    check_refs(ast, e->a);
    check_refs(ast, e->b);
  }

  ExprPtr at(ExprPtr e, const Token& t) {
    e->line = t.line;
    e->col = t.col;
    return e;
  }

  ExprPtr parse_expr() { return parse_or(); }

  ExprPtr parse_or() {
    ExprPtr e = parse_and();
    while (cur().tok == Tok::OrOr) {
      Token t = cur();
      next();
      e = at(make_binary(BinOp::Or, e, parse_and()), t);
    }
    return e;
  }

  ExprPtr parse_and() {
    ExprPtr e = parse_imp();
    while (cur().tok == Tok::AndAnd) {
      Token t = cur();
      next();
      e = at(make_binary(BinOp::And, e, parse_imp()), t);
    }
    return e;
  }

  ExprPtr parse_imp() {
    ExprPtr e = parse_cmp();
    if (cur().tok == Tok::Arrow) {
      Token t = cur();
      next();
      // a -> b desugars to !a || b
      ExprPtr rhs = parse_imp();
      e = at(make_binary(BinOp::Or, at(make_unary(UnOp::Not, e), t), rhs), t);
    }
    return e;
  }

  ExprPtr parse_cmp() {
    ExprPtr e = parse_add();
    BinOp op;
    switch (cur().tok) {
      case Tok::Lt: op = BinOp::Lt; break;
      case Tok::Le: op = BinOp::Le; break;
      case Tok::Gt: op = BinOp::Gt; break;
      case Tok::Ge: op = BinOp::Ge; break;
      case Tok::EqEq: op = BinOp::Eq; break;
      case Tok::Ne: op = BinOp::Ne; break;
      default: return e;
    }
    Token t = cur();
    next();
    return at(make_binary(op, e, parse_add()), t);
  }

  ExprPtr parse_add() {
    ExprPtr e = parse_mul();
    while (cur().tok == Tok::Plus || cur().tok == Tok::Minus) {
      BinOp op = cur().tok == Tok::Plus ? BinOp::Add : BinOp::Sub;
      Token t = cur();
      next();
      e = at(make_binary(op, e, parse_mul()), t);
    }
    return e;
  }

  ExprPtr parse_mul() {
    ExprPtr e = parse_unary();
    while (cur().tok == Tok::Star || cur().tok == Tok::Slash) {
      BinOp op = cur().tok == Tok::Star ? BinOp::Mul : BinOp::Div;
      Token t = cur();
      next();
      e = at(make_binary(op, e, parse_unary()), t);
    }
    return e;
  }

  ExprPtr parse_unary() {
    if (cur().tok == Tok::Minus || cur().tok == Tok::Not) {
      UnOp op = cur().tok == Tok::Minus ? UnOp::Neg : UnOp::Not;
      Token t = cur();
      next();
      return at(make_unary(op, parse_unary()), t);
    }
    return parse_atom();
  }

  Value parse_literal() {
    Token t = cur();
    switch (t.tok) {
      case Tok::Number: next(); return t.num;
      case Tok::True: next(); return Value{true};
      case Tok::False: next(); return Value{false};
      case Tok::Minus: {
        next();
        Token n = expect(Tok::Number, "number literal");
        return apply_unary(UnOp::Neg, n.num);
      }
      default:
        throw SyntaxError(t.line, t.col, "expected literal");
    }
  }

  ExprPtr parse_atom() {
    Token t = cur();
    switch (t.tok) {
      case Tok::Number:
      case Tok::True:
      case Tok::False:
        return at(make_literal(parse_literal()), t);
      case Tok::Ident:
        next();
        return at(make_ref(t.text), t);
      case Tok::LParen: {
        next();
        ExprPtr e = parse_expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Prev: {
        next();
        expect(Tok::LParen, "'('");
        ExprPtr e = parse_expr();
        expect(Tok::RParen, "')'");
        return at(make_prev(e), t);
      }
      case Tok::Abs: {
        next();
        expect(Tok::LParen, "'('");
        ExprPtr e = parse_expr();
        expect(Tok::RParen, "')'");
        return at(make_unary(UnOp::Abs, e), t);
      }
      case Tok::Default: {
        next();
        expect(Tok::LParen, "'('");
        ExprPtr e = parse_expr();
        expect(Tok::Comma, "','");
        Value lit = parse_literal();
        expect(Tok::RParen, "')'");
        return at(make_default(e, lit), t);
      }
      default:
        throw SyntaxError(t.line, t.col,
                          "expected expression, got '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

void print_expr(std::ostringstream& os, const ExprPtr& e) {
  switch (e->tag) {
    case Expr::Tag::Literal:
      os << value_to_string(e->lit);
      break;
    case Expr::Tag::Ref:
      os << e->name;
      break;
    case Expr::Tag::Unary:
      if (e->uop == UnOp::Abs) {
        os << "abs(";
        print_expr(os, e->a);
        os << ")";
      } else {
        os << op_name(e->uop) << "(";
        print_expr(os, e->a);
        os << ")";
      }
      break;
    case Expr::Tag::Binary:
      os << "(";
      print_expr(os, e->a);
      os << " " << op_name(e->bop) << " ";
      print_expr(os, e->b);
      os << ")";
      break;
    case Expr::Tag::Prev:
      os << "prev(";
      print_expr(os, e->a);
      os << ")";
      break;
    case Expr::Tag::Default:
      os << "default(";
      print_expr(os, e->a);
      os << ", " << value_to_string(e->lit) << ")";
      break;
  }
}

}  // namespace

SpecAst parse_spec(const std::string& text) {
  Lexer lexer(text);
  Parser parser(lexer.run());
  return parser.run();
}

SpecAst parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open spec file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

std::string pretty_print(const SpecAst& ast) {
  std::ostringstream os;
  for (const auto& [name, kind] : ast.inputs)
    os << "in " << name << ": Events[" << kind_name(kind) << "]\n";
  for (const auto& [name, expr] : ast.definitions) {
    os << "def " << name << " := ";
    print_expr(os, expr);
    os << "\n";
  }
  for (const auto& name : ast.outputs) os << "out " << name << "\n";
  return os.str();
}

namespace {

bool expr_equal(const ExprPtr& x, const ExprPtr& y) {
  if (!x || !y) return !x && !y;
  if (x->tag != y->tag) return false;
  switch (x->tag) {
    case Expr::Tag::Literal: return x->lit == y->lit;
    case Expr::Tag::Ref: return x->name == y->name;
    case Expr::Tag::Unary:
      return x->uop == y->uop && expr_equal(x->a, y->a);
    case Expr::Tag::Binary:
      return x->bop == y->bop && expr_equal(x->a, y->a) &&
             expr_equal(x->b, y->b);
    case Expr::Tag::Prev: return expr_equal(x->a, y->a);
    case Expr::Tag::Default:
      return x->lit == y->lit && expr_equal(x->a, y->a);
  }
  return false;
}

}  // namespace

bool structurally_equal(const SpecAst& x, const SpecAst& y) {
  if (x.inputs != y.inputs || x.outputs != y.outputs) return false;
  if (x.definitions.size() != y.definitions.size()) return false;
  for (std::size_t i = 0; i < x.definitions.size(); ++i) {
    if (x.definitions[i].first != y.definitions[i].first) return false;
    if (!expr_equal(x.definitions[i].second, y.definitions[i].second))
      return false;
  }
  return true;
}

}  // namespace rvmon
