#include "anisolag/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "anisolag/error.hpp"

namespace anisolag {

struct Expr::Node {
  Op op = Op::Const;
  double value = 0.0;
  int index = 0;
  int exponent = 0;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;

  bool depends_x = false;
  bool differentiable = true;
  int x_arity = 0;
  int q_arity = 0;
};

namespace {

double int_power(double base, int exponent) {
  if (exponent < 0) return 1.0 / int_power(base, -exponent);
  double result = 1.0;
  double b = base;
  unsigned e = static_cast<unsigned>(exponent);
  while (e != 0) {
    if (e & 1U) result *= b;
    b *= b;
    e >>= 1U;
  }
  return result;
}

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return std::to_string(v);
  return std::string(buf, end);
}

bool is_binary(Expr::Op op) {
  switch (op) {
    case Expr::Op::Add:
    case Expr::Op::Sub:
    case Expr::Op::Mul:
    case Expr::Op::Div:
    case Expr::Op::Min:
    case Expr::Op::Max:
      return true;
    default:
      return false;
  }
}

}  // namespace

Expr::Expr() : Expr(0.0) {}

Expr::Expr(double value) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = value;
  node_ = std::move(n);
}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::constant(double value) { return Expr(value); }

Expr Expr::x(int index) {
  if (index < 0) throw InvalidArgument("variable index must be non-negative");
  auto n = std::make_shared<Node>();
  n->op = Op::VarX;
  n->index = index;
  n->depends_x = true;
  n->x_arity = index + 1;
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::q(int index) {
  if (index < 0) throw InvalidArgument("variable index must be non-negative");
  auto n = std::make_shared<Node>();
  n->op = Op::VarQ;
  n->index = index;
  n->q_arity = index + 1;
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::make(Op op, const Expr& a, const Expr& b, int exponent) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->exponent = exponent;
  n->a = a.node_;
  const bool binary = is_binary(op);
  if (binary) n->b = b.node_;

  n->depends_x = a.node_->depends_x || (binary && b.node_->depends_x);
  n->x_arity = std::max(a.node_->x_arity, binary ? b.node_->x_arity : 0);
  n->q_arity = std::max(a.node_->q_arity, binary ? b.node_->q_arity : 0);
  n->differentiable = a.node_->differentiable && (!binary || b.node_->differentiable);
  if ((op == Op::Abs || op == Op::Min || op == Op::Max) && n->depends_x) n->differentiable = false;

  Expr out{std::shared_ptr<const Node>(std::move(n))};
  // Fold constant subtrees so derivatives stay small.
  if (a.is_constant() && (!binary || b.is_constant())) {
    return Expr(out.eval({}, {}));
  }
  return out;
}

Expr::Op Expr::op() const { return node_->op; }
bool Expr::is_constant() const { return node_->op == Op::Const; }
double Expr::constant_value() const { return node_->value; }
bool Expr::depends_on_x() const { return node_->depends_x; }
bool Expr::differentiable_in_x() const { return node_->differentiable; }
int Expr::x_arity() const { return node_->x_arity; }
int Expr::q_arity() const { return node_->q_arity; }

namespace {

bool is_value(const Expr& e, double v) { return e.is_constant() && e.constant_value() == v; }

}  // namespace

Expr operator+(const Expr& a, const Expr& b) {
  if (is_value(a, 0.0)) return b;
  if (is_value(b, 0.0)) return a;
  return Expr::make(Expr::Op::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (is_value(b, 0.0)) return a;
  if (is_value(a, 0.0)) return -b;
  return Expr::make(Expr::Op::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (is_value(a, 0.0) || is_value(b, 0.0)) return Expr(0.0);
  if (is_value(a, 1.0)) return b;
  if (is_value(b, 1.0)) return a;
  return Expr::make(Expr::Op::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (is_value(b, 1.0)) return a;
  if (is_value(a, 0.0) && !(b.is_constant() && b.constant_value() == 0.0)) return Expr(0.0);
  return Expr::make(Expr::Op::Div, a, b);
}

Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr(-a.constant_value());
  return Expr::make(Expr::Op::Neg, a);
}

Expr pow(const Expr& base, int exponent) {
  if (exponent == 0) return Expr(1.0);
  if (exponent == 1) return base;
  return Expr::make(Expr::Op::Pow, base, Expr(), exponent);
}

Expr exp(const Expr& a) { return Expr::make(Expr::Op::Exp, a); }
Expr abs(const Expr& a) { return Expr::make(Expr::Op::Abs, a); }
Expr sqrt(const Expr& a) { return Expr::make(Expr::Op::Sqrt, a); }
Expr min(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Min, a, b); }
Expr max(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Max, a, b); }

namespace {

double eval_node(const Expr::Node& n, std::span<const double> x, std::span<const double> q) {
  using Op = Expr::Op;
  switch (n.op) {
    case Op::Const:
      return n.value;
    case Op::VarX:
      if (static_cast<std::size_t>(n.index) >= x.size())
        throw DimensionError("expression references x" + std::to_string(n.index + 1) + " but point has dimension " +
                             std::to_string(x.size()));
      return x[static_cast<std::size_t>(n.index)];
    case Op::VarQ:
      if (static_cast<std::size_t>(n.index) >= q.size())
        throw DimensionError("expression references q" + std::to_string(n.index + 1) +
                             " but argument has dimension " + std::to_string(q.size()));
      return q[static_cast<std::size_t>(n.index)];
    case Op::Add:
      return eval_node(*n.a, x, q) + eval_node(*n.b, x, q);
    case Op::Sub:
      return eval_node(*n.a, x, q) - eval_node(*n.b, x, q);
    case Op::Mul:
      return eval_node(*n.a, x, q) * eval_node(*n.b, x, q);
    case Op::Div:
      return eval_node(*n.a, x, q) / eval_node(*n.b, x, q);
    case Op::Neg:
      return -eval_node(*n.a, x, q);
    case Op::Pow:
      return int_power(eval_node(*n.a, x, q), n.exponent);
    case Op::Exp:
      return std::exp(eval_node(*n.a, x, q));
    case Op::Abs:
      return std::fabs(eval_node(*n.a, x, q));
    case Op::Sqrt:
      return std::sqrt(eval_node(*n.a, x, q));
    case Op::Min:
      return std::min(eval_node(*n.a, x, q), eval_node(*n.b, x, q));
    case Op::Max:
      return std::max(eval_node(*n.a, x, q), eval_node(*n.b, x, q));
  }
  return 0.0;
}

}  // namespace

double Expr::eval(std::span<const double> x, std::span<const double> q) const { return eval_node(*node_, x, q); }

Expr Expr::derivative_x(int index) const {
  const Node& n = *node_;
  if (!n.depends_x) return Expr(0.0);
  const Expr a = n.a ? Expr(n.a) : Expr();
  const Expr b = n.b ? Expr(n.b) : Expr();
  switch (n.op) {
    case Op::Const:
    case Op::VarQ:
      return Expr(0.0);
    case Op::VarX:
      return Expr(n.index == index ? 1.0 : 0.0);
    case Op::Add:
      return a.derivative_x(index) + b.derivative_x(index);
    case Op::Sub:
      return a.derivative_x(index) - b.derivative_x(index);
    case Op::Mul:
      return a.derivative_x(index) * b + a * b.derivative_x(index);
    case Op::Div:
      return (a.derivative_x(index) * b - a * b.derivative_x(index)) / pow(b, 2);
    case Op::Neg:
      return -a.derivative_x(index);
    case Op::Pow:
      return Expr(static_cast<double>(n.exponent)) * pow(a, n.exponent - 1) * a.derivative_x(index);
    case Op::Exp:
      return *this * a.derivative_x(index);
    case Op::Sqrt:
      return a.derivative_x(index) / (Expr(2.0) * *this);
    case Op::Abs:
    case Op::Min:
    case Op::Max:
      throw NonDifferentiableError("cannot differentiate " + str() + ": abs/min/max is not differentiable");
  }
  return Expr(0.0);
}

std::string Expr::str() const {
  const Node& n = *node_;
  const auto sub = [](const std::shared_ptr<const Node>& p) { return Expr(p).str(); };
  switch (n.op) {
    case Op::Const:
      return n.value < 0 ? "(" + format_number(n.value) + ")" : format_number(n.value);
    case Op::VarX:
      return "x" + std::to_string(n.index + 1);
    case Op::VarQ:
      return "q" + std::to_string(n.index + 1);
    case Op::Add:
      return "(" + sub(n.a) + " + " + sub(n.b) + ")";
    case Op::Sub:
      return "(" + sub(n.a) + " - " + sub(n.b) + ")";
    case Op::Mul:
      return "(" + sub(n.a) + " * " + sub(n.b) + ")";
    case Op::Div:
      return "(" + sub(n.a) + " / " + sub(n.b) + ")";
    case Op::Neg:
      return "(-" + sub(n.a) + ")";
    case Op::Pow:
      return "(" + sub(n.a) + "^" + std::to_string(n.exponent) + ")";
    case Op::Exp:
      return "exp(" + sub(n.a) + ")";
    case Op::Abs:
      return "abs(" + sub(n.a) + ")";
    case Op::Sqrt:
      return "sqrt(" + sub(n.a) + ")";
    case Op::Min:
      return "min(" + sub(n.a) + ", " + sub(n.b) + ")";
    case Op::Max:
      return "max(" + sub(n.a) + ", " + sub(n.b) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Parser
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | '+' unary | power
//   power   := primary ('^' exponent)?
//   exponent:= ['-'|'+'] integer | '(' ['-'|'+'] integer ')'
//   primary := number | x<k> | q<k> | func '(' expr [',' expr] ')' | '(' expr ')'
// ---------------------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("expression parse error at offset " + std::to_string(pos_) + ": " + what + " in \"" +
                     std::string(text_) + "\"");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = lhs + parse_term();
      } else if (accept('-')) {
        lhs = lhs - parse_term();
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = lhs * parse_unary();
      } else if (accept('/')) {
        lhs = lhs / parse_unary();
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) return -parse_unary();
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (accept('^')) return pow(base, parse_exponent());
    return base;
  }

  int parse_exponent() {
    const bool paren = accept('(');
    int sign = 1;
    if (accept('-')) {
      sign = -1;
    } else {
      accept('+');
    }
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("exponent must be an integer literal");
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E'))
      fail("exponent must be an integer literal");
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_) fail("exponent out of range");
    if (paren) expect(')');
    return sign * value;
  }

  Expr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  Expr parse_number() {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec != std::errc()) fail("malformed number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return Expr(value);
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);

    if ((name[0] == 'x' || name[0] == 'q') && name.size() > 1 &&
        std::all_of(name.begin() + 1, name.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      int index = 0;
      const auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), index);
      if (ec != std::errc() || ptr != name.data() + name.size() || index < 1) {
        pos_ = start;
        fail("variable indices start at 1");
      }
      return name[0] == 'x' ? Expr::x(index - 1) : Expr::q(index - 1);
    }

    if (name == "exp" || name == "abs" || name == "sqrt") {
      expect('(');
      Expr arg = parse_expr();
      expect(')');
      if (name == "exp") return exp(arg);
      if (name == "abs") return abs(arg);
      return sqrt(arg);
    }
    if (name == "min" || name == "max") {
      expect('(');
      Expr lhs = parse_expr();
      expect(',');
      Expr rhs = parse_expr();
      expect(')');
      return name == "min" ? min(lhs, rhs) : max(lhs, rhs);
    }
    pos_ = start;
    fail("unknown identifier '" + std::string(name) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr Expr::parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace anisolag
