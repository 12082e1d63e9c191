#include "gronwall/expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace gronwall {

struct Expr::Node {
  Op op = Op::constant;
  double value = 0.0;
  // Leaves keep null children; default-constructed Exprs would recurse into zero_node().
  Expr a{std::shared_ptr<const Node>{}};
  Expr b{std::shared_ptr<const Node>{}};
};

namespace {

const Expr& empty_expr() {
  static const Expr e;
  return e;
}

std::shared_ptr<const Expr::Node> zero_node() {
  static const auto node = std::make_shared<const Expr::Node>();
  return node;
}

bool is_binary(Op op) {
  return op == Op::add || op == Op::sub || op == Op::mul || op == Op::div;
}

bool is_call(Op op) { return op == Op::exp || op == Op::sqrt || op == Op::cbrt; }

const char* call_name(Op op) {
  switch (op) {
    case Op::exp: return "exp";
    case Op::sqrt: return "sqrt";
    case Op::cbrt: return "cbrt";
    default: return "?";
  }
}

int precedence(Op op) {
  switch (op) {
    case Op::add:
    case Op::sub: return 1;
    case Op::mul:
    case Op::div: return 2;
    case Op::pow: return 3;
    default: return 4;
  }
}

void print_literal(double v, std::string& out) {
  std::array<char, 512> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::fixed);
  if (ec != std::errc{}) {
    throw std::runtime_error("literal too long to print");
  }
  out.append(buf.data(), end);
}

void print(const Expr& e, std::string& out) {
  const Op op = e.op();
  switch (op) {
    case Op::variable: out += 'x'; return;
    case Op::constant: print_literal(e.value(), out); return;
    case Op::exp:
    case Op::sqrt:
    case Op::cbrt:
      out += call_name(op);
      out += '(';
      print(e.lhs(), out);
      out += ')';
      return;
    case Op::pow: {
      const bool paren = precedence(e.lhs().op()) < 4;
      if (paren) out += '(';
      print(e.lhs(), out);
      if (paren) out += ')';
      out += '^';
      print_literal(e.value(), out);
      return;
    }
    default: break;
  }
  const int p = precedence(op);
  const bool lparen = precedence(e.lhs().op()) < p;
  const bool rparen = precedence(e.rhs().op()) <= p;
  if (lparen) out += '(';
  print(e.lhs(), out);
  if (lparen) out += ')';
  switch (op) {
    case Op::add: out += " + "; break;
    case Op::sub: out += " - "; break;
    case Op::mul: out += '*'; break;
    default: out += '/'; break;
  }
  if (rparen) out += '(';
  print(e.rhs(), out);
  if (rparen) out += ')';
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr parse() {
    Expr e = parse_sum();
    skip_ws();
    if (pos_ != src_.size()) {
      fail({"+", "-", "*", "/", "end of input"},
           "unexpected '" + std::string(1, src_[pos_]) + "'");
    }
    return e;
  }

 private:
  [[noreturn]] void fail(std::vector<std::string> expected, std::string msg) {
    fail_at(pos_, std::move(expected), std::move(msg));
  }

  [[noreturn]] void fail_at(std::size_t at, std::vector<std::string> expected,
                            std::string msg) {
    ParseDiagnostic d;
    d.offset = std::min(at, src_.size());
    d.expected = std::move(expected);
    d.message = std::move(msg);
    throw ParseError(std::move(d));
  }

  void skip_ws() {
    while (pos_ < src_.size() &&
           (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
            src_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return at_end() ? '\0' : src_[pos_]; }

  Expr parse_sum() {
    Expr lhs = parse_term();
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c != '+' && c != '-') return lhs;
      ++pos_;
      Expr rhs = parse_term();
      lhs = Expr::binary(c == '+' ? Op::add : Op::sub, std::move(lhs), std::move(rhs));
    }
  }

  Expr parse_term() {
    Expr lhs = parse_factor();
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c != '*' && c != '/') return lhs;
      ++pos_;
      Expr rhs = parse_factor();
      lhs = Expr::binary(c == '*' ? Op::mul : Op::div, std::move(lhs), std::move(rhs));
    }
  }

  Expr parse_factor() {
    Expr base = parse_atom();
    skip_ws();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) {
      fail({"literal"}, "exponent must be a nonnegative literal");
    }
    return Expr::power(std::move(base), parse_literal());
  }

  double parse_literal() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (peek() == '.') {
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) {
        fail({"digit"}, "expected digits after decimal point");
      }
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (ec != std::errc{} || ptr != src_.data() + pos_ || !std::isfinite(v)) {
      fail_at(start, {"literal"}, "literal out of range");
    }
    return v;
  }

  Expr parse_atom() {
    skip_ws();
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return Expr::constant(parse_literal());
    }
    if (c == '(') {
      ++pos_;
      Expr inner = parse_sum();
      expect_close();
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
      const std::string_view name = src_.substr(start, pos_ - start);
      if (name == "x") return Expr::variable();
      Op fn;
      if (name == "exp") {
        fn = Op::exp;
      } else if (name == "sqrt") {
        fn = Op::sqrt;
      } else if (name == "cbrt") {
        fn = Op::cbrt;
      } else {
        fail_at(start, {"x", "exp", "sqrt", "cbrt"},
                "unknown identifier '" + std::string(name) + "'");
      }
      skip_ws();
      if (peek() != '(') fail({"("}, "expected '(' after function name");
      ++pos_;
      Expr arg = parse_sum();
      skip_ws();
      if (peek() == ',') fail({")"}, "functions take exactly one argument");
      expect_close();
      return Expr::call(fn, std::move(arg));
    }
    if (at_end()) {
      fail({"literal", "x", "exp", "sqrt", "cbrt", "("}, "unexpected end of input");
    }
    fail({"literal", "x", "exp", "sqrt", "cbrt", "("},
         "unexpected '" + std::string(1, c) + "'");
  }

  void expect_close() {
    skip_ws();
    if (peek() != ')') {
      fail({")"}, at_end() ? "unbalanced parenthesis at end of input" : "missing ')'");
    }
    ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Evaluation

[[noreturn]] void eval_fail(const char* what, const Expr& e, double x) {
  throw EvalError(what, e.to_string(), x);
}

double eval(const Expr& e, double x) {
  double r = 0.0;
  switch (e.op()) {
    case Op::variable: return x;
    case Op::constant: return e.value();
    case Op::add: r = eval(e.lhs(), x) + eval(e.rhs(), x); break;
    case Op::sub: r = eval(e.lhs(), x) - eval(e.rhs(), x); break;
    case Op::mul: r = eval(e.lhs(), x) * eval(e.rhs(), x); break;
    case Op::div: {
      const double num = eval(e.lhs(), x);
      const double den = eval(e.rhs(), x);
      if (den == 0.0) eval_fail("division by zero", e, x);
      r = num / den;
      break;
    }
    case Op::pow: {
      const double base = eval(e.lhs(), x);
      const double p = e.value();
      if (base < 0.0 && p != std::floor(p)) {
        eval_fail("negative base raised to a fractional power", e, x);
      }
      r = std::pow(base, p);
      break;
    }
    case Op::exp: r = std::exp(eval(e.lhs(), x)); break;
    case Op::sqrt: {
      const double arg = eval(e.lhs(), x);
      if (arg < 0.0) eval_fail("square root of a negative number", e, x);
      r = std::sqrt(arg);
      break;
    }
    case Op::cbrt: r = std::cbrt(eval(e.lhs(), x)); break;
  }
  if (!std::isfinite(r)) eval_fail("non-finite result", e, x);
  return r;
}

// ---------------------------------------------------------------------------
// Differentiation with constant folding

bool is_const(const Expr& e, double v) { return e.is_constant() && e.value() == v; }

Expr make_add(Expr a, Expr b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() + b.value());
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  return Expr::binary(Op::add, std::move(a), std::move(b));
}

Expr make_sub(Expr a, Expr b) {
  if (is_const(b, 0.0)) return a;
  if (a == b) return Expr::constant(0.0);
  // Folding stops at negative results so every literal stays nonnegative.
  if (a.is_constant() && b.is_constant() && a.value() >= b.value()) {
    return Expr::constant(a.value() - b.value());
  }
  return Expr::binary(Op::sub, std::move(a), std::move(b));
}

Expr make_mul(Expr a, Expr b) {
  if (is_const(a, 0.0) || is_const(b, 0.0)) return Expr::constant(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() * b.value());
  return Expr::binary(Op::mul, std::move(a), std::move(b));
}

Expr make_div(Expr a, Expr b) {
  if (is_const(a, 0.0)) return Expr::constant(0.0);
  if (is_const(b, 1.0)) return a;
  if (a.is_constant() && b.is_constant() && b.value() != 0.0) {
    return Expr::constant(a.value() / b.value());
  }
  return Expr::binary(Op::div, std::move(a), std::move(b));
}

Expr make_pow(Expr base, double p) {
  if (p == 0.0) return Expr::constant(1.0);
  if (p == 1.0) return base;
  if (base.is_constant()) {
    const double v = std::pow(base.value(), p);
    if (std::isfinite(v)) return Expr::constant(v);
  }
  return Expr::power(std::move(base), p);
}

Expr derive(const Expr& e) {
  switch (e.op()) {
    case Op::variable: return Expr::constant(1.0);
    case Op::constant: return Expr::constant(0.0);
    case Op::add: return make_add(derive(e.lhs()), derive(e.rhs()));
    case Op::sub: return make_sub(derive(e.lhs()), derive(e.rhs()));
    case Op::mul:
      return make_add(make_mul(derive(e.lhs()), e.rhs()), make_mul(e.lhs(), derive(e.rhs())));
    case Op::div: {
      const Expr& u = e.lhs();
      const Expr& v = e.rhs();
      return make_div(make_sub(make_mul(derive(u), v), make_mul(u, derive(v))), make_pow(v, 2.0));
    }
    case Op::pow: {
      const Expr& u = e.lhs();
      const double p = e.value();
      Expr du = derive(u);
      if (p >= 1.0) {
        return make_mul(make_mul(Expr::constant(p), make_pow(u, p - 1.0)), std::move(du));
      }
      // u^(p-1) with p < 1 is written as a quotient to keep exponents nonnegative.
      return make_div(make_mul(Expr::constant(p), std::move(du)), make_pow(u, 1.0 - p));
    }
    case Op::exp: return make_mul(e, derive(e.lhs()));
    case Op::sqrt: return make_div(derive(e.lhs()), make_mul(Expr::constant(2.0), e));
    case Op::cbrt:
      return make_div(derive(e.lhs()), make_mul(Expr::constant(3.0), make_pow(e, 2.0)));
  }
  return Expr::constant(0.0);
}

}  // namespace

// ---------------------------------------------------------------------------

std::string ParseDiagnostic::to_string() const {
  std::ostringstream os;
  os << "parse error at offset " << offset << " (column " << column() << "): " << message;
  if (!expected.empty()) {
    os << "; expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) os << (i + 1 == expected.size() ? " or " : ", ");
      os << '\'' << expected[i] << '\'';
    }
  }
  return os.str();
}

ParseError::ParseError(ParseDiagnostic diag)
    : std::runtime_error(diag.to_string()), diag_(std::move(diag)) {}

EvalError::EvalError(const std::string& what, std::string subexpression, double x)
    : std::domain_error(what + " in '" + subexpression + "' at x = " + std::to_string(x)),
      subexpr_(std::move(subexpression)),
      x_(x) {}

Expr::Expr() : node_(zero_node()) {}

Expr Expr::variable() {
  auto n = std::make_shared<Node>();
  n->op = Op::variable;
  return Expr(std::move(n));
}

Expr Expr::constant(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("expression literal must be finite");
  auto n = std::make_shared<Node>();
  n->op = Op::constant;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
  if (!is_binary(op)) throw std::invalid_argument("Expr::binary: not a binary operator");
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(lhs);
  n->b = std::move(rhs);
  return Expr(std::move(n));
}

Expr Expr::power(Expr base, double exponent) {
  if (!std::isfinite(exponent)) throw std::invalid_argument("exponent must be finite");
  auto n = std::make_shared<Node>();
  n->op = Op::pow;
  n->value = exponent;
  n->a = std::move(base);
  return Expr(std::move(n));
}

Expr Expr::call(Op fn, Expr arg) {
  if (!is_call(fn)) throw std::invalid_argument("Expr::call: not a function");
  auto n = std::make_shared<Node>();
  n->op = fn;
  n->a = std::move(arg);
  return Expr(std::move(n));
}

Op Expr::op() const { return node_->op; }
double Expr::value() const { return node_->value; }

const Expr& Expr::lhs() const {
  const Op o = op();
  return (o == Op::variable || o == Op::constant) ? empty_expr() : node_->a;
}

const Expr& Expr::rhs() const { return is_binary(op()) ? node_->b : empty_expr(); }

bool Expr::depends_on_x() const {
  switch (op()) {
    case Op::variable: return true;
    case Op::constant: return false;
    default: return lhs().depends_on_x() || (is_binary(op()) && rhs().depends_on_x());
  }
}

double Expr::operator()(double x) const { return eval(*this, x); }

std::string Expr::to_string() const {
  std::string out;
  print(*this, out);
  return out;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::variable: return true;
    case Op::constant: return a.value() == b.value();
    case Op::pow: return a.value() == b.value() && a.lhs() == b.lhs();
    case Op::exp:
    case Op::sqrt:
    case Op::cbrt: return a.lhs() == b.lhs();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

std::size_t Expr::size() const {
  switch (op()) {
    case Op::variable:
    case Op::constant: return 1;
    default: return 1 + lhs().size() + (is_binary(op()) ? rhs().size() : 0);
  }
}

std::size_t Expr::depth() const {
  switch (op()) {
    case Op::variable:
    case Op::constant: return 1;
    default:
      return 1 + std::max(lhs().depth(), is_binary(op()) ? rhs().depth() : std::size_t{0});
  }
}

Expr parse_expr(std::string_view src) { return Parser(src).parse(); }

double eval_expr(const Expr& e, double x) { return e(x); }

Expr differentiate_expr(const Expr& e) { return derive(e); }

}  // namespace gronwall
