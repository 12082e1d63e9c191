#pragma once

// Closed-form scalar functions of one variable `x`, as written in problem
// definition files:
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := atom ('^' literal)?
//   atom   := literal | 'x' | func '(' expr ')' | '(' expr ')'
//   func   := 'exp' | 'sqrt' | 'cbrt'
//
// Literals are nonnegative decimals with an optional fraction. Whitespace is
// ignored; implicit multiplication is rejected.

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gronwall {

enum class Op { variable, constant, add, sub, mul, div, pow, exp, sqrt, cbrt };

struct ParseDiagnostic {
  std::size_t offset = 0;             // 0-based byte offset into the source
  std::vector<std::string> expected;  // tokens that would have been accepted
  std::string message;

  /// 1-based column, as editors count it.
  std::size_t column() const { return offset + 1; }
  std::string to_string() const;
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(ParseDiagnostic diag);
  const ParseDiagnostic& diagnostic() const noexcept { return diag_; }

 private:
  ParseDiagnostic diag_;
};

/// Evaluation left the function's domain (sqrt of a negative, division by
/// zero, overflow). `subexpression()` is the printed offending node.
class EvalError : public std::domain_error {
 public:
  EvalError(const std::string& what, std::string subexpression, double x);
  const std::string& subexpression() const noexcept { return subexpr_; }
  double at() const noexcept { return x_; }

 private:
  std::string subexpr_;
  double x_;
};

/// Immutable expression tree. Copies share structure; safe to evaluate
/// concurrently.
class Expr {
 public:
  struct Node;

  /// The constant 0.
  Expr();

  static Expr variable();
  static Expr constant(double value);
  static Expr binary(Op op, Expr lhs, Expr rhs);
  static Expr power(Expr base, double exponent);
  static Expr call(Op fn, Expr arg);

  Op op() const;
  /// Literal value for constants, exponent for `pow`.
  double value() const;
  /// Operand(s); `rhs()` is only valid for binary nodes.
  const Expr& lhs() const;
  const Expr& rhs() const;

  bool is_constant() const { return op() == Op::constant; }
  bool is_variable() const { return op() == Op::variable; }
  bool depends_on_x() const;

  double operator()(double x) const;

  /// Prints in the grammar above with minimal parentheses; re-parsing the
  /// output yields a structurally identical tree.
  std::string to_string() const;

  /// Structural identity (same shape, same literals).
  friend bool operator==(const Expr& a, const Expr& b);

  std::size_t size() const;
  std::size_t depth() const;

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Expr parse_expr(std::string_view src);
double eval_expr(const Expr& e, double x);
/// Symbolic d/dx with constant folding. The result stays inside the grammar.
Expr differentiate_expr(const Expr& e);

}  // namespace gronwall
