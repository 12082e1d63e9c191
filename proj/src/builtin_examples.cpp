#include "gronwall/builtin_examples.hpp"

#include <cmath>
#include <stdexcept>

namespace gronwall {

double example1_closed_form(double delta) {
  const double s = std::sqrt(delta);
  const double e = std::exp(18.0 * s / 5.0);
  return 0.4 * e + 5.0 / 1296.0 * (-18.0 * s + 5.0 * e - 5.0);
}

double example2_closed_form(double delta) {
  const double c = std::cbrt(delta);
  const double e = std::exp(7.0 * c);
  return std::cbrt(e + 3.0 / 49.0 * (-7.0 * c + 22.0 * e - 22.0));
}

BuiltinExample builtin_example(int id) {
  BuiltinExample ex;
  ex.id = id;
  InequalityProblem& p = ex.problem;
  p.kappa = 1.0;
  p.horizon = 4.0;
  if (id == 1) {
    ex.theorem = Theorem::outer_power;
    ex.closed_form = example1_closed_form;
    p.a = parse_expr("x");
    p.f = parse_expr("sqrt(x)");
    p.kernel(1) = parse_expr("2");
    p.kernel(2) = parse_expr("3");
    p.kernel(3) = parse_expr("x");
    p.gamma = GammaParams{5.0, 4.0, 3.0, 3.0};
  } else if (id == 2) {
    ex.theorem = Theorem::additive;
    ex.closed_form = example2_closed_form;
    p.a = parse_expr("1 + 2*x");
    p.f = parse_expr("cbrt(x)");
    p.kernel(1) = parse_expr("2");
    p.kernel(2) = parse_expr("x");
    p.kernel(3) = parse_expr("5");
    p.kernel(4) = parse_expr("7");
    p.kernel(5) = parse_expr("x");
    p.kernel(6) = parse_expr("x");
    p.gamma = GammaParams{3.0, 2.0, 1.0, 1.0};
  } else {
    throw std::invalid_argument("unknown example " + std::to_string(id) + " (expected 1 or 2)");
  }
  return ex;
}

}  // namespace gronwall
