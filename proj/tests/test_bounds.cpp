#include <doctest.h>

#include <cmath>

#include "gronwall/bounds.hpp"
#include "support.hpp"

using namespace gronwall;
using testing::rel_diff;

namespace {

InequalityProblem example1() {
  InequalityProblem p;
  p.a = parse_expr("x");
  p.f = parse_expr("sqrt(x)");
  p.kernel(1) = parse_expr("2");
  p.kernel(2) = parse_expr("3");
  p.kernel(3) = parse_expr("x");
  p.gamma = {5, 4, 3, 3};
  p.horizon = 4;
  return p;
}

InequalityProblem example2() {
  InequalityProblem p;
  p.a = parse_expr("1 + 2*x");
  p.f = parse_expr("cbrt(x)");
  p.kernel(1) = parse_expr("2");
  p.kernel(2) = parse_expr("x");
  p.kernel(3) = parse_expr("5");
  p.kernel(4) = parse_expr("7");
  p.kernel(5) = parse_expr("x");
  p.kernel(6) = parse_expr("x");
  p.gamma = {3, 2, 1, 1};
  p.horizon = 4;
  return p;
}

InequalityProblem synthetic_power() {
  InequalityProblem p;
  p.a = parse_expr("1 + x");
  p.f = parse_expr("x/2");
  p.kernel(1) = p.kernel(2) = p.kernel(3) = Expr::constant(1);
  p.gamma = {1, 3, 1, 1};
  p.horizon = 2;
  return p;
}

InequalityProblem synthetic_mixed() {
  InequalityProblem p;
  p.a = Expr::constant(1);
  p.f = parse_expr("x/2");
  p.kernel(1) = p.kernel(2) = p.kernel(3) = Expr::constant(1);
  p.gamma = {2, 1, 2, 1};
  p.horizon = 2;
  return p;
}

BoundOptions with_tolerance(double tol) {
  BoundOptions o;
  o.quadrature.abs_tol = tol;
  o.quadrature.rel_tol = tol;
  return o;
}

}  // namespace

TEST_CASE("outer_power: worked example 1") {
  const InequalityProblem p = example1();
  CHECK(bound_outer_power(p, 0.0) == doctest::Approx(0.4).epsilon(1e-12));
  const double e36 = std::exp(3.6);
  const double at_one = 0.4 * e36 + 5.0 / 1296.0 * (-18 + 5 * e36 - 5);
  CHECK(rel_diff(bound_outer_power(p, 1.0), at_one) < 1e-6);
  const double r4 = std::exp(18.0 * 2 / 5);
  CHECK(rel_diff(bound_outer_power(p, 4.0), 0.4 * r4 + 5.0 / 1296.0 * (5 * r4 - 36 - 5)) < 1e-6);
}

TEST_CASE("additive: worked example 2") {
  const InequalityProblem p = example2();
  CHECK(bound_additive(p, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  const double e7 = std::exp(7.0);
  const double at_one = std::cbrt(e7 + 3.0 / 49.0 * (-7 + 22 * e7 - 22));
  CHECK(rel_diff(bound_additive(p, 1.0), at_one) < 1e-6);
  const double r = std::cbrt(2.5);
  const double e = std::exp(7 * r);
  CHECK(rel_diff(bound_additive(p, 2.5), std::cbrt(e + 3.0 / 49.0 * (22 * e - 7 * r - 22))) < 1e-6);
}

TEST_CASE("factored: Φ = 1 + x closed form") {
  InequalityProblem p;
  p.a = Expr::constant(1);
  p.phi = parse_expr("1 + x");
  p.kernel(1) = Expr::constant(1);
  p.gamma = {1, 1, 1, 1};
  p.horizon = 1;
  CHECK(rel_diff(bound_factored(p, 1.0), 2 * std::exp(1.5)) < 1e-9);
}

TEST_CASE("integrodiff_power: degenerate cases") {
  InequalityProblem p = synthetic_power();
  p.gamma = {2, 3, 1, 1};
  p.kappa = 1.7;
  const double z2 = 0.5 * std::sqrt(1.7);
  CHECK(bound_integrodiff_power(p, 0.0) == 0.0);
  p.kernel(3) = Expr::constant(0);
  for (double d : {0.25, 1.0, 1.75}) {
    CAPTURE(d);
    CHECK(bound_integrodiff_power(p, d) == doctest::Approx(d * z2).epsilon(1e-14));
  }
}

TEST_CASE("integrodiff_mixed: degenerate cases") {
  InequalityProblem p = synthetic_mixed();
  CHECK(bound_integrodiff_mixed(p, 0.0) == 0.0);

  p.kernel(1) = p.kernel(2) = p.kernel(3) = Expr::constant(0);
  p.a = Expr::constant(3);
  p.kappa = 1.7;
  // γ = (2, 1, 2): ζ1 = ζ3 = κ^(-1/2)/2, ζ2 = ζ4 = κ^(1/2)/2.
  const double z1 = 0.5 / std::sqrt(1.7), z2 = 0.5 * std::sqrt(1.7);
  const double z3 = z1, z4 = z2;
  for (double d : {0.3, 1.0, 2.0}) {
    CAPTURE(d);
    const double expected = d * z2 + (z1 / z3) * d * (z3 * 3 + z4);
    CHECK(rel_diff(bound_integrodiff_mixed(p, d), expected) < 1e-12);
  }
}

TEST_CASE("tolerance refinement leaves the synthetic bounds unchanged") {
  const double p8 = bound_integrodiff_power(synthetic_power(), 1.0, with_tolerance(1e-8));
  const double p10 = bound_integrodiff_power(synthetic_power(), 1.0, with_tolerance(1e-10));
  CHECK(std::isfinite(p8));
  CHECK(rel_diff(p8, p10) < 1e-6);

  const double m8 = bound_integrodiff_mixed(synthetic_mixed(), 1.0, with_tolerance(1e-8));
  const double m10 = bound_integrodiff_mixed(synthetic_mixed(), 1.0, with_tolerance(1e-10));
  CHECK(rel_diff(m8, m10) < 1e-6);

  for (Theorem t : {Theorem::outer_power, Theorem::additive}) {
    const InequalityProblem p = t == Theorem::outer_power ? example1() : example2();
    for (double d : {0.5, 2.0, 4.0}) {
      CAPTURE(d);
      const BoundOptions base;
      CHECK(rel_diff(evaluate_bound(t, p, d, base),
                     evaluate_bound(t, p, d, {base.quadrature.tightened(2)})) < 1e-6);
    }
  }
}

TEST_CASE("outer_power with γ1 = γ4 does not depend on κ") {
  InequalityProblem p = example1();
  p.gamma = {3, 4, 2, 3};
  p.a = parse_expr("1 + x");
  for (double d : {0.5, 1.5, 3.0}) {
    CAPTURE(d);
    p.kappa = 1.0;
    const double ref = bound_outer_power(p, d);
    for (double kappa : {0.5, 2.0}) {
      p.kappa = kappa;
      CHECK(rel_diff(bound_outer_power(p, d), ref) < 1e-9);
    }
  }
}

TEST_CASE("every bound is nondecreasing in δ for nonnegative kernels") {
  struct Case {
    Theorem theorem;
    InequalityProblem problem;
  };
  InequalityProblem factored = example2();
  factored.gamma = {2, 2, 1, 1};
  factored.phi = parse_expr("1 + x^2");
  const Case cases[] = {{Theorem::integrodiff_power, synthetic_power()},
                        {Theorem::integrodiff_mixed, synthetic_mixed()},
                        {Theorem::outer_power, example1()},
                        {Theorem::additive, example2()},
                        {Theorem::factored, factored}};
  for (const Case& c : cases) {
    CAPTURE(theorem_name(c.theorem));
    const auto xs = linspace(0.0, c.problem.horizon, 33);
    const BoundCurve curve = bound_curve(c.theorem, c.problem, xs);
    CHECK(curve.theorem == c.theorem);
    CHECK(curve.singular_cushion.has_value() == (c.theorem == Theorem::integrodiff_power));
    const auto ys = curve.grid.values();
    for (std::size_t i = 0; i < ys.size(); ++i) {
      CHECK(ys[i] >= 0.0);
      if (i) CHECK(ys[i] >= ys[i - 1] * (1 - 1e-12));
    }
  }
}

TEST_CASE("bound_curve rejects abscissae outside the horizon") {
  const InequalityProblem p = example1();
  const double xs[] = {0.0, 5.0};
  CHECK_THROWS_AS(bound_curve(Theorem::outer_power, p, xs), DomainError);
}

TEST_CASE("exponent constraints are enforced before evaluation") {
  InequalityProblem p = example1();
  p.gamma = {2, 4, 3, 3};
  CHECK_THROWS_AS(bound_outer_power(p, 1.0), DomainError);
  InequalityProblem q = example2();
  q.gamma = {1, 2, 1, 1};
  CHECK_THROWS_AS(bound_additive(q, 1.0), DomainError);
  CHECK_THROWS_AS(bound_outer_power(example1(), -1.0), DomainError);
}

TEST_CASE("classical bounds") {
  CHECK(bound_gronwall(0, 1, 1) == 1.0);
  CHECK(bound_gronwall(1, 1, 1) == doctest::Approx(std::exp(1.0)));
  CHECK(bound_gronwall(2, 0.5, 3) == doctest::Approx(1.5 * std::exp(6.0)).epsilon(1e-14));

  CHECK(bound_bellman(1, Expr::constant(1), 1) == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
  CHECK(bound_bellman(0, Expr::constant(1), 1) == 0.0);
  CHECK(bound_bellman(2, parse_expr("x"), 2) == doctest::Approx(2 * std::exp(2.0)).epsilon(1e-12));

  CHECK(bound_pachpatte(3, Expr::constant(0), Expr::constant(5), 1) == 3.0);
  CHECK(rel_diff(bound_pachpatte(1, Expr::constant(1), Expr::constant(0), 1), std::exp(1.0)) <
        1e-9);
  CHECK(rel_diff(bound_pachpatte(1, Expr::constant(1), Expr::constant(1), 1),
                 1 + (std::exp(2.0) - 1) / 2) < 1e-9);
}

TEST_CASE("outer_power reduces to Bellman with γ1 = γ4 = 1") {
  InequalityProblem p;
  p.a = Expr::constant(2.5);
  p.kernel(1) = parse_expr("1 + x");
  p.gamma = {1, 2, 1, 1};
  p.horizon = 1;
  for (double d : linspace(0, 1, 9)) {
    CAPTURE(d);
    CHECK(rel_diff(bound_outer_power(p, d), bound_bellman(2.5, p.kernel(1), d)) < 1e-9);
  }
}

TEST_CASE("factored with Φ = 1 equals additive with remapped kernels") {
  InequalityProblem fac;
  fac.a = parse_expr("1 + x");
  fac.f = parse_expr("x^2/2");
  fac.kernel(1) = parse_expr("2");
  fac.kernel(2) = parse_expr("x");
  fac.kernel(3) = parse_expr("1 + x");
  fac.gamma = {2, 2, 1, 1};
  fac.kappa = 1.3;
  fac.horizon = 2;

  InequalityProblem add = fac;
  add.psi = {};
  add.kernel(1) = fac.kernel(1);
  add.kernel(3) = fac.kernel(2);
  add.kernel(4) = fac.kernel(3);
  for (double d : {0.0, 0.5, 1.0, 2.0}) {
    CAPTURE(d);
    CHECK(rel_diff(bound_factored(fac, d), bound_additive(add, d)) < 1e-9);
  }
}

TEST_CASE("strict limits change only the theorems whose display differs") {
  BoundOptions strict;
  strict.strict_limits = true;

  const InequalityProblem p1 = example1();
  CHECK(bound_outer_power(p1, 1.0, strict) > bound_outer_power(p1, 1.0) * (1 + 1e-3));
  CHECK(bound_outer_power(p1, 0.0, strict) == bound_outer_power(p1, 0.0));

  const InequalityProblem p2 = example2();
  CHECK(bound_additive(p2, 1.0, strict) == bound_additive(p2, 1.0));

  InequalityProblem fac = p2;
  fac.gamma = {2, 2, 1, 1};
  fac.phi = parse_expr("1 + x");
  fac.a = parse_expr("1 + x");
  // Read literally, a⁻¹(0) has no preimage once a(0) ≥ 1.
  CHECK_THROWS_AS(bound_factored(fac, 2.0, strict), DomainError);
  fac.a = parse_expr("x");
  const double loose = bound_factored(fac, 2.0);
  const double literal = bound_factored(fac, 2.0, strict);
  CHECK(std::isfinite(literal));
  CHECK(rel_diff(loose, literal) > 1e-6);
}
