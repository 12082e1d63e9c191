#include <doctest.h>

#include <cmath>

#include "gronwall/expr.hpp"
#include "gronwall/numerics.hpp"
#include "support.hpp"

using namespace gronwall;
using testing::rel_diff;

namespace {

// Tolerance the integrator promises for a result of magnitude `scale`.
double promised(const QuadratureConfig& c, double scale) {
  return std::max(c.abs_tol, c.rel_tol * std::fabs(scale));
}

}  // namespace

TEST_CASE("integrate: reference values") {
  CHECK(integrate([](double x) { return x; }, 0, 1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(integrate([](double) { return 18.0 / 5.0; }, 0, std::sqrt(1.0)) ==
        doctest::Approx(3.6).epsilon(1e-12));

  // ∫₀¹ (9 + 3ξ)e^{7(1−ξ)} dξ against the antiderivative −e^{7(1−ξ)}(66 + 21ξ)/49.
  const double v = integrate([](double xi) { return (9 + 3 * xi) * std::exp(7 * (1 - xi)); }, 0, 1);
  const auto anti = [](double xi) { return -std::exp(7 * (1 - xi)) * (66 + 21 * xi) / 49.0; };
  const double expected = 3.0 / 49.0 * (-7 + 22 * std::exp(7.0) - 22);
  CHECK(rel_diff(expected, anti(1) - anti(0)) < 1e-14);
  CHECK(rel_diff(v, expected) < 1e-9);
}

TEST_CASE("integrate: degenerate and reversed ranges") {
  int calls = 0;
  const RealFunction f = [&](double x) {
    ++calls;
    return std::exp(x);
  };
  CHECK(integrate(f, 0.3, 0.3) == 0.0);
  CHECK(calls == 0);
  CHECK(integrate(f, 1, 0) == doctest::Approx(-(std::exp(1.0) - 1)).epsilon(1e-10));
}

TEST_CASE("integrate: error contract") {
  const QuadratureConfig cfg;
  const auto r = integrate_detailed([](double x) { return std::sin(10 * x); }, 0, 3, cfg);
  const double exact = (1 - std::cos(30.0)) / 10.0;
  CHECK(std::fabs(r.value - exact) <= promised(cfg, exact));
  CHECK(r.evaluations > 0);

  QuadratureConfig shallow;
  shallow.max_depth = 2;
  try {
    integrate([](double x) { return std::sqrt(x); }, 0, 1, shallow.tightened(1e3));
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(std::isfinite(e.estimate()));
    CHECK(e.error_bound() >= 0.0);
    CHECK(e.estimate() == doctest::Approx(2.0 / 3.0).epsilon(1e-3));
  }

  CHECK_THROWS_AS(integrate([](double x) { return 1 / x; }, 0, 1), NumericError);
  QuadratureConfig bad;
  bad.abs_tol = 0;
  CHECK_THROWS_AS(integrate([](double x) { return x; }, 0, 1, bad), std::invalid_argument);
}

TEST_CASE("property: quadrature linearity and additivity on random polynomials") {
  testing::Rng rng(4242);
  const QuadratureConfig cfg;
  for (int i = 0; i < 1000; ++i) {
    const auto p = testing::random_polynomial(rng, 7);
    const auto q = testing::random_polynomial(rng, 7);
    const double alpha = rng.uniform(-3, 3);
    const double beta = rng.uniform(-3, 3);
    const double lo = rng.uniform(-2, 1);
    const double hi = lo + rng.uniform(0.01, 2);
    const double mid = rng.uniform(lo, hi);
    const auto fp = [&](double x) { return testing::horner(p, x); };
    const auto fq = [&](double x) { return testing::horner(q, x); };

    const double ip = integrate(fp, lo, hi, cfg);
    const double iq = integrate(fq, lo, hi, cfg);
    const double combo = integrate([&](double x) { return alpha * fp(x) + beta * fq(x); }, lo, hi, cfg);
    const double scale = std::fabs(alpha * ip) + std::fabs(beta * iq) + std::fabs(combo);
    CHECK(std::fabs(combo - (alpha * ip + beta * iq)) <= 10 * promised(cfg, scale));

    const double split = integrate(fp, lo, mid, cfg) + integrate(fp, mid, hi, cfg);
    CHECK(std::fabs(split - ip) <= 10 * promised(cfg, std::fabs(ip) + std::fabs(split)));

    const double exact = testing::polynomial_integral(p, lo, hi);
    CHECK(std::fabs(ip - exact) <= 10 * promised(cfg, exact));
  }
}

TEST_CASE("invert_monotone: reference values") {
  const Expr sq = parse_expr("sqrt(x)");
  CHECK(invert_monotone(sq, 0.5, 0, 4, 1e-14) == doctest::Approx(0.25).epsilon(1e-12));
  const Expr cb = parse_expr("cbrt(x)");
  CHECK(invert_monotone(cb, 2, 0, 16, 1e-13) == doctest::Approx(8).epsilon(1e-12));
  CHECK(invert_monotone([](double x) { return x; }, 0.7, 0, 1, 1e-15) ==
        doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("invert_monotone: bracket violation names the values") {
  try {
    invert_monotone([](double x) { return x * x; }, 5.0, 0.0, 2.0, 1e-12);
    FAIL("expected BracketError");
  } catch (const BracketError& e) {
    CHECK(e.f_lo == 0.0);
    CHECK(e.f_hi == 4.0);
    CHECK(e.target == 5.0);
    CHECK(std::string(e.what()).find("5") != std::string::npos);
  }
  CHECK(invert_monotone([](double x) { return x; }, 0.0, 0.0, 1.0, 1e-12) == 0.0);
  CHECK(invert_monotone([](double x) { return x; }, 1.0, 0.0, 1.0, 1e-12) == 1.0);
}

TEST_CASE("property: inversion recovers the preimage and is monotone in y") {
  testing::Rng rng(99);
  for (int i = 0; i < 1000; ++i) {
    // Strictly increasing: positive combination of increasing pieces.
    const double c1 = rng.uniform(0.1, 3), c2 = rng.uniform(0, 2), c3 = rng.uniform(0, 1);
    const auto f = [=](double x) { return c1 * x + c2 * x * x * x + c3 * std::exp(x); };
    const double lo = 0, hi = 2;
    const double y1 = rng.uniform(f(lo), f(hi));
    const double y2 = rng.uniform(y1, f(hi));
    const double x1 = invert_monotone(f, y1, lo, hi, 1e-13);
    const double x2 = invert_monotone(f, y2, lo, hi, 1e-13);
    CHECK(x1 <= x2);
    CHECK(std::fabs(f(x1) - y1) <= 1e-11 * std::max(1.0, std::fabs(y1)));
  }
}

TEST_CASE("Grid and sample_grid") {
  const Grid g = sample_grid([](double x) { return x * x; }, 0, 2, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.x(0) == 0.0);
  CHECK(g.x(4) == 2.0);
  CHECK(g.y(2) == doctest::Approx(1.0));
  CHECK(g.interpolate(0.25) == doctest::Approx(0.125));
  CHECK(g.interpolate(-1) == 0.0);
  CHECK(g.interpolate(5) == 4.0);

  CHECK_THROWS_AS(Grid({0, 1, 1}, {0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Grid({0, 1}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(linspace(0, 1, 1), std::invalid_argument);

  const auto xs = linspace(0, 4, 65);
  CHECK(xs.size() == 65);
  CHECK(xs[16] == 1.0);
  CHECK(xs.back() == 4.0);
}

TEST_CASE("CumulativeIntegral matches closed forms between nodes") {
  const CumulativeIntegral c([](double x) { return std::cos(x) + 2; }, 0.0, 3.0);
  CHECK(c.total() == doctest::Approx(std::sin(3.0) + 6).epsilon(1e-12));
  testing::Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const double x = rng.uniform(0, 3);
    CHECK(std::fabs(c.from_lo(x) - (std::sin(x) + 2 * x)) < 1e-10);
    CHECK(std::fabs(c.to_hi(x) - (std::sin(3.0) + 6 - std::sin(x) - 2 * x)) < 1e-10);
  }
  CHECK(c.from_lo(-1) == 0.0);
  CHECK(c.node_count() > 8);

  const CumulativeIntegral empty([](double) { return 1.0; }, 1.0, 1.0);
  CHECK(empty.total() == 0.0);
}
