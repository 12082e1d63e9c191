#pragma once

#include "gronwall/inequality.hpp"

namespace gronwall {

/// A worked example: an instance plus the closed-form bound it evaluates to.
struct BuiltinExample {
  int id = 0;
  Theorem theorem{};
  InequalityProblem problem;
  double (*closed_form)(double delta) = nullptr;
};

/// Example 1: u⁵ ≤ (δ + ∫₀^√δ 2u + ∫₀^√δ 3(u⁴ + ∫₀^θ ξu³)^(1/4))³, horizon 4.
/// Example 2: u³ ≤ 1 + 2δ + ∫₀^∛δ (2u + θ) + ∫₀^∛δ {5(u³ + ∫₀^θ (7u² + ξ))^(1/3) + θ}, horizon 4.
/// Throws std::invalid_argument for other ids.
BuiltinExample builtin_example(int id);

/// (2/5)e^(18√δ/5) + (5/1296)(5e^(18√δ/5) − 18√δ − 5)
double example1_closed_form(double delta);
/// {e^(7∛δ) + (3/49)(22e^(7∛δ) − 7∛δ − 22)}^(1/3)
double example2_closed_form(double delta);

}  // namespace gronwall
