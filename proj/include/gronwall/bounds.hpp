#pragma once

#include <optional>
#include <span>

#include "gronwall/expr.hpp"
#include "gronwall/inequality.hpp"
#include "gronwall/numerics.hpp"

namespace gronwall {

struct BoundOptions {
  QuadratureConfig quadrature;
  /// Evaluate the displayed formulas literally: the forcing term's exponential
  /// integrates from 0 (outer_power, factored) and the factored forcing term
  /// composes with a⁻¹ instead of f⁻¹.
  bool strict_limits = false;
  Zeta6Denominator zeta6 = Zeta6Denominator::gamma1;
  /// Left end of the range excluded for integrodiff_power, whose 1/f⁻¹(θ)
  /// term is not integrable at θ = 0.
  double singular_cushion = 1e-8;
  /// Sub-panels per adaptive panel in the nested-integral tables.
  int inner_refinement = 8;
};

// Explicit bounds u(δ) ≤ bound(δ), one per theorem. Each throws DomainError
// when the theorem's exponent constraints fail.

double bound_integrodiff_power(const InequalityProblem& p, double delta,
                               const BoundOptions& opts = {});
double bound_integrodiff_mixed(const InequalityProblem& p, double delta,
                               const BoundOptions& opts = {});
double bound_outer_power(const InequalityProblem& p, double delta, const BoundOptions& opts = {});
double bound_additive(const InequalityProblem& p, double delta, const BoundOptions& opts = {});
double bound_factored(const InequalityProblem& p, double delta, const BoundOptions& opts = {});

double evaluate_bound(Theorem t, const InequalityProblem& p, double delta,
                      const BoundOptions& opts = {});

struct BoundCurve {
  Theorem theorem{};
  Grid grid;
  QuadratureConfig quadrature;
  ZetaConstants zeta;
  bool strict_limits = false;
  /// Set when the evaluation excluded [0, cushion) from the range.
  std::optional<double> singular_cushion;
};

BoundCurve bound_curve(Theorem t, const InequalityProblem& p, std::span<const double> abscissae,
                       const BoundOptions& opts = {});

// Classical bounds used as reduction oracles.

/// Gronwall: x ≤ h2·h·e^(h1·h).
double bound_gronwall(double h1, double h2, double h);
/// Bellman: x(δ) ≤ c·exp(∫₀^δ w).
double bound_bellman(double c, const Expr& w, double delta, const QuadratureConfig& cfg = {});
/// Pachpatte: x(δ) ≤ c[1 + ∫₀^δ w(s) exp(∫₀^s (w + w̃)) ds].
double bound_pachpatte(double c, const Expr& w, const Expr& w_tilde, double delta,
                       const QuadratureConfig& cfg = {}, int refinement = 8);

}  // namespace gronwall
