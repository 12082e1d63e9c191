#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gronwall/expr.hpp"

namespace gronwall {

/// An argument outside a lemma's or theorem's admissible range.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The five retarded inequalities, named by the shape of their hypothesis.
enum class Theorem {
  integrodiff_power,  // (u')^γ1 ≤ a + ∫Ψ1 u + ∫Ψ2 (u^γ2 + ∫Ψ3 u^γ3)^(1/γ2)
  integrodiff_mixed,  // (u')^γ1 ≤ a + ∫Ψ1 u + ∫Ψ2 ((u')^γ2 + ∫Ψ3 u)^(1/γ3)
  outer_power,        // u^γ1 ≤ (a + ∫Ψ1 u + ∫Ψ2 (u^γ2 + ∫Ψ3 u^γ3)^(1/γ2))^γ4
  additive,           // u^γ1 ≤ a + ∫(Ψ1 u + Ψ2) + ∫{Ψ3 (u^γ1 + ∫(Ψ4 u^γ2 + Ψ5))^(1/γ1) + Ψ6}
  factored,           // u^γ1 ≤ Φ [a + ∫Ψ1 u + ∫Ψ2 (u^γ1 + ∫Ψ3 u^γ2)^(1/γ2)]
};

std::string_view theorem_name(Theorem t);
std::optional<Theorem> theorem_from_name(std::string_view name);
bool is_integrodifferential(Theorem t);

struct GammaParams {
  double g1 = 1.0;
  double g2 = 1.0;
  double g3 = 1.0;
  double g4 = 1.0;
};

/// Which denominator ζ6 uses. The printed formula has γ1; γ3 matches the
/// pattern of ζ2 and ζ10.
enum class Zeta6Denominator { gamma1, gamma3 };

/// ζ1..ζ10 for one (γ, κ). Index with zeta[k] for k in 1..10.
struct ZetaConstants {
  std::array<double, 10> values{};
  double kappa = 1.0;

  double operator[](int k) const { return values.at(static_cast<std::size_t>(k - 1)); }
};

/// ζ constants. Entries whose defining γ is 0 (only ζ5, ζ6 with γ3 = 0) are
/// NaN: those constants are never used by a theorem that admits γ3 = 0.
ZetaConstants zeta_constants(const GammaParams& gamma, double kappa,
                             Zeta6Denominator zeta6 = Zeta6Denominator::gamma1);

/// 2^(γ-1)(ω1^γ + ω2^γ), which dominates (ω1+ω2)^γ for γ ≥ 1.
double power_sum_rhs(double w1, double w2, double gamma);

/// Tangent-line majorant of ω^(γ2/γ1):
/// (γ2/γ1)κ^((γ2-γ1)/γ1) ω + ((γ1-γ2)/γ1) κ^(γ2/γ1). Equality at κ = ω.
double zhao_rhs(double w, double gamma1, double gamma2, double kappa);

/// The κ that makes zhao_rhs tight at ω (any positive κ when ω = 0 is
/// admissible; 1 is returned then).
double zhao_tangent_kappa(double w);

struct InequalityProblem {
  Expr a = Expr::constant(1.0);
  Expr f = Expr::variable();
  Expr phi = Expr::constant(1.0);
  std::array<Expr, 6> psi{};  // Ψ1..Ψ6, default 0
  GammaParams gamma;
  double kappa = 1.0;
  double horizon = 1.0;

  const Expr& kernel(int k) const { return psi.at(static_cast<std::size_t>(k - 1)); }
  Expr& kernel(int k) { return psi.at(static_cast<std::size_t>(k - 1)); }
};

/// Throws DomainError naming the violated exponent constraint of `t`.
void check_gamma_constraints(Theorem t, const GammaParams& gamma);

enum class HypothesisStatus { holds, warning, violated };

struct HypothesisCheck {
  std::string name;
  HypothesisStatus status = HypothesisStatus::holds;
  std::optional<double> first_failure;  // first failing δ on the sample grid
  std::string detail;
};

struct HypothesisReport {
  Theorem theorem{};
  std::vector<HypothesisCheck> checks;

  bool hard_failure() const;
  bool has_warnings() const;
  const HypothesisCheck* find(std::string_view name) const;
};

inline constexpr std::size_t kHypothesisSamples = 512;

/// Samples every hypothesis of `theorem` on 512 points over [0, T].
///
/// a(δ) ≥ 1 and Φ(δ) ≥ 1 failures are warnings. f(δ) ≤ δ is checked on
/// (0, T]; a failure confined to an initial segment (the relation holds on a
/// tail reaching T) is a warning, otherwise a violation.
HypothesisReport check_hypotheses(const InequalityProblem& p, Theorem theorem);

}  // namespace gronwall
